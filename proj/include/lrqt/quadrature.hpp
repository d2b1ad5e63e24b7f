#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>

#include "lrqt/error.hpp"

namespace lrqt {

using Point3 = std::array<double, 3>;

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // summed |I_8 - I_6| over the final partition
    std::size_t evaluations = 0;
    std::size_t regions = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_regions = 200000;
};

/// Thrown when the region cap is reached before the tolerance; carries the
/// best estimate available at that point.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, QuadratureResult best) : NumericalError(what), best_(best) {}
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

/**
 * Globally adaptive cubature over an axis-aligned box of dimension 1..3.
 *
 * Each region is integrated with tensor Gauss-Legendre rules of 8 and 6
 * points per axis; their difference is the region's error estimate. The
 * region with the largest estimate is bisected along its widest axis until
 * the summed estimate drops below max(abs_tol, rel_tol * |value|).
 * Only the first `dim` entries of `lower`/`upper`/the point are used.
 */
QuadratureResult integrate_box(const std::function<double(const Point3&)>& f, int dim, const Point3& lower,
                               const Point3& upper, const QuadratureOptions& options);

}  // namespace lrqt
