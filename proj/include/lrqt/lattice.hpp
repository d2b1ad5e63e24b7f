#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lrqt {

using Coord = std::vector<int>;

/**
 * Geometry of a d-dimensional cubic lattice with L sites per edge and
 * unit spacing, together with the power-law exponent of its couplings and
 * the two endpoints of a transfer.
 *
 * Sites are indexed in row-major (lexicographic) coordinate order, so
 * index order and lexicographic coordinate order coincide.
 */
struct LatticeSpec {
    int d = 1;
    int L = 2;
    double alpha = 3.0;
    Coord source;
    Coord destination;

    /// Throws InvalidArgument when any invariant is violated.
    void validate() const;

    std::size_t site_count() const;
    std::size_t index_of(std::span<const int> coord) const;
    Coord coord_of(std::size_t index) const;
    bool contains(std::span<const int> coord) const;
    bool is_corner(std::span<const int> coord) const;

    /// Line of n sites from site 0 to site n-1.
    static LatticeSpec chain(int n, double alpha);
    /// Hypercube with opposite corners as source and destination.
    static LatticeSpec cube(int d, int L, double alpha);
};

/// r^-alpha for two distinct sites on the unit lattice.
double coupling(std::span<const int> i, std::span<const int> j, double alpha);

/// Squared Euclidean distance between integer coordinates.
std::int64_t squared_distance(std::span<const int> i, std::span<const int> j);

/**
 * Memo of r^-alpha indexed by integer squared distance r^2, covering
 * 1 <= r^2 <= max_r2. Lattice distances only take integer r^2 values, so
 * one pow() per distinct distance suffices.
 */
class CouplingTable {
public:
    CouplingTable(double alpha, std::int64_t max_r2);

    double alpha() const { return alpha_; }
    std::int64_t max_r2() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    double operator()(std::int64_t r2) const { return values_[static_cast<std::size_t>(r2)]; }

private:
    double alpha_;
    std::vector<double> values_;
};

/**
 * H(p, q): summed coupling from the control hypercube [0, p-1]^d to the
 * target at (q, ..., q). Controls are visited in lexicographic order and
 * accumulated with compensated summation.
 */
double hypercube_coupling_sum(int p, int q, int d, double alpha);

/**
 * H(1, q), ..., H(q, q) in one pass over [0, q-1]^d.
 *
 * Summation order: sites are grouped into shells by their largest
 * coordinate m (shell p = m + 1). Shells are visited in ascending m, each
 * shell's sites in the order produced by for_each_shell_site, and each
 * shell total is a compensated sum. Entry p is the compensated prefix sum
 * of shell totals 1..p.
 */
std::vector<double> shell_bucketed_sums(int q, int d, double alpha);

/// Same as above, reusing a precomputed table (max_r2 >= d * q^2).
std::vector<double> shell_bucketed_sums(int q, int d, const CouplingTable& table);

}  // namespace lrqt
