#include "lrqt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace lrqt {

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& rule8() {
    static const GaussRule r = gauss_legendre(8);
    return r;
}

const GaussRule& rule6() {
    static const GaussRule r = gauss_legendre(6);
    return r;
}

struct Region {
    Point3 lower{};
    Point3 upper{};
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Region& other) const { return error < other.error; }
};

double tensor_rule(const std::function<double(const Point3&)>& f, int dim, const Point3& lo, const Point3& hi,
                   const GaussRule& rule, std::size_t& evals) {
    Point3 half{}, mid{};
    for (int k = 0; k < 3; ++k) {
        half[static_cast<std::size_t>(k)] = k < dim ? 0.5 * (hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)]) : 0.0;
        mid[static_cast<std::size_t>(k)] = k < dim ? 0.5 * (hi[static_cast<std::size_t>(k)] + lo[static_cast<std::size_t>(k)]) : 0.0;
    }
    const std::size_t n = rule.nodes.size();
    const std::size_t ny = dim >= 2 ? n : 1;
    const std::size_t nz = dim >= 3 ? n : 1;
    double total = 0.0;
    Point3 x{};
    for (std::size_t i = 0; i < n; ++i) {
        x[0] = mid[0] + half[0] * rule.nodes[i];
        double sy = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            if (dim >= 2) x[1] = mid[1] + half[1] * rule.nodes[j];
            double sz = 0.0;
            for (std::size_t k = 0; k < nz; ++k) {
                if (dim >= 3) x[2] = mid[2] + half[2] * rule.nodes[k];
                sz += (dim >= 3 ? rule.weights[k] : 1.0) * f(x);
            }
            sy += (dim >= 2 ? rule.weights[j] : 1.0) * sz;
        }
        total += rule.weights[i] * sy;
    }
    evals += n * ny * nz;
    double jac = 1.0;
    for (int k = 0; k < dim; ++k) jac *= half[static_cast<std::size_t>(k)];
    return total * jac;
}

Region evaluate(const std::function<double(const Point3&)>& f, int dim, const Point3& lo, const Point3& hi,
                std::size_t& evals) {
    Region r{lo, hi, 0.0, 0.0};
    r.value = tensor_rule(f, dim, lo, hi, rule8(), evals);
    const double coarse = tensor_rule(f, dim, lo, hi, rule6(), evals);
    r.error = std::abs(r.value - coarse);
    return r;
}

}  // namespace

QuadratureResult integrate_box(const std::function<double(const Point3&)>& f, int dim, const Point3& lower,
                               const Point3& upper, const QuadratureOptions& options) {
    if (dim < 1 || dim > 3) throw InvalidArgument("quadrature dimension must be 1, 2 or 3");
    for (int k = 0; k < dim; ++k) {
        if (!(upper[static_cast<std::size_t>(k)] > lower[static_cast<std::size_t>(k)])) {
            throw InvalidArgument("quadrature box must have positive extent");
        }
    }
    if (!(options.abs_tol > 0.0) && !(options.rel_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be > 0");

    QuadratureResult result;
    std::priority_queue<Region> heap;
    heap.push(evaluate(f, dim, lower, upper, result.evaluations));
    double value = heap.top().value;
    double error = heap.top().error;

    auto refresh = [&] {
        std::vector<Region> all;
        all.reserve(heap.size());
        value = 0.0;
        error = 0.0;
        while (!heap.empty()) {
            all.push_back(heap.top());
            value += all.back().value;
            error += all.back().error;
            heap.pop();
        }
        for (auto& r : all) heap.push(r);
    };
    auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(value)); };
    while (error > target()) {
        if (heap.size() >= options.max_regions) {
            result.value = value;
            result.error = error;
            result.regions = heap.size();
            throw QuadratureError("quadrature tolerance not reached at region cap", result);
        }
        Region worst = heap.top();
        heap.pop();
        int axis = 0;
        double widest = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double w = worst.upper[static_cast<std::size_t>(k)] - worst.lower[static_cast<std::size_t>(k)];
            if (w > widest) {
                widest = w;
                axis = k;
            }
        }
        const double cut = 0.5 * (worst.lower[static_cast<std::size_t>(axis)] + worst.upper[static_cast<std::size_t>(axis)]);
        Point3 left_hi = worst.upper;
        left_hi[static_cast<std::size_t>(axis)] = cut;
        Point3 right_lo = worst.lower;
        right_lo[static_cast<std::size_t>(axis)] = cut;
        Region left = evaluate(f, dim, worst.lower, left_hi, result.evaluations);
        Region right = evaluate(f, dim, right_lo, worst.upper, result.evaluations);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Running sums drift; refresh them from the heap now and then.
        if (heap.size() % 256 == 0) refresh();
    }
    refresh();
    result.value = value;
    result.error = error;
    result.regions = heap.size();
    return result;
}

}  // namespace lrqt
