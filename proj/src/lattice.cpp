#include "lrqt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrqt/error.hpp"
#include "lrqt/summation.hpp"

namespace lrqt {

namespace {

// Visits every site of [0, m]^dims whose largest coordinate equals m, in
// lexicographic order, passing the accumulated squared distance to the
// target (q, ..., q). `hit` records whether an earlier coordinate was m.
template <typename F>
void visit_shell(int m, int dims, int q, std::int64_t partial, bool hit, F& f) {
    if (dims == 0) {
        f(partial);
        return;
    }
    if (dims == 1 && !hit) {
        // Only x = m lies on the shell.
        const std::int64_t delta = q - m;
        f(partial + delta * delta);
        return;
    }
    for (int x = 0; x <= m; ++x) {
        const std::int64_t delta = q - x;
        const std::int64_t r2 = partial + delta * delta;
        if (dims == 1) {
            f(r2);
            continue;
        }
        if (hit || x == m) {
            visit_shell(m, dims - 1, q, r2, true, f);
        } else {
            visit_shell(m, dims - 1, q, r2, false, f);
        }
    }
}

// Lexicographic walk over [0, p-1]^dims.
template <typename F>
void visit_cube(int p, int dims, int q, std::int64_t partial, F& f) {
    for (int x = 0; x < p; ++x) {
        const std::int64_t delta = q - x;
        const std::int64_t r2 = partial + delta * delta;
        if (dims == 1) {
            f(r2);
        } else {
            visit_cube(p, dims - 1, q, r2, f);
        }
    }
}

void check_dimension(int d) {
    if (d < 1 || d > 3) throw InvalidArgument("dimension must be 1, 2 or 3, got " + std::to_string(d));
}

}  // namespace

void LatticeSpec::validate() const {
    check_dimension(d);
    if (L < 2) throw InvalidArgument("lattice needs L >= 2 sites per edge");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be finite and >= 0");
    if (static_cast<int>(source.size()) != d || static_cast<int>(destination.size()) != d) {
        throw InvalidArgument("source and destination must have d coordinates");
    }
    if (!contains(source) || !contains(destination)) {
        throw InvalidArgument("source and destination must lie inside the lattice");
    }
    if (source == destination) throw InvalidArgument("source and destination must differ");
}

std::size_t LatticeSpec::site_count() const {
    std::size_t n = 1;
    for (int k = 0; k < d; ++k) n *= static_cast<std::size_t>(L);
    return n;
}

std::size_t LatticeSpec::index_of(std::span<const int> coord) const {
    std::size_t idx = 0;
    for (int c : coord) idx = idx * static_cast<std::size_t>(L) + static_cast<std::size_t>(c);
    return idx;
}

Coord LatticeSpec::coord_of(std::size_t index) const {
    Coord c(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
        c[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(L));
        index /= static_cast<std::size_t>(L);
    }
    return c;
}

bool LatticeSpec::contains(std::span<const int> coord) const {
    if (static_cast<int>(coord.size()) != d) return false;
    return std::all_of(coord.begin(), coord.end(), [this](int c) { return c >= 0 && c < L; });
}

bool LatticeSpec::is_corner(std::span<const int> coord) const {
    return contains(coord) &&
           std::all_of(coord.begin(), coord.end(), [this](int c) { return c == 0 || c == L - 1; });
}

LatticeSpec LatticeSpec::chain(int n, double alpha) {
    return LatticeSpec{1, n, alpha, {0}, {n - 1}};
}

LatticeSpec LatticeSpec::cube(int d, int L, double alpha) {
    return LatticeSpec{d, L, alpha, Coord(static_cast<std::size_t>(d), 0),
                       Coord(static_cast<std::size_t>(d), L - 1)};
}

std::int64_t squared_distance(std::span<const int> i, std::span<const int> j) {
    if (i.size() != j.size()) throw InvalidArgument("coordinate dimensions differ");
    std::int64_t r2 = 0;
    for (std::size_t k = 0; k < i.size(); ++k) {
        const std::int64_t delta = static_cast<std::int64_t>(i[k]) - j[k];
        r2 += delta * delta;
    }
    return r2;
}

double coupling(std::span<const int> i, std::span<const int> j, double alpha) {
    const std::int64_t r2 = squared_distance(i, j);
    if (r2 == 0) throw InvalidArgument("self-coupling undefined");
    return std::pow(static_cast<double>(r2), -0.5 * alpha);
}

CouplingTable::CouplingTable(double alpha, std::int64_t max_r2) : alpha_(alpha) {
    if (max_r2 < 1) throw InvalidArgument("coupling table needs max_r2 >= 1");
    values_.resize(static_cast<std::size_t>(max_r2) + 1);
    values_[0] = 0.0;
    for (std::int64_t r2 = 1; r2 <= max_r2; ++r2) {
        values_[static_cast<std::size_t>(r2)] = std::pow(static_cast<double>(r2), -0.5 * alpha);
    }
}

double hypercube_coupling_sum(int p, int q, int d, double alpha) {
    check_dimension(d);
    if (p < 1 || p > q) throw InvalidArgument("invalid shell indices");
    CompensatedSum acc;
    auto add = [&](std::int64_t r2) { acc.add(std::pow(static_cast<double>(r2), -0.5 * alpha)); };
    visit_cube(p, d, q, 0, add);
    return acc.value();
}

std::vector<double> shell_bucketed_sums(int q, int d, double alpha) {
    check_dimension(d);
    if (q < 1) throw InvalidArgument("invalid shell indices");
    return shell_bucketed_sums(q, d, CouplingTable(alpha, static_cast<std::int64_t>(d) * q * q));
}

std::vector<double> shell_bucketed_sums(int q, int d, const CouplingTable& table) {
    check_dimension(d);
    if (q < 1) throw InvalidArgument("invalid shell indices");
    if (table.max_r2() < static_cast<std::int64_t>(d) * q * q) {
        throw InvalidArgument("coupling table too small for shell sums");
    }
    std::vector<double> prefix(static_cast<std::size_t>(q));
    CompensatedSum running;
    for (int m = 0; m < q; ++m) {
        CompensatedSum shell;
        auto add = [&](std::int64_t r2) { shell.add(table(r2)); };
        visit_shell(m, d, q, 0, false, add);
        running.add(shell.value());
        prefix[static_cast<std::size_t>(m)] = running.value();
    }
    return prefix;
}

}  // namespace lrqt
