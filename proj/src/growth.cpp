#include "lrqt/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lrqt/error.hpp"

namespace lrqt {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct GrowthState {
    const LatticeSpec& lattice;
    std::vector<Coord> coords;
    CouplingTable table;
    std::vector<double> angle;
    std::vector<double> rate;
    std::vector<char> is_control;
    std::vector<char> is_done;
    std::vector<std::size_t> controls;
    double now = 0.0;

    explicit GrowthState(const LatticeSpec& lat)
        : lattice(lat),
          table(lat.alpha, std::max<std::int64_t>(1, static_cast<std::int64_t>(lat.d) * (lat.L - 1) * (lat.L - 1))) {
        const std::size_t n = lat.site_count();
        coords.reserve(n);
        for (std::size_t i = 0; i < n; ++i) coords.push_back(lat.coord_of(i));
        angle.assign(n, 0.0);
        rate.assign(n, 0.0);
        is_control.assign(n, 0);
        is_done.assign(n, 0);
    }

    std::size_t size() const { return coords.size(); }

    void promote(std::size_t site) {
        is_control[site] = 1;
        is_done[site] = 1;
        controls.push_back(site);
        for (std::size_t j = 0; j < size(); ++j) {
            if (is_control[j]) continue;
            rate[j] += table(squared_distance(coords[site], coords[j]));
        }
    }

    std::vector<std::size_t> active_targets() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < size(); ++j) {
            if (!is_control[j] && !is_done[j]) out.push_back(j);
        }
        return out;
    }

    // Advances to the next completion. Returns the sites completing (merged
    // within kEventMergeTolerance), ascending.
    std::vector<std::size_t> advance(const std::vector<std::size_t>& active, GrowthRun& run, bool record) {
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> eta(active.size());
        for (std::size_t k = 0; k < active.size(); ++k) {
            const std::size_t j = active[k];
            const double remaining = std::max(0.0, kHalfPi - angle[j]);
            eta[k] = rate[j] > 0.0 ? remaining / rate[j] : std::numeric_limits<double>::infinity();
            best = std::min(best, eta[k]);
        }
        if (!std::isfinite(best)) throw NumericalError("growth stalled: no target receives any coupling");

        if (record && best > 0.0) {
            std::vector<std::size_t> sorted_controls = controls;
            std::sort(sorted_controls.begin(), sorted_controls.end());
            run.segments.push_back(GrowthSegment{best, std::move(sorted_controls), active});
        }
        now += best;
        std::vector<std::size_t> finished;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const std::size_t j = active[k];
            if (eta[k] <= best + kEventMergeTolerance) {
                angle[j] = kHalfPi;
                is_done[j] = 1;
                run.completion_times[j] = now;
                finished.push_back(j);
            } else {
                angle[j] += rate[j] * best;
            }
        }
        return finished;
    }
};

Coord reflect_to_origin(const Coord& c, const Coord& source, int L) {
    Coord out = c;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (source[k] != 0) out[k] = L - 1 - c[k];
    }
    return out;
}

void run_greedy(GrowthState& st, GrowthRun& run, bool record) {
    const std::size_t src = st.lattice.index_of(st.lattice.source);
    run.completion_times[src] = 0.0;
    st.promote(src);
    run.promotions.push_back(GreedyEvent{0.0, {src}});
    for (;;) {
        const auto active = st.active_targets();
        if (active.empty()) break;
        auto finished = st.advance(active, run, record);
        for (std::size_t s : finished) st.promote(s);
        run.promotions.push_back(GreedyEvent{st.now, std::move(finished)});
    }
}

void run_hypercube(GrowthState& st, GrowthRun& run, bool record) {
    const LatticeSpec& lat = st.lattice;
    if (!lat.is_corner(lat.source)) throw InvalidArgument("hypercube protocol needs the source on a lattice corner");
    std::vector<int> shell(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) {
        const Coord r = reflect_to_origin(st.coords[i], lat.source, lat.L);
        shell[i] = *std::max_element(r.begin(), r.end());
    }
    const std::size_t src = lat.index_of(lat.source);
    run.completion_times[src] = 0.0;
    st.promote(src);
    run.promotions.push_back(GreedyEvent{0.0, {src}});

    for (int p = 1; p < lat.L; ++p) {
        const double step_start = st.now;
        for (;;) {
            const auto active = st.active_targets();
            const bool shell_pending = std::any_of(active.begin(), active.end(),
                                                   [&](std::size_t j) { return shell[j] == p; });
            if (!shell_pending) break;
            st.advance(active, run, record);
        }
        run.step_durations.push_back(st.now - step_start);
        GreedyEvent promoted{st.now, {}};
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (shell[i] == p) promoted.sites.push_back(i);
        }
        for (std::size_t s : promoted.sites) st.promote(s);
        run.promotions.push_back(std::move(promoted));
    }
}

}  // namespace

GrowthRun run_growth(const LatticeSpec& lattice, ScheduleMode mode, bool record_segments) {
    lattice.validate();
    GrowthState st(lattice);
    GrowthRun run;
    run.mode = mode;
    run.completion_times.assign(st.size(), 0.0);
    if (mode == ScheduleMode::greedy) {
        run_greedy(st, run, record_segments);
    } else {
        run_hypercube(st, run, record_segments);
    }
    run.total_time = st.now;
    return run;
}

}  // namespace lrqt
