#pragma once

#include <cstddef>
#include <vector>

#include "lrqt/lattice.hpp"
#include "lrqt/schedule.hpp"

namespace lrqt {

/// Interval during which a fixed control set drives a fixed target set.
struct GrowthSegment {
    double duration = 0.0;
    std::vector<std::size_t> controls;
    std::vector<std::size_t> targets;
};

struct GrowthRun {
    ScheduleMode mode = ScheduleMode::greedy;
    std::vector<GrowthSegment> segments;   // only filled when requested
    std::vector<double> completion_times;  // time each site reached pi/2
    std::vector<GreedyEvent> promotions;   // control-set growth events
    std::vector<double> step_durations;    // hypercube mode: measured t_1..t_{L-1}
    double total_time = 0.0;
};

/**
 * Runs the control-set growth clock on `lattice`, starting from its source.
 *
 * Greedy mode promotes a site the instant it completes. Hypercube mode halts
 * completed sites and promotes the whole shell of largest coordinate p at
 * the end of step p; it needs the source on a lattice corner (coordinates
 * are reflected so the source sits at the origin).
 */
GrowthRun run_growth(const LatticeSpec& lattice, ScheduleMode mode, bool record_segments);

}  // namespace lrqt
