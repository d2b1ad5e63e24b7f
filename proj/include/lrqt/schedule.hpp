#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrqt/lattice.hpp"

namespace lrqt {

enum class ScheduleMode { hypercube, greedy };

std::string to_string(ScheduleMode mode);
ScheduleMode parse_schedule_mode(const std::string& text);

/// Shell times t_1..t_L of the hypercube protocol, in units of the inverse
/// nearest-neighbour coupling.
struct ScheduleResult {
    ScheduleMode mode = ScheduleMode::hypercube;
    int d = 1;
    double alpha = 0.0;
    std::vector<double> times;       // times[q-1] = t_q
    std::vector<double> cumulative;  // cumulative[q-1] = t_1 + ... + t_q
    std::vector<double> residuals;   // |sum_p H(p,q) t_p - pi/2|

    int L() const { return static_cast<int>(times.size()); }
    double max_residual() const;
};

/**
 * Forward triangular solve of sum_{p<=q} H(p,q) t_p = pi/2 for q = 1..L.
 *
 * Rows H(., q) are produced by shell_bucketed_sums; `threads` > 1 builds
 * disjoint q ranges concurrently before the sequential solve. Throws
 * NumericalError("phase condition infeasible") on a negative t_q.
 */
ScheduleResult solve_hypercube_times(int L, int d, double alpha, unsigned threads = 0);

struct TransferTime {
    double one_way = 0.0;   // GHZ build, sum of t_q
    double transfer = 0.0;  // build plus mirrored reversal
};

TransferTime total_transfer_time(int L, int d, double alpha);
TransferTime total_transfer_time(const ScheduleResult& schedule);

/// min(q^(alpha - (d + 1)), 1)
double tq_scaling_bound(int q, int d, double alpha);

enum class FitModel { power_law, logarithmic };

std::string to_string(FitModel model);

struct ScalingFit {
    FitModel model = FitModel::power_law;
    double beta = 0.0;       // slope: exponent (power law) or coefficient of ln L
    double intercept = 0.0;  // ln prefactor (power law) or additive constant
    double r_squared = 0.0;
    int L_min = 0;
    int L_max = 0;
};

struct ScalingFitReport {
    int d = 0;
    double alpha = 0.0;
    ScalingFit power_law;
    std::optional<ScalingFit> logarithmic;  // present when alpha == d exactly
};

/**
 * Least-squares fit of ln(sum_{q<=L} t_q) against ln L over
 * L in [ceil(window_fraction * L_max), L_max]. For alpha == d the linear
 * model sum t_q = A + B ln L is fitted as well.
 */
ScalingFitReport fit_scaling(int d, double alpha, int L_max, double window_fraction = 0.9);
ScalingFitReport fit_scaling(const ScheduleResult& schedule, double window_fraction = 0.9);

/// Ordinary least squares y = intercept + slope x with coefficient of determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
LinearFit least_squares_line(std::span<const double> x, std::span<const double> y);

struct GreedyEvent {
    double time = 0.0;
    std::vector<std::size_t> sites;  // promoted together, ascending index
};

struct GreedyEventLog {
    std::vector<double> completion_times;  // by site index
    std::vector<GreedyEvent> events;       // events[0] is the source at t = 0
    double total_time = 0.0;
    double destination_time = 0.0;
};

/// Completions closer than this are merged into one event.
inline constexpr double kEventMergeTolerance = 1e-12;

/**
 * Event-driven clock of the greedy protocol: every target accumulates angle
 * at the summed coupling of the current controls and becomes a control the
 * moment it reaches pi/2.
 */
GreedyEventLog greedy_schedule(const LatticeSpec& lattice);

}  // namespace lrqt
