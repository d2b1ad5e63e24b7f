#include "lrqt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "lrqt/error.hpp"
#include "lrqt/growth.hpp"
#include "lrqt/summation.hpp"

namespace lrqt {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Rows H(., q) for q in [q_begin, q_end), computed on up to `threads` workers.
std::vector<std::vector<double>> build_rows(int q_begin, int q_end, int d, const CouplingTable& table,
                                            unsigned threads) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(q_end - q_begin));
    auto work = [&](unsigned worker) {
        for (int q = q_begin + static_cast<int>(worker); q < q_end; q += static_cast<int>(threads)) {
            rows[static_cast<std::size_t>(q - q_begin)] = shell_bucketed_sums(q, d, table);
        }
    };
    if (threads <= 1) {
        work(0);
        return rows;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    return rows;
}

}  // namespace

std::string to_string(ScheduleMode mode) {
    return mode == ScheduleMode::hypercube ? "hypercube" : "greedy";
}

ScheduleMode parse_schedule_mode(const std::string& text) {
    if (text == "hypercube") return ScheduleMode::hypercube;
    if (text == "greedy") return ScheduleMode::greedy;
    throw InvalidArgument("unknown schedule mode '" + text + "'");
}

std::string to_string(FitModel model) {
    return model == FitModel::power_law ? "power-law" : "logarithmic";
}

double ScheduleResult::max_residual() const {
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    return worst;
}

ScheduleResult solve_hypercube_times(int L, int d, double alpha, unsigned threads) {
    if (L < 1) throw InvalidArgument("L must be >= 1");
    if (d < 1 || d > 3) throw InvalidArgument("dimension must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be finite and >= 0");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    ScheduleResult result;
    result.mode = ScheduleMode::hypercube;
    result.d = d;
    result.alpha = alpha;
    result.times.reserve(static_cast<std::size_t>(L));
    result.cumulative.reserve(static_cast<std::size_t>(L));
    result.residuals.reserve(static_cast<std::size_t>(L));

    const CouplingTable table(alpha, static_cast<std::int64_t>(d) * L * L);
    CompensatedSum running_total;
    constexpr int kBlock = 64;
    for (int block = 1; block <= L; block += kBlock) {
        const int block_end = std::min(L + 1, block + kBlock);
        const auto rows = build_rows(block, block_end, d, table, threads);
        for (int q = block; q < block_end; ++q) {
            const auto& H = rows[static_cast<std::size_t>(q - block)];
            CompensatedSum accumulated;
            for (int p = 1; p < q; ++p) {
                accumulated.add(H[static_cast<std::size_t>(p - 1)] * result.times[static_cast<std::size_t>(p - 1)]);
            }
            double t = (kHalfPi - accumulated.value()) / H[static_cast<std::size_t>(q - 1)];
            // Rounding can leave a few ulps below zero when the earlier
            // shells already complete the rotation (alpha = 0).
            if (t < 0.0) {
                if (t < -1e-13) throw NumericalError("phase condition infeasible");
                t = 0.0;
            }
            result.times.push_back(t);
            running_total.add(t);
            result.cumulative.push_back(running_total.value());

            CompensatedSum phase;
            for (int p = 1; p <= q; ++p) {
                phase.add(H[static_cast<std::size_t>(p - 1)] * result.times[static_cast<std::size_t>(p - 1)]);
            }
            result.residuals.push_back(std::abs(phase.value() - kHalfPi));
        }
    }
    return result;
}

TransferTime total_transfer_time(const ScheduleResult& schedule) {
    const double one_way = schedule.cumulative.empty() ? 0.0 : schedule.cumulative.back();
    return TransferTime{one_way, 2.0 * one_way};
}

TransferTime total_transfer_time(int L, int d, double alpha) {
    return total_transfer_time(solve_hypercube_times(L, d, alpha));
}

double tq_scaling_bound(int q, int d, double alpha) {
    if (q < 1) throw InvalidArgument("q must be >= 1");
    return std::min(std::pow(static_cast<double>(q), alpha - (d + 1)), 1.0);
}

LinearFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("least squares needs two or more paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("least squares needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    // A constant response is fitted exactly by a flat line.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

ScalingFitReport fit_scaling(const ScheduleResult& schedule, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction < 1.0)) throw InvalidArgument("window_fraction must lie in (0, 1)");
    const int L_max = schedule.L();
    if (L_max < 20) throw InvalidArgument("fit needs L_max >= 20");
    const int L_min = std::max(1, static_cast<int>(std::ceil(window_fraction * L_max)));
    if (L_max - L_min + 1 < 5) throw InvalidArgument("fit window holds fewer than 5 points");

    std::vector<double> ln_L, ln_T, T;
    for (int L = L_min; L <= L_max; ++L) {
        const double total = schedule.cumulative[static_cast<std::size_t>(L - 1)];
        if (!(total > 0.0)) throw NumericalError("non-positive cumulative time in fit window");
        ln_L.push_back(std::log(static_cast<double>(L)));
        ln_T.push_back(std::log(total));
        T.push_back(total);
    }

    ScalingFitReport report;
    report.d = schedule.d;
    report.alpha = schedule.alpha;
    const LinearFit power = least_squares_line(ln_L, ln_T);
    report.power_law = ScalingFit{FitModel::power_law, power.slope, power.intercept, power.r_squared, L_min, L_max};
    if (schedule.alpha == static_cast<double>(schedule.d)) {
        const LinearFit lin = least_squares_line(ln_L, T);
        report.logarithmic = ScalingFit{FitModel::logarithmic, lin.slope, lin.intercept, lin.r_squared, L_min, L_max};
    }
    return report;
}

ScalingFitReport fit_scaling(int d, double alpha, int L_max, double window_fraction) {
    if (L_max < 20) throw InvalidArgument("fit needs L_max >= 20");
    return fit_scaling(solve_hypercube_times(L_max, d, alpha), window_fraction);
}

GreedyEventLog greedy_schedule(const LatticeSpec& lattice) {
    GrowthRun run = run_growth(lattice, ScheduleMode::greedy, false);
    GreedyEventLog log;
    log.completion_times = std::move(run.completion_times);
    log.events = std::move(run.promotions);
    log.total_time = run.total_time;
    log.destination_time = log.completion_times[lattice.index_of(lattice.destination)];
    return log;
}

}  // namespace lrqt
