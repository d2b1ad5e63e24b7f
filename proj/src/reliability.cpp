#include "lrqt/reliability.hpp"

#include <cmath>
#include <limits>

#include "lrqt/error.hpp"

namespace lrqt {

void ReliabilityParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and >= 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
    if (!(lam > 1.0) || !std::isfinite(lam)) throw InvalidArgument("lambda must be > 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be > 0");
    if (!(P > 0.0 && P <= 1.0)) throw InvalidArgument("P must lie in (0, 1]");
}

double ReliabilityParams::budget() const {
    validate();
    if (gamma == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(1.0 / eps) / (gamma * dt);
}

std::string to_string(NnMode mode) { return mode == NnMode::bound ? "bound" : "exact"; }

int expansion_steps(double N, double lam) {
    if (!(N >= 1.0)) throw InvalidArgument("N must be >= 1");
    const double steps = std::log(N) / (3.0 * std::log(lam));
    return static_cast<int>(std::ceil(steps - 1e-9));
}

double exposure(const ReliabilityParams& params, double N, StepCounting counting) {
    params.validate();
    if (!(N >= 1.0)) throw InvalidArgument("N must be >= 1");
    const double l3 = params.lam * params.lam * params.lam;
    if (counting == StepCounting::continuous) return l3 * (N - 1.0) / (l3 - 1.0);
    double total = 0.0;
    double term = 1.0;
    for (int i = 1; i <= expansion_steps(N, params.lam); ++i) {
        term *= l3;
        total += term;
    }
    return total;
}

double p_success(const ReliabilityParams& params, double N, StepCounting counting) {
    return std::exp(-params.gamma * params.dt * exposure(params, N, counting));
}

double max_qubits_longrange(const ReliabilityParams& params) {
    const double l3 = params.lam * params.lam * params.lam;
    return 1.0 + params.budget() * (l3 - 1.0) / l3;
}

double max_qubits_nn(const ReliabilityParams& params, NnMode mode) {
    const double budget = params.budget();
    const double bound = std::pow(4.0 * budget, 0.75);
    if (mode == NnMode::bound || !std::isfinite(budget)) return bound;
    auto excess = [&](double N) {
        const double m = std::cbrt(N);
        return 0.25 * (N * m + 2.0 * N + m * m) - budget;
    };
    // Dropping the positive lower-order terms can only enlarge the root.
    double lo = 0.0, hi = bound;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double advantage_ratio(const ReliabilityParams& params, NnMode mode) {
    if (mode == NnMode::bound) {
        params.validate();
        if (params.lam != 2.0) throw InvalidArgument("closed form valid only for lambda=2");
        return 7.0 / (16.0 * std::sqrt(2.0)) * std::pow(params.budget(), 0.25);
    }
    return max_qubits_longrange(params) / max_qubits_nn(params, NnMode::exact);
}

double max_qubits_gate_fidelity(const ReliabilityParams& params) {
    params.validate();
    if (params.P == 1.0) return std::numeric_limits<double>::infinity();
    const double l3 = params.lam * params.lam * params.lam;
    return 1.0 + (std::log(params.eps) / std::log(params.P)) * (l3 - 1.0) / (params.c * l3);
}

double protocol_wall_time(const ReliabilityParams& params, double N, StepCounting counting) {
    params.validate();
    if (!(N >= 1.0)) throw InvalidArgument("N must be >= 1");
    if (counting == StepCounting::continuous) return params.dt * std::log(N) / (3.0 * std::log(params.lam));
    return params.dt * expansion_steps(N, params.lam);
}

double ghz_lifetime(const ReliabilityParams& params, double N) {
    params.validate();
    if (!(N >= 1.0)) throw InvalidArgument("N must be >= 1");
    return 1.0 / (N * params.gamma);
}

}  // namespace lrqt
