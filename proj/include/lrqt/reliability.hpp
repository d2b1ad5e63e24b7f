#pragma once

#include <string>

namespace lrqt {

/// Error budget of the dilation protocol. Times are in seconds.
struct ReliabilityParams {
    double gamma = 1.0 / 340e-6;  // per-qubit failure rate
    double dt = 5e-9;             // time per expansion step
    double lam = 2.0;             // dilation factor
    double eps = 0.5;             // required success probability
    double c = 4.0;               // single-qubit gates per qubit per step
    double P = 1.0 - 1e-4;        // single-qubit gate success probability

    /// Parameters used for the headline estimates of the Rydberg proposal.
    static ReliabilityParams paper_defaults() { return {}; }

    void validate() const;

    /// ln(1/eps) / (gamma dt): the failure budget in units of qubit-steps.
    double budget() const;
};

/// Fractional step counts: the geometric-sum closed form treats
/// log_lam N^(1/3) as real, the discrete form rounds it up.
enum class StepCounting { continuous, discrete };

enum class NnMode { bound, exact };

std::string to_string(NnMode mode);

/// ceil(log_lam N^(1/3)), with a 1e-9 guard against rounding just past an integer.
int expansion_steps(double N, double lam);

/// sum_{i=1}^{N_t} lam^(3i): qubit-steps exposed to decay.
double exposure(const ReliabilityParams& params, double N, StepCounting counting);

/// exp(-gamma dt * exposure)
double p_success(const ReliabilityParams& params, double N, StepCounting counting = StepCounting::discrete);

/// 1 + budget * (lam^3 - 1) / lam^3
double max_qubits_longrange(const ReliabilityParams& params);

/**
 * Largest N for the nearest-neighbour cube growth. bound: (4 budget)^(3/4);
 * exact: root of (N^(4/3) + 2N + N^(2/3)) / 4 = budget by bisection to
 * relative tolerance 1e-10.
 */
double max_qubits_nn(const ReliabilityParams& params, NnMode mode);

/// bound: closed form 7 / (16 sqrt 2) * budget^(1/4) (lam = 2 only);
/// exact: max_qubits_longrange / max_qubits_nn(exact).
double advantage_ratio(const ReliabilityParams& params, NnMode mode);

/// 1 + (ln eps / ln P) (lam^3 - 1) / (c lam^3); infinity when P = 1.
double max_qubits_gate_fidelity(const ReliabilityParams& params);

/// dt * N_t with N_t counted as requested (discrete by default).
double protocol_wall_time(const ReliabilityParams& params, double N,
                          StepCounting counting = StepCounting::discrete);

/// 1 / (N gamma)
double ghz_lifetime(const ReliabilityParams& params, double N);

}  // namespace lrqt
