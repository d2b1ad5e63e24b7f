#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrqt/pulse.hpp"
#include "lrqt/schedule.hpp"
#include "lrqt/statevector.hpp"

namespace lrqt {

/// S with phi^S == L; throws InvalidArgument when L is not a power of phi.
int mera_layer_count(long long L, int phi);

struct MeraLayerBound {
    int tau = 0;
    double length_scale = 1.0;  // phi^tau
    double term = 0.0;          // contribution of layer tau to the sum
};

struct MeraPlan {
    long long L = 2;
    int phi = 2;
    int d = 1;
    double alpha = 0.0;
    std::vector<MeraLayerBound> layers;
    double total_time = 0.0;
    std::string regime;
};

/**
 * Construction-time bound sum_{tau=0}^{S-1} l_tau^beta with l_tau = phi^tau:
 *   alpha <  d          beta = 0, each term 1          "alpha<d: log"
 *   alpha == d          term 1 + tau                   "alpha=d: log^2"
 *   d < alpha <= d + 1  beta = alpha - d               "d<alpha<=d+1: L^(alpha-d)"
 *   alpha >  d + 1      beta = 1                       "alpha>d+1: L"
 * Values are scale labels in units of the nearest-neighbour gate time.
 */
MeraPlan mera_time_bound(long long L, int phi, double alpha, int d);

enum class MeraGateKind { isometry, disentangler };

std::string to_string(MeraGateKind kind);

/// One two-qubit gate at distance l_tau, lowered to nearest-neighbour form.
struct MeraGate {
    MeraGateKind kind = MeraGateKind::isometry;
    int first = 0;   // left operand
    int second = 0;  // right operand, first + l_tau
    /// Moves `second` onto first + 1 through the |0> sites in between;
    /// empty (no steps) for neighbours.
    PulseProgram transfer{1};
    double time = 0.0;  // transfer out, local gate, transfer back
};

struct MeraLayer {
    int tau = 0;
    int length_scale = 1;
    std::vector<MeraGate> isometries;
    std::vector<MeraGate> disentanglers;
    double time = 0.0;  // isometry sub-layer then disentangler sub-layer
};

/**
 * Binary d = 1 MERA on L sites in generative order (tau = S-1 down to 0).
 * At layer tau the live sites are the multiples of l_tau = 2^tau. Isometries
 * act on (a_2k, a_2k+1), bringing a fresh |0> site into play; disentanglers
 * then act on (a_2k+1, a_2k+2).
 */
struct MeraSchedule {
    int L = 2;
    double alpha = 3.0;
    ScheduleMode mode = ScheduleMode::hypercube;
    double local_gate_time = 0.0;
    std::vector<MeraLayer> layers;  // generative order
    double total_time = 0.0;
};

/**
 * Builds and checks the schedule. Each transfer runs the full transfer
 * protocol on the chain [first + 1, second] from `second` to `first + 1`.
 * Throws NumericalError("scratch conflict at layer <tau>, site <s>") when a
 * transfer would route through a site that already carries state.
 */
MeraSchedule build_mera_schedule(int L, double alpha, ScheduleMode mode = ScheduleMode::hypercube,
                                 double local_gate_time = 0.0);

/// Re-runs the structural scratch check on a (possibly edited) schedule.
void check_mera_schedule(const MeraSchedule& schedule);

enum class MeraGateChoice { identity, fixed_entangler };

std::string to_string(MeraGateChoice choice);
MeraGateChoice parse_mera_gate_choice(const std::string& text);

/// The two-qubit unitary used for `kind` under `choice`; operand order
/// (first, second) with first as the more significant qubit.
Matrix4 mera_gate_matrix(MeraGateChoice choice, MeraGateKind kind);

/// Top-level input: site 0 in cos(0.3)|0> + e^{0.7i} sin(0.3)|1>, everything else |0>.
PureState mera_reference_input(int L);

/// Executes the lowered schedule (transfers and local gates). Defaults to
/// mera_reference_input.
PureState replay_mera(const MeraSchedule& schedule, MeraGateChoice choice,
                      std::optional<PureState> input = std::nullopt);

/// The same circuit with every gate applied directly at distance l_tau.
PureState apply_mera_direct(const MeraSchedule& schedule, MeraGateChoice choice,
                            std::optional<PureState> input = std::nullopt);

}  // namespace lrqt
