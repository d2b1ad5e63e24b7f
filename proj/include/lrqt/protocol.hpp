#pragma once

#include <string>

#include "lrqt/lattice.hpp"
#include "lrqt/pulse.hpp"
#include "lrqt/schedule.hpp"
#include "lrqt/statevector.hpp"

namespace lrqt {

enum class ProtocolPhase { ghz_only, full_transfer };

std::string to_string(ProtocolPhase phase);
ProtocolPhase parse_protocol_phase(const std::string& text);

/**
 * Controlled-X program that spreads the source qubit over every lattice site,
 * one qubit per site (qubit index = site index). Each growth segment becomes
 * one step in which every current control drives every active target with
 * strength r^-alpha.
 */
PulseProgram build_ghz_program(const LatticeSpec& lattice, ScheduleMode mode);

/**
 * GHZ build from the source followed, for full_transfer, by the inverse of
 * the GHZ build rooted at the destination. The second half is the mirrored,
 * time-reversed protocol and leaves the destination as the final control.
 */
PulseProgram build_transfer_program(const LatticeSpec& lattice, ScheduleMode mode, ProtocolPhase phase);

struct TransferReport {
    PureState final_state{1};
    double fidelity = 0.0;
    Complex ghz_phase{0.0, 0.0};  // <1...1| U_build |1 on source, 0 elsewhere>
    double elapsed = 0.0;
    ProtocolPhase phase = ProtocolPhase::ghz_only;
};

/**
 * Runs the protocol on a|0> + b|1> stored on the source, all other sites in
 * |0>. ghz_only is scored against a|0...0> + (-i)^(N-1) b|1...1>;
 * full_transfer against a|0> + b|1> on the destination with the rest in |0>.
 */
TransferReport run_protocol(const LatticeSpec& lattice, Complex a, Complex b, ScheduleMode mode,
                            ProtocolPhase phase);

/// Expected GHZ output a|0...0> + (-i)^(n-1) b|1...1>.
PureState ghz_target(int qubits, Complex a, Complex b);

}  // namespace lrqt
