#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lrqt/statevector.hpp"

namespace lrqt {

/// Simultaneous controlled-X terms evolved for `duration`; sign -1 runs the
/// negated generator (used by inverse programs).
struct ControlledXStep {
    std::vector<ControlledXTerm> terms;
    double duration = 0.0;
    double sign = 1.0;

    std::vector<int> controls() const;
    std::vector<int> targets() const;
};

struct ZZStep {
    std::vector<ZZTerm> terms;
    double duration = 0.0;
    double sign = 1.0;
};

enum class SingleQubitGate { x, hadamard, rz };

struct GateStep {
    SingleQubitGate gate = SingleQubitGate::x;
    int qubit = 0;
    double angle = 0.0;  // rz only
};

/// Instantaneous local two-qubit unitary.
struct TwoQubitGateStep {
    int first = 0;
    int second = 0;
    Matrix4 matrix{};
    std::string label;
};

using PulseStep = std::variant<ControlledXStep, ZZStep, GateStep, TwoQubitGateStep>;

/// Timed sequence of two-body evolutions and instantaneous gates on a fixed
/// qubit register.
class PulseProgram {
public:
    explicit PulseProgram(int qubits = 1) : qubits_(qubits) {}

    int qubit_count() const { return qubits_; }
    const std::vector<PulseStep>& steps() const { return steps_; }

    void add(PulseStep step) { steps_.push_back(std::move(step)); }
    void append(const PulseProgram& other);

    /// Total evolution time; gates are instantaneous.
    double elapsed() const;

    /// Throws InvalidArgument on negative durations, out-of-range qubits or
    /// overlapping control/target sets within one step.
    void validate() const;

    /// Exact inverse: steps reversed, generators negated, gates inverted.
    PulseProgram inverse() const;

    /// Relabels qubit q as mapping[q] on a register of `qubits` qubits.
    PulseProgram remapped(const std::vector<int>& mapping, int qubits) const;

    void run(PureState& state) const;

private:
    int qubits_;
    std::vector<PulseStep> steps_;
};

/// Dense unitary of a program, column-major (column j is the image of |j>).
std::vector<Complex> composite_unitary(const PulseProgram& program);

/**
 * CNOT built from the Ising interaction V Z_c Z_t: Hadamards on the target
 * around ZZ evolution for pi / (4|V|) and Z rotations on both qubits whose
 * sign follows the sign of V. Throws InvalidArgument("no interaction") at V = 0.
 */
PulseProgram cnot_from_zz(double V, int control = 0, int target = 1, int qubits = 2);

enum class EchoRole { control, target, unlabeled };

/**
 * Echo sequence isolating control-target couplings of
 * H_int = sum_{i<j} V_ij Z_i Z_j:
 *   +H_int for T, -H_int for T/2, X on targets, -H_int for T/2, X on targets.
 * The net unitary is exp(-i T sum_{i control, j target} V_ij Z_i Z_j).
 * `couplings` is a symmetric qubit-by-qubit matrix; only i < j entries are read.
 */
PulseProgram echo_program(const std::vector<EchoRole>& roles, double T,
                          const std::vector<std::vector<double>>& couplings);

}  // namespace lrqt
