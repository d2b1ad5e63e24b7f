#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace lrqt {

using Complex = std::complex<double>;

/// Row-major 4x4 matrix acting on |first second>, first qubit most significant.
using Matrix4 = std::array<Complex, 16>;

inline constexpr int kMaxQubits = 24;

/**
 * Pure state of n qubits as 2^n amplitudes. Basis index bits follow the
 * binary expansion with qubit 0 as the most significant bit, so |q0 q1 ...>
 * maps to index q0 * 2^(n-1) + q1 * 2^(n-2) + ...
 */
class PureState {
public:
    /// |0...0>
    explicit PureState(int qubits);

    static PureState basis(int qubits, std::uint64_t index);
    /// Tensor product of single-qubit states (alpha, beta), qubit 0 first.
    static PureState product(std::span<const std::array<Complex, 2>> qubits);
    static PureState from_amplitudes(std::vector<Complex> amplitudes);

    int qubit_count() const { return qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    Complex amplitude(std::uint64_t index) const { return amplitudes_[index]; }
    double norm() const;

    /// Basis-index mask of `qubit`.
    std::uint64_t mask(int qubit) const { return std::uint64_t{1} << (qubits_ - 1 - qubit); }

private:
    int qubits_;
    std::vector<Complex> amplitudes_;
};

/// <a|b>
Complex inner_product(const PureState& a, const PureState& b);

/// |<target|state>|, insensitive to global phase.
double fidelity(const PureState& target, const PureState& state);

/// Largest amplitude deviation after removing the best global phase.
double distance_up_to_phase(const PureState& expected, const PureState& actual);

struct ControlledXTerm {
    int control = 0;
    int target = 0;
    double strength = 0.0;
};

struct ZZTerm {
    int first = 0;
    int second = 0;
    double coefficient = 0.0;
};

/**
 * Applies exp(-i sign duration sum_k h_k |1><1|_{c_k} X_{t_k}).
 *
 * Each target rotates about X by the summed strength of its set controls.
 * The control and target sets must be disjoint, which makes every term
 * commute; otherwise InvalidArgument("non-commuting simultaneous terms").
 */
void evolve_controlled_x(PureState& state, std::span<const ControlledXTerm> terms, double duration,
                         double sign = 1.0);

/// Applies exp(-i sign duration sum_k V_k Z_a Z_b).
void evolve_zz(PureState& state, std::span<const ZZTerm> terms, double duration, double sign = 1.0);

void apply_x(PureState& state, int qubit);
void apply_hadamard(PureState& state, int qubit);
/// exp(-i angle Z / 2)
void apply_rz(PureState& state, int qubit, double angle);
void apply_two_qubit(PureState& state, int first, int second, const Matrix4& matrix);

}  // namespace lrqt
