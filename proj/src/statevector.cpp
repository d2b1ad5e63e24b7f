#include "lrqt/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "lrqt/error.hpp"

namespace lrqt {

namespace {

void check_qubit(const PureState& state, int qubit) {
    if (qubit < 0 || qubit >= state.qubit_count()) {
        throw InvalidArgument("qubit index " + std::to_string(qubit) + " out of range");
    }
}

}  // namespace

PureState::PureState(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw InvalidArgument("qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

PureState PureState::basis(int qubits, std::uint64_t index) {
    PureState s(qubits);
    if (index >= s.dimension()) throw InvalidArgument("basis index out of range");
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

PureState PureState::product(std::span<const std::array<Complex, 2>> qubits) {
    PureState s(static_cast<int>(qubits.size()));
    s.amplitudes_.assign(1, Complex{1.0, 0.0});
    for (const auto& q : qubits) {
        std::vector<Complex> next(s.amplitudes_.size() * 2);
        for (std::size_t i = 0; i < s.amplitudes_.size(); ++i) {
            next[2 * i] = s.amplitudes_[i] * q[0];
            next[2 * i + 1] = s.amplitudes_[i] * q[1];
        }
        s.amplitudes_ = std::move(next);
    }
    return s;
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw InvalidArgument("amplitude count must be a power of two");
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    PureState s(n);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double PureState::norm() const {
    double acc = 0.0;
    for (const Complex& a : amplitudes_) acc += std::norm(a);
    return std::sqrt(acc);
}

Complex inner_product(const PureState& a, const PureState& b) {
    if (a.dimension() != b.dimension()) throw InvalidArgument("states have different qubit counts");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    return acc;
}

double fidelity(const PureState& target, const PureState& state) {
    return std::min(1.0, std::abs(inner_product(target, state)));
}

double distance_up_to_phase(const PureState& expected, const PureState& actual) {
    const Complex overlap = inner_product(actual, expected);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.dimension(); ++i) {
        worst = std::max(worst, std::abs(expected.amplitude(i) - phase * actual.amplitude(i)));
    }
    return worst;
}

void evolve_controlled_x(PureState& state, std::span<const ControlledXTerm> terms, double duration, double sign) {
    if (duration < 0.0) throw InvalidArgument("duration must be >= 0");
    std::set<int> controls, targets;
    // target -> (control mask, strength) pairs
    std::map<int, std::vector<std::pair<std::uint64_t, double>>> by_target;
    for (const auto& t : terms) {
        check_qubit(state, t.control);
        check_qubit(state, t.target);
        if (!(t.strength > 0.0)) throw InvalidArgument("controlled-X strengths must be > 0");
        controls.insert(t.control);
        targets.insert(t.target);
        by_target[t.target].emplace_back(state.mask(t.control), t.strength);
    }
    for (int c : controls) {
        if (targets.count(c)) throw InvalidArgument("non-commuting simultaneous terms");
    }
    if (duration == 0.0) return;

    auto amps = state.amplitudes();
    const double scale = sign * duration;
    for (const auto& [target, pairs] : by_target) {
        const std::uint64_t tmask = state.mask(target);
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if (i & tmask) continue;
            double theta = 0.0;
            for (const auto& [cmask, h] : pairs) {
                if (i & cmask) theta += h;
            }
            if (theta == 0.0) continue;
            theta *= scale;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | tmask];
            const Complex mis{0.0, -s};
            amps[i] = c * a0 + mis * a1;
            amps[i | tmask] = mis * a0 + c * a1;
        }
    }
}

void evolve_zz(PureState& state, std::span<const ZZTerm> terms, double duration, double sign) {
    if (duration < 0.0) throw InvalidArgument("duration must be >= 0");
    std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> masks;
    for (const auto& t : terms) {
        check_qubit(state, t.first);
        check_qubit(state, t.second);
        if (t.first == t.second) throw InvalidArgument("ZZ term needs two distinct qubits");
        masks.emplace_back(state.mask(t.first), state.mask(t.second), t.coefficient);
    }
    if (duration == 0.0) return;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        double energy = 0.0;
        for (const auto& [ma, mb, v] : masks) {
            const bool parity = ((i & ma) != 0) != ((i & mb) != 0);
            energy += parity ? -v : v;
        }
        amps[i] *= std::polar(1.0, -sign * duration * energy);
    }
}

void apply_x(PureState& state, int qubit) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    const std::uint64_t m = state.mask(qubit);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (!(i & m)) std::swap(amps[i], amps[i | m]);
    }
}

void apply_hadamard(PureState& state, int qubit) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    const std::uint64_t m = state.mask(qubit);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & m) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | m];
        amps[i] = r * (a0 + a1);
        amps[i | m] = r * (a0 - a1);
    }
}

void apply_rz(PureState& state, int qubit, double angle) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    const std::uint64_t m = state.mask(qubit);
    const Complex p0 = std::polar(1.0, -angle / 2.0);
    const Complex p1 = std::polar(1.0, angle / 2.0);
    for (std::uint64_t i = 0; i < amps.size(); ++i) amps[i] *= (i & m) ? p1 : p0;
}

void apply_two_qubit(PureState& state, int first, int second, const Matrix4& u) {
    check_qubit(state, first);
    check_qubit(state, second);
    if (first == second) throw InvalidArgument("two-qubit gate needs distinct qubits");
    auto amps = state.amplitudes();
    const std::uint64_t m1 = state.mask(first);
    const std::uint64_t m2 = state.mask(second);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & (m1 | m2)) continue;
        const std::uint64_t idx[4] = {i, i | m2, i | m1, i | m1 | m2};
        Complex in[4];
        for (int k = 0; k < 4; ++k) in[k] = amps[idx[k]];
        for (int r = 0; r < 4; ++r) {
            Complex acc{0.0, 0.0};
            for (int c = 0; c < 4; ++c) acc += u[static_cast<std::size_t>(4 * r + c)] * in[c];
            amps[idx[r]] = acc;
        }
    }
}

}  // namespace lrqt
