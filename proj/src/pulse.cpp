#include "lrqt/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "lrqt/error.hpp"

namespace lrqt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Matrix4 adjoint(const Matrix4& m) {
    Matrix4 out{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(4 * r + c)] = std::conj(m[static_cast<std::size_t>(4 * c + r)]);
    }
    return out;
}

}  // namespace

std::vector<int> ControlledXStep::controls() const {
    std::set<int> s;
    for (const auto& t : terms) s.insert(t.control);
    return {s.begin(), s.end()};
}

std::vector<int> ControlledXStep::targets() const {
    std::set<int> s;
    for (const auto& t : terms) s.insert(t.target);
    return {s.begin(), s.end()};
}

void PulseProgram::append(const PulseProgram& other) {
    if (other.qubits_ != qubits_) throw InvalidArgument("cannot append programs on different registers");
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

double PulseProgram::elapsed() const {
    double total = 0.0;
    for (const auto& step : steps_) {
        std::visit(overloaded{[&](const ControlledXStep& s) { total += s.duration; },
                              [&](const ZZStep& s) { total += s.duration; },
                              [](const auto&) {}},
                   step);
    }
    return total;
}

void PulseProgram::validate() const {
    auto check = [this](int q) {
        if (q < 0 || q >= qubits_) throw InvalidArgument("program step addresses a qubit outside the register");
    };
    for (const auto& step : steps_) {
        std::visit(overloaded{
                       [&](const ControlledXStep& s) {
                           if (s.duration < 0.0) throw InvalidArgument("durations must be >= 0");
                           std::set<int> targets;
                           for (const auto& t : s.terms) {
                               check(t.control);
                               check(t.target);
                               targets.insert(t.target);
                           }
                           for (const auto& t : s.terms) {
                               if (targets.count(t.control)) throw InvalidArgument("non-commuting simultaneous terms");
                           }
                       },
                       [&](const ZZStep& s) {
                           if (s.duration < 0.0) throw InvalidArgument("durations must be >= 0");
                           for (const auto& t : s.terms) {
                               check(t.first);
                               check(t.second);
                           }
                       },
                       [&](const GateStep& s) { check(s.qubit); },
                       [&](const TwoQubitGateStep& s) {
                           check(s.first);
                           check(s.second);
                       }},
                   step);
    }
}

PulseProgram PulseProgram::inverse() const {
    PulseProgram out(qubits_);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        out.add(std::visit(overloaded{[](ControlledXStep s) -> PulseStep {
                                          s.sign = -s.sign;
                                          return s;
                                      },
                                      [](ZZStep s) -> PulseStep {
                                          s.sign = -s.sign;
                                          return s;
                                      },
                                      [](GateStep s) -> PulseStep {
                                          if (s.gate == SingleQubitGate::rz) s.angle = -s.angle;
                                          return s;
                                      },
                                      [](TwoQubitGateStep s) -> PulseStep {
                                          s.matrix = adjoint(s.matrix);
                                          s.label += "^dag";
                                          return s;
                                      }},
                           *it));
    }
    return out;
}

PulseProgram PulseProgram::remapped(const std::vector<int>& mapping, int qubits) const {
    if (static_cast<int>(mapping.size()) != qubits_) throw InvalidArgument("mapping must cover every qubit");
    auto map = [&](int q) {
        const int m = mapping[static_cast<std::size_t>(q)];
        if (m < 0 || m >= qubits) throw InvalidArgument("mapping target outside register");
        return m;
    };
    PulseProgram out(qubits);
    for (const auto& step : steps_) {
        out.add(std::visit(overloaded{[&](ControlledXStep s) -> PulseStep {
                                          for (auto& t : s.terms) {
                                              t.control = map(t.control);
                                              t.target = map(t.target);
                                          }
                                          return s;
                                      },
                                      [&](ZZStep s) -> PulseStep {
                                          for (auto& t : s.terms) {
                                              t.first = map(t.first);
                                              t.second = map(t.second);
                                          }
                                          return s;
                                      },
                                      [&](GateStep s) -> PulseStep {
                                          s.qubit = map(s.qubit);
                                          return s;
                                      },
                                      [&](TwoQubitGateStep s) -> PulseStep {
                                          s.first = map(s.first);
                                          s.second = map(s.second);
                                          return s;
                                      }},
                           step));
    }
    return out;
}

void PulseProgram::run(PureState& state) const {
    if (state.qubit_count() != qubits_) throw InvalidArgument("state and program registers differ");
    for (const auto& step : steps_) {
        std::visit(overloaded{[&](const ControlledXStep& s) { evolve_controlled_x(state, s.terms, s.duration, s.sign); },
                              [&](const ZZStep& s) { evolve_zz(state, s.terms, s.duration, s.sign); },
                              [&](const GateStep& s) {
                                  switch (s.gate) {
                                      case SingleQubitGate::x: apply_x(state, s.qubit); break;
                                      case SingleQubitGate::hadamard: apply_hadamard(state, s.qubit); break;
                                      case SingleQubitGate::rz: apply_rz(state, s.qubit, s.angle); break;
                                  }
                              },
                              [&](const TwoQubitGateStep& s) { apply_two_qubit(state, s.first, s.second, s.matrix); }},
                   step);
    }
}

std::vector<Complex> composite_unitary(const PulseProgram& program) {
    const int n = program.qubit_count();
    if (n > 12) throw InvalidArgument("composite unitary limited to 12 qubits");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> u(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        PureState s = PureState::basis(n, col);
        program.run(s);
        std::copy(s.amplitudes().begin(), s.amplitudes().end(), u.begin() + static_cast<std::ptrdiff_t>(col * dim));
    }
    return u;
}

PulseProgram cnot_from_zz(double V, int control, int target, int qubits) {
    if (V == 0.0 || !std::isfinite(V)) throw InvalidArgument("no interaction");
    if (control == target) throw InvalidArgument("control and target must differ");
    // CZ = e^{-i s pi/4} exp(i s pi/4 Z_c) exp(i s pi/4 Z_t) exp(-i s pi/4 Z_c Z_t), s = sign(V);
    // the ZZ factor is the native evolution for pi/(4|V|).
    const double s = V > 0.0 ? 1.0 : -1.0;
    PulseProgram p(qubits);
    p.add(GateStep{SingleQubitGate::hadamard, target, 0.0});
    p.add(ZZStep{{ZZTerm{control, target, V}}, std::numbers::pi / (4.0 * std::abs(V)), 1.0});
    p.add(GateStep{SingleQubitGate::rz, control, -s * std::numbers::pi / 2.0});
    p.add(GateStep{SingleQubitGate::rz, target, -s * std::numbers::pi / 2.0});
    p.add(GateStep{SingleQubitGate::hadamard, target, 0.0});
    p.validate();
    return p;
}

PulseProgram echo_program(const std::vector<EchoRole>& roles, double T,
                          const std::vector<std::vector<double>>& couplings) {
    if (!(T > 0.0)) throw InvalidArgument("echo time must be > 0");
    const int n = static_cast<int>(roles.size());
    if (n < 1) throw InvalidArgument("echo needs at least one qubit");
    for (int i = 0; i < n; ++i) {
        if (roles[static_cast<std::size_t>(i)] == EchoRole::unlabeled) {
            throw InvalidArgument("qubit " + std::to_string(i) + " is neither control nor target");
        }
    }
    if (static_cast<int>(couplings.size()) != n) throw InvalidArgument("coupling matrix must be n x n");
    std::vector<ZZTerm> terms;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(couplings[static_cast<std::size_t>(i)].size()) != n) {
            throw InvalidArgument("coupling matrix must be n x n");
        }
        for (int j = i + 1; j < n; ++j) {
            const double v = couplings[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v != 0.0) terms.push_back(ZZTerm{i, j, v});
        }
    }
    PulseProgram p(n);
    auto flip_targets = [&] {
        for (int i = 0; i < n; ++i) {
            if (roles[static_cast<std::size_t>(i)] == EchoRole::target) p.add(GateStep{SingleQubitGate::x, i, 0.0});
        }
    };
    p.add(ZZStep{terms, T, 1.0});
    p.add(ZZStep{terms, T / 2.0, -1.0});
    flip_targets();
    p.add(ZZStep{terms, T / 2.0, -1.0});
    flip_targets();
    return p;
}

}  // namespace lrqt
