// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "dense_oracle.hpp"
#include "lrqt/dipolar.hpp"
#include "lrqt/mera.hpp"
#include "lrqt/protocol.hpp"
#include "lrqt/pulse.hpp"
#include "lrqt/reliability.hpp"
#include "lrqt/schedule.hpp"

using namespace lrqt;
using std::numbers::pi;

namespace {

// Collects failure notes for one criterion.
class Criterion {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& text) { notes_.push_back(text); }
    bool passed() const { return failures_.empty(); }
    std::string summary() const {
        std::ostringstream s;
        const auto& items = failures_.empty() ? notes_ : failures_;
        for (std::size_t i = 0; i < items.size() && i < 8; ++i) s << (i ? "; " : "") << items[i];
        if (items.size() > 8) s << "; ... (" << items.size() << " total)";
        return s.str();
    }

private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Complex minus_i_power(int k) {
    Complex z{1.0, 0.0};
    for (int i = 0; i < k; ++i) z *= Complex{0.0, -1.0};
    return z;
}

std::map<double, ScheduleResult> fig3_schedules;

const ScheduleResult& fig3_schedule(double alpha) {
    auto it = fig3_schedules.find(alpha);
    if (it == fig3_schedules.end()) it = fig3_schedules.emplace(alpha, solve_hypercube_times(1000, 2, alpha)).first;
    return it->second;
}

void fig3(Criterion& c) {
    for (double alpha : {2.25, 2.5, 2.75}) {
        const double beta = fit_scaling(fig3_schedule(alpha), 0.9).power_law.beta;
        c.expect(std::abs(beta - (alpha - 2)) <= 0.10, "alpha=" + num(alpha) + " beta=" + num(beta));
        c.note("alpha=" + num(alpha) + " beta=" + num(beta, 4));
    }
    const double b4 = fit_scaling(fig3_schedule(4.0), 0.9).power_law.beta;
    c.expect(std::abs(b4 - 1) <= 0.05, "alpha=4 beta=" + num(b4));
    const double b15 = fit_scaling(fig3_schedule(1.5), 0.9).power_law.beta;
    c.expect(b15 <= 0.05, "alpha=1.5 beta=" + num(b15));
    const double b3 = fit_scaling(fig3_schedule(3.0), 0.9).power_law.beta;
    c.expect(b3 < 1.0, "alpha=3 beta=" + num(b3));
    const auto marginal = fit_scaling(fig3_schedule(2.0), 0.9);
    const double r2 = marginal.logarithmic ? marginal.logarithmic->r_squared : 0.0;
    c.expect(r2 >= 0.999, "alpha=2 log fit r^2=" + num(r2));
    c.note("alpha=4 beta=" + num(b4, 4) + "; alpha=1.5 beta=" + num(b15, 4) + "; alpha=3 beta=" + num(b3, 4) +
           "; alpha=2 log r^2=" + num(r2, 8));
}

void three_qubit(Criterion& c) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_amp = 0.0, worst_fid = 1.0;
    for (double alpha : {1.0, 2.0, 3.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double theta = 0.5 * pi * u(rng);
            const Complex a = std::cos(theta), b = std::polar(std::sin(theta), 2 * pi * u(rng));
            const LatticeSpec chain = LatticeSpec::chain(3, alpha);
            const PulseProgram build = build_ghz_program(chain, ScheduleMode::greedy);
            const auto& first = std::get<ControlledXStep>(build.steps()[0]);
            PureState s(3);
            s.amplitudes()[0] = a;
            s.amplitudes()[4] = b;
            evolve_controlled_x(s, first.terms, first.duration);
            const double phi = pi / std::pow(2.0, alpha + 1);
            const Complex mi{0.0, -1.0};
            worst_amp = std::max({worst_amp, std::abs(first.duration - pi / 2), std::abs(s.amplitude(0) - a),
                                  std::abs(s.amplitude(6) - mi * b * std::cos(phi)),
                                  std::abs(s.amplitude(7) + b * std::sin(phi))});

            for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
                const auto ghz = run_protocol(chain, a, b, mode, ProtocolPhase::ghz_only);
                worst_amp = std::max({worst_amp, std::abs(ghz.final_state.amplitude(0) - a),
                                      std::abs(ghz.final_state.amplitude(7) + b)});
                const auto moved = run_protocol(chain, a, b, mode, ProtocolPhase::full_transfer);
                worst_fid = std::min(worst_fid, moved.fidelity);
                worst_amp = std::max({worst_amp, std::abs(moved.final_state.amplitude(0) - a),
                                      std::abs(moved.final_state.amplitude(1) - b)});
            }
        }
    }
    c.expect(worst_amp <= 1e-9, "amplitude error " + num(worst_amp));
    c.expect(worst_fid >= 1 - 1e-9, "transfer fidelity " + num(worst_fid, 15));
    c.note("max amplitude error " + num(worst_amp, 3) + ", min transfer fidelity 1-" + num(1 - worst_fid, 3));
}

void residuals(Criterion& c) {
    double worst = 0.0;
    int runs = 0;
    auto check = [&](const ScheduleResult& r) {
        ++runs;
        worst = std::max(worst, r.max_residual());
        for (int q = 1; q < r.L(); ++q) {
            if (!(r.times[static_cast<std::size_t>(q)] < r.times[static_cast<std::size_t>(q - 1)])) {
                c.expect(false, "t_q not decreasing at d=" + std::to_string(r.d) + " alpha=" + num(r.alpha) +
                                    " q=" + std::to_string(q + 1));
                return;
            }
        }
    };
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0}) check(solve_hypercube_times(1000, 1, alpha));
    for (const auto& [alpha, r] : fig3_schedules) check(r);
    for (double alpha : {0.5, 1.0}) check(solve_hypercube_times(1000, 2, alpha));
    c.expect(worst <= 1e-10, "max residual " + num(worst));
    c.note(std::to_string(runs) + " schedules to q=1000, max residual " + num(worst, 3));
}

void ghz_phase(Criterion& c) {
    double worst = 0.0, worst_oracle = 0.0;
    for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
        std::vector<LatticeSpec> lattices;
        for (int n = 2; n <= 10; ++n) lattices.push_back(LatticeSpec::chain(n, 2.5));
        lattices.push_back(LatticeSpec::cube(2, 2, 1.5));
        lattices.push_back(LatticeSpec::cube(2, 3, 3.0));
        for (const auto& lattice : lattices) {
            const int n = static_cast<int>(lattice.site_count());
            const auto rep = run_protocol(lattice, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), mode, ProtocolPhase::ghz_only);
            worst = std::max(worst, std::abs(rep.ghz_phase - minus_i_power(n - 1)));
            if (n <= 6) {
                const oracle::Mat U = oracle::program_unitary(build_ghz_program(lattice, mode));
                const Complex amp = U(U.rows() - 1, Eigen::Index{1} << (n - 1));
                worst_oracle = std::max(worst_oracle, std::abs(amp - minus_i_power(n - 1)));
            }
        }
    }
    c.expect(worst <= 1e-9, "simulator phase error " + num(worst));
    c.expect(worst_oracle <= 1e-9, "oracle phase error " + num(worst_oracle));
    c.note("N<=10 phase error " + num(worst, 3) + ", dense oracle N<=6 error " + num(worst_oracle, 3));
}

void dipolar(Criterion& c) {
    const double tol = 1e-10;
    const ControlPrism prism = ControlPrism::anchored(1.0, 1.5, 0.8);
    const Point3 target{-0.7, 0.2, -0.1};
    const double base = prism_interaction(prism, target, tol);
    for (double lam : {0.5, 2.0, 10.0}) {
        const double v = prism_interaction(prism.scaled(lam), {lam * target[0], lam * target[1], lam * target[2]}, tol);
        c.expect(std::abs(v - base) <= 2 * tol, "scale " + num(lam) + " drift " + num(v - base));
    }

    int negative = 0, total = 0;
    for (const auto& shape : {ControlPrism::anchored(1, 1, 1), ControlPrism::anchored(2, 1, 3), ControlPrism::anchored(0.5, 4, 1)}) {
        for (int i = 1; i <= 10; ++i)
            for (int j = 0; j < 10; ++j)
                for (int k = 0; k < 10; ++k) {
                    const Point3 p{0.3 * i, (j - 4.5) / 10 * shape.extent[1], (k - 4.5) / 10 * shape.extent[2]};
                    ++total;
                    negative += dVdx_analytic(shape, p) < 0.0;
                }
    }
    c.expect(negative == total, "dVdx non-negative at " + std::to_string(total - negative) + " points");

    double worst_fd = 0.0;
    const double h = 1e-4;
    for (const Point3& p : {Point3{1.0, 0.1, 0.2}, Point3{0.4, -0.3, 0.0}, Point3{2.5, 0.0, -0.4}}) {
        const ControlPrism cube = ControlPrism::anchored(1, 1, 1);
        const double fd = (face_frame_interaction(cube, {p[0] + h, p[1], p[2]}, 1e-12) -
                           face_frame_interaction(cube, {p[0] - h, p[1], p[2]}, 1e-12)) / (2 * h);
        const double exact = dVdx_analytic(cube, p);
        worst_fd = std::max(worst_fd, std::abs(fd - exact) / std::abs(exact));
    }
    c.expect(worst_fd <= 1e-4, "dVdx finite-difference mismatch " + num(worst_fd));

    const double rel = 1e-8;
    DilationPlan plan;
    plan.steps = 5;
    const auto times = dilation_schedule(plan, rel, SlabSampling{8, 3, 4}).per_step_times();
    double spread = 0.0;
    for (double t : times) spread = std::max(spread, std::abs(t - times[0]) / times[0]);
    c.expect(spread <= 2 * rel, "dilation step spread " + num(spread));

    double worst_sum = 0.0;
    for (int d : {1, 2, 3}) {
        for (double alpha : {d - 0.5, d + 0.5, d + 1.0, d + 2.0}) {
            DilationPlan g;
            g.steps = 5;
            g.d = d;
            g.alpha = alpha;
            g.kernel = DilationKernel::isotropic;
            const DilationPlan done = dilation_schedule(g, rel, SlabSampling{8, 3, 4});
            double predicted = 0.0;
            for (int n = 0; n < g.steps; ++n) predicted += std::pow(g.factor, n * (alpha - d));
            predicted *= done.schedule.front().time;
            worst_sum = std::max(worst_sum, std::abs(done.total_time - predicted) / predicted);
        }
    }
    c.expect(worst_sum <= 0.05, "generalized dilation sum off by " + num(worst_sum));
    c.note(std::to_string(total) + " dVdx samples negative, FD rel error " + num(worst_fd, 3) +
           ", step spread " + num(spread, 3) + ", generalized sums within " + num(worst_sum, 3));
}

void echo_and_cnot(Criterion& c) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::bernoulli_distribution coin(0.5);
    double worst_echo = 0.0;
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<double>> V(n, std::vector<double>(n, 0.0));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) V[i][j] = V[j][i] = u(rng);
            std::vector<EchoRole> roles(n);
            for (auto& r : roles) r = coin(rng) ? EchoRole::control : EchoRole::target;
            const double T = 0.2 + std::abs(u(rng));
            oracle::Mat H = oracle::Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (roles[i] != roles[j])
                        H += V[i][j] * oracle::embed(n, i, oracle::pauli_z()) * oracle::embed(n, j, oracle::pauli_z());
            const oracle::Mat expected = oracle::evolve(H, T);
            worst_echo = std::max(worst_echo, oracle::distance_up_to_phase(expected, oracle::program_unitary(echo_program(roles, T, V))));
        }
    }
    double worst_cnot = 0.0;
    for (double V : {1.0, -1.0}) {
        worst_cnot = std::max(worst_cnot, oracle::distance_up_to_phase(oracle::cnot(), oracle::program_unitary(cnot_from_zz(V))));
    }
    c.expect(worst_echo <= 1e-9, "echo error " + num(worst_echo));
    c.expect(worst_cnot <= 1e-12, "CNOT error " + num(worst_cnot));
    c.note("echo operator-norm error " + num(worst_echo, 3) + ", CNOT error " + num(worst_cnot, 3));
}

void reliability(Criterion& c) {
    const auto p = ReliabilityParams::paper_defaults();
    const double N = max_qubits_longrange(p);
    const double rb = advantage_ratio(p, NnMode::bound), re = advantage_ratio(p, NnMode::exact);
    const double gate = max_qubits_gate_fidelity(p);
    const double wall = protocol_wall_time(p, N, StepCounting::continuous);
    const double wall_discrete = protocol_wall_time(p, N, StepCounting::discrete);
    const double life = ghz_lifetime(p, N);
    c.expect(std::abs(N - 4e4) <= 0.1 * 4e4, "N_lr " + num(N));
    c.expect(std::abs(rb - 4.5) <= 0.2, "bound ratio " + num(rb));
    c.expect(std::abs(re - 4.9) <= 0.2, "exact ratio " + num(re));
    c.expect(std::abs(gate - 1500) <= 150, "gate limit " + num(gate));
    c.expect(std::abs(wall - 25e-9) <= 0.2 * 25e-9, "wall time " + num(wall));
    c.expect(std::abs(life - 8e-9) <= 0.2 * 8e-9, "GHZ lifetime " + num(life));
    c.note("N_lr=" + num(N, 5) + " ratio bound=" + num(rb, 4) + " exact=" + num(re, 4) + " gate limit=" + num(gate, 5) +
           " wall=" + num(wall * 1e9, 4) + "ns (whole steps " + num(wall_discrete * 1e9, 4) + "ns) lifetime=" +
           num(life * 1e9, 3) + "ns");
}

void mera(Criterion& c) {
    for (long long L : {2LL, 8LL, 1024LL, 1LL << 14}) {
        c.expect(mera_layer_count(L, 2) == static_cast<int>(std::llround(std::log2(static_cast<double>(L)))),
                 "layer count L=" + std::to_string(L));
    }
    c.expect(mera_layer_count(729, 3) == 6, "layer count L=729 phi=3");
    double worst_replay = 0.0;
    for (int L : {4, 8, 16}) {
        const MeraSchedule s = build_mera_schedule(L, 3.0);
        c.expect(static_cast<int>(s.layers.size()) == mera_layer_count(L, 2), "schedule layers L=" + std::to_string(L));
        worst_replay = std::max(worst_replay, distance_up_to_phase(replay_mera(s, MeraGateChoice::fixed_entangler),
                                                                   apply_mera_direct(s, MeraGateChoice::fixed_entangler)));
    }
    c.expect(worst_replay <= 1e-9, "replay distance " + num(worst_replay));

    std::ostringstream ratios;
    for (int d : {1, 2, 3}) {
        for (double alpha : {d - 0.5, double(d), d + 0.5, d + 2.0}) {
            const double small = mera_time_bound(1 << 10, 2, alpha, d).total_time;
            const double large = mera_time_bound(1 << 14, 2, alpha, d).total_time;
            const double ratio = large / small;
            double expected = 1.4;  // log L
            if (alpha == d) expected = 1.4 * 1.4;
            else if (alpha > d && alpha <= d + 1) expected = std::pow(16.0, alpha - d);
            else if (alpha > d + 1) expected = 16.0;
            c.expect(std::abs(ratio / expected - 1) <= 0.05,
                     "d=" + std::to_string(d) + " alpha=" + num(alpha) + " ratio " + num(ratio) + " vs " + num(expected));
            if (d == 1) ratios << " a=" << num(alpha) << ":" << num(ratio, 4) << "/" << num(expected, 4);
        }
    }
    c.note("replay distance " + num(worst_replay, 3) + ", 2^14/2^10 ratios" + ratios.str());
}

void properties(Criterion& c) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::vector<ControlledXTerm> terms;
    for (int ctl = 0; ctl < 2; ++ctl)
        for (int t = 2; t < 5; ++t) terms.push_back({ctl, t, u(rng)});
    PureState a(5), b(5);
    apply_hadamard(a, 0);
    apply_hadamard(a, 1);
    b = a;
    evolve_controlled_x(a, terms, 0.9);
    std::reverse(terms.begin(), terms.end());
    evolve_controlled_x(b, terms, 0.9);
    c.expect(distance_up_to_phase(a, b) < 1e-12, "commutation order");
    c.expect(std::abs(a.norm() - 1) < 1e-12, "norm");

    int dominated = 0, compared = 0;
    for (double alpha : {1.0, 2.0, 3.0, 4.0}) {
        for (int L : {3, 5, 10, 20, 30}) {
            for (int d : {1, 2}) {
                ++compared;
                const auto greedy = greedy_schedule(LatticeSpec::cube(d, L, alpha));
                dominated += greedy.destination_time <= total_transfer_time(L - 1, d, alpha).one_way + 1e-12;
            }
        }
    }
    c.expect(dominated == compared, "greedy slower in " + std::to_string(compared - dominated) + " cases");

    double worst = 0.0;
    for (int d : {1, 2, 3})
        for (int q = 1; q <= 30; ++q) {
            const auto row = shell_bucketed_sums(q, d, 2.5);
            for (int p = 1; p <= q; ++p) {
                const double direct = hypercube_coupling_sum(p, q, d, 2.5);
                worst = std::max(worst, std::abs(row[static_cast<std::size_t>(p - 1)] - direct) / direct);
            }
        }
    c.expect(worst <= 1e-12, "bucketed vs direct " + num(worst));
    c.note("greedy dominance " + std::to_string(dominated) + "/" + std::to_string(compared) +
           ", bucketed vs direct " + num(worst, 3) + " (full suite: lrqt_property_tests)");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"scaling exponents at d=2", fig3},
        {"three-qubit analytics", three_qubit},
        {"phase-condition residuals", residuals},
        {"GHZ phase law", ghz_phase},
        {"dipolar suite", dipolar},
        {"echo and gate synthesis", echo_and_cnot},
        {"reliability headline numbers", reliability},
        {"MERA layers, replay and bounds", mera},
        {"property checks", properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !c.passed();
        std::printf("[%s] %zu %s (%.1fs): %s\n", c.passed() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    c.summary().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
