#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "lrqt/error.hpp"
#include "lrqt/pulse.hpp"

using namespace lrqt;
using std::numbers::pi;

namespace {

oracle::Mat composite(const PulseProgram& p) {
    const auto cols = composite_unitary(p);
    const Eigen::Index dim = Eigen::Index{1} << p.qubit_count();
    oracle::Mat m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = cols[static_cast<std::size_t>(c * dim + r)];
    return m;
}

// exp(-i T sum V_ij Z_i Z_j) over the listed pairs; diagonal in the computational basis.
oracle::Mat zz_evolution(int n, double T, const std::vector<std::vector<double>>& V,
                         const std::function<bool(int, int)>& keep) {
    oracle::Mat H = oracle::Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (keep(i, j)) H += V[i][j] * oracle::embed(n, i, oracle::pauli_z()) * oracle::embed(n, j, oracle::pauli_z());
    return oracle::evolve(H, T);
}

std::vector<std::vector<double>> random_couplings(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<std::vector<double>> V(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) V[i][j] = V[j][i] = u(rng);
    return V;
}

}  // namespace

TEST_CASE("CNOT from the Ising interaction for either sign") {
    for (double V : {1.0, -1.0, 0.37, -2.5}) {
        const PulseProgram p = cnot_from_zz(V);
        CHECK(p.elapsed() == doctest::Approx(pi / (4 * std::abs(V))));
        CHECK(oracle::distance_up_to_phase(oracle::cnot(), oracle::program_unitary(p)) < 1e-12);
        CHECK(oracle::distance_up_to_phase(oracle::cnot(), composite(p)) < 1e-12);
    }
}

TEST_CASE("CNOT encodes a qubit into two") {
    const Complex a{0.6, 0.0}, b{0.0, 0.8};
    for (double V : {1.0, -1.0}) {
        const std::vector<std::array<Complex, 2>> f{{a, b}, {Complex{1, 0}, Complex{0, 0}}};
        PureState s = PureState::product(f);
        cnot_from_zz(V).run(s);
        const PureState expected = PureState::from_amplitudes({a, 0.0, 0.0, b});
        CHECK(distance_up_to_phase(expected, s) < 1e-12);
    }
}

TEST_CASE("CNOT synthesis needs an interaction") {
    CHECK_THROWS_WITH_AS(cnot_from_zz(0.0), "no interaction", InvalidArgument);
    CHECK_THROWS_AS(cnot_from_zz(1.0, 1, 1), InvalidArgument);
}

TEST_CASE("CNOT embedded in a larger register") {
    const PulseProgram p = cnot_from_zz(-0.8, 2, 0, 3);
    oracle::Mat expected = oracle::Mat::Zero(8, 8);
    for (int col = 0; col < 8; ++col) {
        const int control = col & 1, row = control ? col ^ 4 : col;
        expected(row, col) = 1.0;
    }
    CHECK(oracle::distance_up_to_phase(expected, oracle::program_unitary(p)) < 1e-12);
}

TEST_CASE("echo keeps one control-target pair for time T") {
    const std::vector<std::vector<double>> V{{0.0, 0.7}, {0.7, 0.0}};
    const PulseProgram p = echo_program({EchoRole::control, EchoRole::target}, 1.3, V);
    CHECK(p.elapsed() == doctest::Approx(2.6));
    const auto all = [](int, int) { return true; };
    CHECK(oracle::distance_up_to_phase(zz_evolution(2, 1.3, V, all), oracle::program_unitary(p)) < 1e-12);
}

TEST_CASE("echo with only controls is the identity") {
    std::mt19937_64 rng(2);
    for (int n : {2, 3, 4}) {
        const auto V = random_couplings(n, rng);
        const PulseProgram p = echo_program(std::vector<EchoRole>(n, EchoRole::control), 0.9, V);
        const oracle::Mat id = oracle::Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
        CHECK(oracle::distance_up_to_phase(id, oracle::program_unitary(p)) < 1e-12);
    }
}

TEST_CASE("echo removes same-label couplings on four qubits") {
    std::mt19937_64 rng(9);
    const std::vector<std::vector<EchoRole>> labelings{
        {EchoRole::control, EchoRole::target, EchoRole::control, EchoRole::target},
        {EchoRole::control, EchoRole::control, EchoRole::target, EchoRole::target},
        {EchoRole::target, EchoRole::control, EchoRole::target, EchoRole::target},
        {EchoRole::target, EchoRole::target, EchoRole::target, EchoRole::target}};
    for (const auto& roles : labelings) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto V = random_couplings(4, rng);
            const double T = 0.3 + 0.4 * trial;
            const auto cross = [&](int i, int j) { return roles[i] != roles[j]; };
            const PulseProgram p = echo_program(roles, T, V);
            CHECK(oracle::distance_up_to_phase(zz_evolution(4, T, V, cross), oracle::program_unitary(p)) < 1e-9);
            CHECK(oracle::distance_up_to_phase(zz_evolution(4, T, V, cross), composite(p)) < 1e-9);
        }
    }
}

TEST_CASE("echo input validation") {
    const std::vector<std::vector<double>> V{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(echo_program({EchoRole::control, EchoRole::unlabeled}, 1.0, V), InvalidArgument);
    CHECK_THROWS_AS(echo_program({EchoRole::control, EchoRole::target}, 0.0, V), InvalidArgument);
    CHECK_THROWS_AS(echo_program({EchoRole::control, EchoRole::target, EchoRole::target}, 1.0, V), InvalidArgument);
}

TEST_CASE("program inverse undoes the program") {
    PulseProgram p(3);
    p.add(ControlledXStep{{{0, 1, 0.8}, {0, 2, 0.3}}, 1.1, 1.0});
    p.add(GateStep{SingleQubitGate::hadamard, 2, 0.0});
    p.add(ZZStep{{{1, 2, -0.6}}, 0.4, 1.0});
    p.add(GateStep{SingleQubitGate::rz, 0, 0.9});
    Matrix4 u{};
    u[0] = u[5] = u[11] = 1.0;
    u[14] = Complex{0.0, 1.0};
    p.add(TwoQubitGateStep{2, 0, u, "cx-phase"});
    p.validate();
    const oracle::Mat U = oracle::program_unitary(p);
    CHECK(oracle::distance_up_to_phase(U.adjoint(), oracle::program_unitary(p.inverse())) < 1e-12);
    CHECK(oracle::distance_up_to_phase(U, composite(p)) < 1e-12);
    CHECK(p.inverse().elapsed() == doctest::Approx(p.elapsed()));
}

TEST_CASE("relabelled programs act on the mapped qubits") {
    PulseProgram p(2);
    p.add(ControlledXStep{{{0, 1, 1.0}}, pi / 2, 1.0});
    const PulseProgram q = p.remapped({3, 1}, 4);
    PureState s = PureState::basis(4, 0b0001);
    q.run(s);
    CHECK(std::abs(s.amplitude(0b0101)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(p.remapped({0}, 4), InvalidArgument);
    CHECK_THROWS_AS(p.remapped({0, 4}, 4), InvalidArgument);
}

TEST_CASE("program validation") {
    PulseProgram p(2);
    p.add(ControlledXStep{{{0, 1, 1.0}, {1, 0, 1.0}}, 1.0, 1.0});
    CHECK_THROWS_WITH_AS(p.validate(), "non-commuting simultaneous terms", InvalidArgument);
    PulseProgram q(2);
    q.add(ZZStep{{{0, 1, 1.0}}, -1.0, 1.0});
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
    PulseProgram r(2);
    r.add(GateStep{SingleQubitGate::x, 5, 0.0});
    CHECK_THROWS_AS(r.validate(), InvalidArgument);
}
