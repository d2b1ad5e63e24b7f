#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "lrqt/error.hpp"
#include "lrqt/protocol.hpp"

using namespace lrqt;
using std::numbers::pi;

namespace {

Complex minus_i_power(int k) {
    Complex z{1.0, 0.0};
    for (int i = 0; i < k; ++i) z *= Complex{0.0, -1.0};
    return z;
}

std::pair<Complex, Complex> random_amplitudes(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double theta = 0.5 * pi * u(rng);
    return {std::cos(theta), std::polar(std::sin(theta), 2 * pi * u(rng))};
}

}  // namespace

TEST_CASE("three-qubit chain after the first step") {
    for (double alpha : {1.0, 2.0, 3.0}) {
        const Complex a{0.6, 0.0}, b{0.8, 0.0};
        const PulseProgram program = build_ghz_program(LatticeSpec::chain(3, alpha), ScheduleMode::greedy);
        REQUIRE(program.steps().size() == 2);
        const auto& first = std::get<ControlledXStep>(program.steps()[0]);
        CHECK(first.duration == doctest::Approx(pi / 2));

        PureState s(3);
        s.amplitudes()[0] = a;
        s.amplitudes()[4] = b;
        evolve_controlled_x(s, first.terms, first.duration);
        const double phi = pi / std::pow(2.0, alpha + 1);
        const Complex mi{0.0, -1.0};
        CHECK(std::abs(s.amplitude(0b000) - a) < 1e-9);
        CHECK(std::abs(s.amplitude(0b110) - mi * b * std::cos(phi)) < 1e-9);
        CHECK(std::abs(s.amplitude(0b111) - mi * b * mi * std::sin(phi)) < 1e-9);
    }
}

TEST_CASE("three-qubit GHZ carries a minus sign") {
    for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
        for (double alpha : {1.0, 2.0, 3.0}) {
            const Complex a{0.6, 0.0}, b{0.8, 0.0};
            const auto rep = run_protocol(LatticeSpec::chain(3, alpha), a, b, mode, ProtocolPhase::ghz_only);
            CHECK(std::abs(rep.final_state.amplitude(0) - a) < 1e-9);
            CHECK(std::abs(rep.final_state.amplitude(7) + b) < 1e-9);
            CHECK(rep.fidelity >= 1 - 1e-9);
        }
    }
}

TEST_CASE("three-qubit transfer lands on the far end") {
    std::mt19937_64 rng(42);
    for (double alpha : {1.0, 2.0, 3.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto [a, b] = random_amplitudes(rng);
            const auto rep = run_protocol(LatticeSpec::chain(3, alpha), a, b, ScheduleMode::greedy, ProtocolPhase::full_transfer);
            CHECK(rep.fidelity >= 1 - 1e-9);
            CHECK(std::abs(rep.final_state.amplitude(0) - a) < 1e-9);
            CHECK(std::abs(rep.final_state.amplitude(1) - b) < 1e-9);
        }
    }
}

TEST_CASE("GHZ branch phase is (-i)^(N-1)") {
    for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
        for (int n = 2; n <= 10; ++n) {
            const auto rep = run_protocol(LatticeSpec::chain(n, 2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), mode,
                                          ProtocolPhase::ghz_only);
            CHECK(std::abs(rep.ghz_phase - minus_i_power(n - 1)) < 1e-9);
        }
        for (int L : {2, 3}) {
            const auto rep = run_protocol(LatticeSpec::cube(2, L, 3.0), 0.6, 0.8, mode, ProtocolPhase::ghz_only);
            CHECK(std::abs(rep.ghz_phase - minus_i_power(L * L - 1)) < 1e-9);
            CHECK(rep.fidelity >= 1 - 1e-9);
        }
    }
}

TEST_CASE("GHZ build agrees with a dense matrix-exponential run") {
    for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
        for (const auto& lattice : {LatticeSpec::chain(4, 1.5), LatticeSpec::chain(6, 3.0), LatticeSpec::cube(2, 2, 2.0)}) {
            const PulseProgram program = build_ghz_program(lattice, mode);
            const int n = program.qubit_count();
            const oracle::Mat U = oracle::program_unitary(program);
            const Eigen::Index src = Eigen::Index{1} << (n - 1);
            const oracle::Vec out = U.col(src);
            CHECK(std::abs(out(U.rows() - 1) - minus_i_power(n - 1)) < 1e-9);
            CHECK(std::abs(U.col(0)(0) - Complex{1.0, 0.0}) < 1e-12);
        }
    }
}

TEST_CASE("full transfer across two-dimensional lattices") {
    std::mt19937_64 rng(8);
    for (auto mode : {ScheduleMode::greedy, ScheduleMode::hypercube}) {
        for (double alpha : {1.0, 3.0}) {
            for (const auto& lattice : {LatticeSpec::cube(2, 3, alpha), LatticeSpec::chain(7, alpha)}) {
                const auto [a, b] = random_amplitudes(rng);
                const auto rep = run_protocol(lattice, a, b, mode, ProtocolPhase::full_transfer);
                CHECK(rep.fidelity >= 1 - 1e-9);
                CHECK(rep.final_state.norm() == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(rep.elapsed > 0.0);
            }
        }
    }
}

TEST_CASE("greedy transfer from an interior source") {
    LatticeSpec lattice = LatticeSpec::cube(2, 3, 2.0);
    lattice.source = {1, 1};
    const auto rep = run_protocol(lattice, 0.6, Complex{0.0, 0.8}, ScheduleMode::greedy, ProtocolPhase::full_transfer);
    CHECK(rep.fidelity >= 1 - 1e-9);
    CHECK_THROWS_AS(run_protocol(lattice, 0.6, 0.8, ScheduleMode::hypercube, ProtocolPhase::ghz_only), InvalidArgument);
}

TEST_CASE("protocol input checks") {
    CHECK_THROWS_AS(run_protocol(LatticeSpec::chain(3, 3.0), 0.6, 0.6, ScheduleMode::greedy, ProtocolPhase::ghz_only),
                    InvalidArgument);
    CHECK_THROWS_AS(run_protocol(LatticeSpec::chain(25, 3.0), 1.0, 0.0, ScheduleMode::greedy, ProtocolPhase::ghz_only),
                    InvalidArgument);
    CHECK(parse_protocol_phase("full_transfer") == ProtocolPhase::full_transfer);
    CHECK_THROWS_AS(parse_protocol_phase("teleport"), InvalidArgument);
}

TEST_CASE("transfer elapsed time is twice the solved build time") {
    const LatticeSpec lattice = LatticeSpec::chain(8, 2.5);
    const PulseProgram program = build_transfer_program(lattice, ScheduleMode::hypercube, ProtocolPhase::full_transfer);
    CHECK(program.elapsed() == doctest::Approx(total_transfer_time(7, 1, 2.5).transfer).epsilon(1e-10));
}
