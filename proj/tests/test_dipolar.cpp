#include <doctest.h>

#include <cmath>
#include <random>

#include "lrqt/dipolar.hpp"
#include "lrqt/error.hpp"

using namespace lrqt;

TEST_CASE("dipole coupling along and across the field") {
    CHECK(dipole_coupling({0.0, 0.0, 1.0}) == doctest::Approx(-2.0));
    CHECK(dipole_coupling({1.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(dipole_coupling({0.0, 0.0, 2.0}) == doctest::Approx(-0.25));
    const double magic = std::acos(1.0 / std::sqrt(3.0));
    CHECK(std::abs(dipole_coupling({std::sin(magic), 0.0, std::cos(magic)})) < 1e-15);
    CHECK_THROWS_AS(dipole_coupling({0.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(DipoleCoupling({0.0, 0.0, 0.0}), InvalidArgument);

    const DipoleCoupling tilted({1.0, 0.0, 0.0});
    CHECK(tilted({3.0, 0.0, 0.0}) == doctest::Approx(-2.0 / 27));
    CHECK(tilted.with_exponent({0.0, 2.0, 0.0}, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("interaction is scale invariant") {
    const ControlPrism prism = ControlPrism::anchored(1.0, 1.5, 0.8, 0.0);
    const Point3 target{-0.7, 0.2, -0.1};
    const double base = prism_interaction(prism, target, 1e-11);
    for (double lam : {0.5, 2.0, 10.0}) {
        const Point3 t{lam * target[0], lam * target[1], lam * target[2]};
        CHECK(prism_interaction(prism.scaled(lam), t, 1e-11) == doctest::Approx(base).epsilon(1e-8));
    }
}

TEST_CASE("far field looks like a point dipole") {
    const ControlPrism prism = ControlPrism::anchored(1.0, 1.0, 1.0, 0.0);
    const double R = 50.0;
    const Point3 target{0.5, 0.0, -R};
    const double v = prism_interaction(prism, target, 1e-14);
    CHECK(v == doctest::Approx(-2.0 / (R * R * R)).epsilon(0.01));
}

TEST_CASE("cubature agrees with Monte Carlo sampling") {
    const ControlPrism cube{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
    const Point3 target{-3.0, 0.0, 0.0};
    const double exact = prism_interaction(cube, target, 1e-12);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int samples = 10'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = dipole_coupling({u(rng) - target[0], u(rng) - target[1], u(rng) - target[2]});
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / samples;
    const double stderr_mean = std::sqrt((sum2 / samples - mean * mean) / samples);
    CHECK(std::abs(mean - exact) <= 3 * stderr_mean);
}

TEST_CASE("continuum sum tracks the lattice sum for a large block") {
    const ControlPrism block{{0.0, -5.0, -5.0}, {10.0, 10.0, 10.0}};
    const Point3 target{-20.0, 0.0, 0.0};
    const double lattice = prism_lattice_sum(block, target);
    // The lattice has 11^3 sites where the continuum has volume 10^3.
    const double continuum = prism_interaction(block, target, 1e-12) * std::pow(11.0 / 10.0, 3);
    CHECK(lattice == doctest::Approx(continuum).epsilon(0.1));
}

TEST_CASE("targets inside the prism are rejected") {
    const ControlPrism cube{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_WITH_AS(prism_interaction(cube, {0.5, 0.5, 0.5}, 1e-8), "integrand singular inside region",
                         InvalidArgument);
    CHECK_THROWS_AS(prism_interaction(cube, {1.0, 0.5, 0.5}, 1e-8), InvalidArgument);
    CHECK_THROWS_AS(prism_interaction(cube, {2.0, 0.5, 0.5}, 0.0), InvalidArgument);
    const ControlPrism flat{{0.0, 0.0, 0.0}, {1.0, 0.0, 1.0}};
    CHECK_THROWS_AS(prism_interaction(flat, {2.0, 0.5, 0.5}, 1e-8), InvalidArgument);
}

TEST_CASE("dV/dx is negative in front of the face") {
    const ControlPrism shapes[] = {ControlPrism::anchored(1.0, 1.0, 1.0), ControlPrism::anchored(2.0, 1.0, 3.0),
                                   ControlPrism::anchored(0.5, 4.0, 1.0)};
    for (const auto& prism : shapes) {
        const double ly = prism.extent[1], lz = prism.extent[2];
        for (int i = 1; i <= 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                for (int k = 0; k < 10; ++k) {
                    const Point3 p{0.3 * i, (j - 4.5) / 10.0 * ly, (k - 4.5) / 10.0 * lz};
                    CHECK(dVdx_analytic(prism, p) < 0.0);
                }
            }
        }
    }
}

TEST_CASE("dV/dx matches a finite difference of the integral") {
    const ControlPrism shapes[] = {ControlPrism::anchored(1.0, 1.0, 1.0), ControlPrism::anchored(2.0, 1.0, 3.0)};
    const Point3 points[] = {{1.0, 0.1, 0.2}, {0.4, -0.3, 0.0}, {2.5, 0.0, -0.4}};
    const double h = 1e-4;
    for (const auto& prism : shapes) {
        for (const auto& p : points) {
            const double up = face_frame_interaction(prism, {p[0] + h, p[1], p[2]}, 1e-12);
            const double down = face_frame_interaction(prism, {p[0] - h, p[1], p[2]}, 1e-12);
            const double fd = (up - down) / (2 * h);
            const double exact = dVdx_analytic(prism, p);
            CHECK(std::abs(fd - exact) <= 1e-4 * std::abs(exact));
        }
    }
}

TEST_CASE("dV/dx is even in the lateral offset") {
    const ControlPrism prism = ControlPrism::anchored(1.0, 2.0, 1.0);
    CHECK(dVdx_analytic(prism, {0.7, 0.3, 0.1}) == doctest::Approx(dVdx_analytic(prism, {0.7, -0.3, 0.1})).epsilon(1e-13));
    CHECK(dVdx_analytic(prism, {0.7, 0.3, 0.1}) == doctest::Approx(dVdx_analytic(prism, {0.7, 0.3, -0.1})).epsilon(1e-13));
    CHECK_THROWS_WITH_AS(dVdx_analytic(prism, {-0.1, 0.0, 0.0}), "monotonicity region violated", InvalidArgument);
    CHECK_THROWS_AS(dVdx_analytic(prism, {0.5, 1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(dVdx_analytic(prism, {0.5, 0.0, 0.6}), InvalidArgument);
}

TEST_CASE("dipolar dilation steps take constant time") {
    DilationPlan plan;
    plan.steps = 5;
    const SlabSampling sampling{8, 3, 4};
    const DilationPlan done = dilation_schedule(plan, 1e-8, sampling);
    const auto times = done.per_step_times();
    REQUIRE(times.size() == 5);
    for (double t : times) CHECK(t == doctest::Approx(times[0]).epsilon(1e-6));
    CHECK(done.total_time == doctest::Approx(5 * times[0]).epsilon(1e-6));
    for (const auto& step : done.schedule) {
        CHECK(step.substep_times.size() == 3);
        for (double v : step.min_coupling) CHECK(v > 0.0);
    }
}

TEST_CASE("isotropic kernel step times grow as lambda^(alpha-d)") {
    for (int d : {1, 2, 3}) {
        for (double alpha : {d + 0.5, d + 1.0, d + 2.0}) {
            DilationPlan plan;
            plan.steps = 4;
            plan.d = d;
            plan.alpha = alpha;
            plan.kernel = DilationKernel::isotropic;
            const auto times = dilation_schedule(plan, 1e-8, SlabSampling{8, 3, 4}).per_step_times();
            for (std::size_t n = 1; n < times.size(); ++n) {
                const double predicted = std::pow(2.0, n * (alpha - d));
                CHECK(times[n] / times[0] == doctest::Approx(predicted).epsilon(0.05));
            }
        }
    }
}

TEST_CASE("isotropic kernel with slow decay speeds up") {
    DilationPlan plan;
    plan.steps = 4;
    plan.d = 2;
    plan.alpha = 1.0;
    plan.kernel = DilationKernel::isotropic;
    const auto times = dilation_schedule(plan, 1e-8, SlabSampling{8, 3, 4}).per_step_times();
    for (std::size_t n = 1; n < times.size(); ++n) CHECK(times[n] < times[n - 1]);
    double total = 0.0;
    for (double t : times) total += t;
    CHECK(total < 2 * times[0]);
}

TEST_CASE("dilation plan validation") {
    DilationPlan plan;
    plan.d = 2;
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
    plan = DilationPlan{};
    plan.factor = 1.0;
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
    plan = DilationPlan{};
    plan.steps = 0;
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
    CHECK_THROWS_AS(dilation_schedule(DilationPlan{}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(dilation_schedule(DilationPlan{}, 1e-8, SlabSampling{1, 3, 4}), InvalidArgument);
}
