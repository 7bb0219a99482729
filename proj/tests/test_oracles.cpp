#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liftoff/errors.hpp"
#include "liftoff/oracles.hpp"
#include "liftoff/weights.hpp"

using namespace liftoff;

TEST_CASE("heat solution") {
    const GaussianData g{1.0, 2};
    CHECK(heat_solution(g, 1.3, 0.0) == doctest::Approx(std::exp(-1.69 / 4.0)).epsilon(1e-15));
    CHECK(heat_solution(g, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(heat_solution(g, 60.0, 1.0) < 1e-150);
    CHECK_THROWS_AS(heat_solution(g, 0.0, -1.0), DomainError);
}

TEST_CASE("heat solution matches heat-kernel convolution at the origin") {
    // w(0, s) = int (4 pi s)^{-n/2} e^{-|y|^2/(4s)} u0(y) dy, radial trapezoid.
    for (int n : {1, 2, 3}) {
        for (double s : {0.25, 1.0, 3.0}) {
            const GaussianData g{0.8, n};
            const double R = 60.0;
            const int m = 200000;
            const double h = R / m;
            double acc = 0.0;
            for (int i = 0; i <= m; ++i) {
                const double r = i * h;
                const double f = std::exp(-r * r / (4.0 * s)) * g(r) * std::pow(r, n - 1);
                acc += (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
            }
            acc /= 3.0;
            const double conv = sphere_area(n) * acc * h / std::pow(4.0 * std::numbers::pi * s, 0.5 * n);
            CHECK(heat_solution(g, 0.0, s) == doctest::Approx(conv).epsilon(1e-9));
        }
    }
}

TEST_CASE("heat semigroup: flowing s1 then s2 equals flowing s1 + s2") {
    const GaussianData g{0.7, 3};
    const double s1 = 0.4, s2 = 1.1;
    // After time s1 the profile is a scaled Gaussian with sigma + s1.
    const GaussianData g1{g.sigma + s1, 3};
    const double amp = heat_solution(g, 0.0, s1);
    for (double r : {0.0, 0.5, 2.0, 5.0})
        CHECK(heat_solution(g, r, s1 + s2) == doctest::Approx(amp * heat_solution(g1, r, s2)).epsilon(1e-13));
}

TEST_CASE("OU solution at t = 0") {
    const GaussianData g{1.0, 2};
    for (double r : {0.0, 1.0, 3.0}) {
        CHECK(ou_solution(g, r, 0.0) == doctest::Approx(g(r)).epsilon(1e-15));
        CHECK(ou_solution(g, r, 0.0, 0.5) == doctest::Approx(heat_solution(g, r, 0.5)).epsilon(1e-15));
    }
}

TEST_CASE("OU solution limit and convergence rate") {
    const GaussianData g{1.0, 2};
    CHECK(ou_limit(g) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(ou_limit(g, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double r : {0.0, 1.0, 5.0}) CHECK(ou_solution(g, r, 40.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    for (double t : {4.0, 5.0, 8.0}) CHECK(std::abs(ou_solution(g, 0.0, t) - 2.0 / 3.0) < 1e-3);
}

TEST_CASE("OU solution is radially non-increasing") {
    const GaussianData g{0.6, 3};
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
        double prev = ou_solution(g, 0.0, t);
        for (double r = 0.05; r < 30.0; r += 0.05) {
            const double v = ou_solution(g, r, t);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("OU solution satisfies u_t = u_rr + ((n-1)/r - r) u_r") {
    const GaussianData g{1.0, 2};
    const double n = 2.0;
    for (double offset : {0.0, 0.5}) {
        auto u = [&](double r, double t) { return ou_solution(g, r, t, offset); };
        auto residual = [&](double h) {
            double worst = 0.0;
            for (double t : {0.2, 1.0, 2.5}) {
                for (double r = 0.5; r <= 8.0; r += 0.5) {
                    const double ut = (u(r, t + h) - u(r, t - h)) / (2 * h);
                    const double ur = (u(r + h, t) - u(r - h, t)) / (2 * h);
                    const double urr = (u(r + h, t) - 2 * u(r, t) + u(r - h, t)) / (h * h);
                    worst = std::max(worst, std::abs(ut - urr - ((n - 1) / r - r) * ur));
                }
            }
            return worst;
        };
        const double e1 = residual(2e-2), e2 = residual(1e-2);
        CHECK(e1 < 1e-3);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("mass growth check") {
    const RadialGrid grid(30.0, 1501, 2);
    const GaussianData g{1.0, 2};
    SUBCASE("single snapshot") {
        const auto traj = solve(g.sample(grid), DriftProfile::linear(), SolverConfig{}, 0.0);
        const auto rows = mass_growth_check(traj);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].mass == rows[0].predicted);
    }
    SUBCASE("zero data") {
        SolverConfig cfg;
        cfg.dt = 0.01;
        cfg.snapshot_stride = 10;
        const auto traj = solve(RadialField(grid, 0.0), DriftProfile::linear(), cfg, 0.5);
        for (const auto& row : mass_growth_check(traj)) {
            CHECK(row.mass == 0.0);
            CHECK(row.predicted == 0.0);
        }
    }
    SUBCASE("exponential growth before the boundary matters") {
        SolverConfig cfg;
        cfg.dt = 2e-3;
        cfg.snapshot_stride = 25;
        const auto traj = solve(g.sample(grid), DriftProfile::linear(), cfg, 1.5);
        for (const auto& row : mass_growth_check(traj))
            CHECK(row.mass == doctest::Approx(row.predicted).epsilon(0.02));
    }
    SUBCASE("requires the linear profile") {
        const auto traj = solve(g.sample(grid), DriftProfile::zero(), SolverConfig{}, 0.0);
        CHECK_THROWS_AS(mass_growth_check(traj), PreconditionError);
    }
}
