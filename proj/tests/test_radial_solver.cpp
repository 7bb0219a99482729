#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "liftoff/errors.hpp"
#include "liftoff/radial_solver.hpp"

using namespace liftoff;

namespace {

std::vector<DriftProfile> all_families() {
    return {
        DriftProfile::zero(),
        DriftProfile::linear(),
        DriftProfile::power_law(3.0, -1.0, 1.0),
        DriftProfile::power_law(1.0, -1.0, 1.0),
        DriftProfile::log_corrected(2, 2.0),
        DriftProfile::tabulated({0.0, 2.0, 5.0, 50.0}, {0.0, 1.5, -0.5, 0.2}),
    };
}

// Non-increasing, non-negative random profile with values in [0, 1].
RadialField random_monotone(const RadialGrid& grid, std::mt19937& rng) {
    std::uniform_real_distribution<double> step(0.0, 1.0);
    std::vector<double> v(grid.size());
    double acc = 0.0;
    for (std::size_t i = grid.size(); i-- > 0;) {
        acc += step(rng) * (i < grid.size() / 3 ? 1.0 : 0.05);
        v[i] = acc;
    }
    for (double& x : v) x /= acc;
    return RadialField(grid, std::move(v));
}

RadialField random_field(const RadialGrid& grid, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 2.0);
    std::vector<double> v(grid.size());
    for (double& x : v) x = d(rng);
    return RadialField(grid, std::move(v));
}

// Independent closed form for the heat flow of exp(-r^2/(4 sigma)) in R^n.
double gaussian_heat(double r, double t, double sigma, int n) {
    return std::pow(sigma / (sigma + t), 0.5 * n) * std::exp(-r * r / (4.0 * (sigma + t)));
}

double max_heat_error(std::size_t nodes, double dt, double t_end) {
    const RadialGrid grid(20.0, nodes, 2);
    const auto u0 = RadialField::sample(grid, [](double r) { return gaussian_heat(r, 0.0, 1.0, 2); });
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.snapshot_stride = 1000000;
    const auto traj = solve(u0, DriftProfile::zero(), cfg, t_end);
    const auto& u = traj.back().field;
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.radius(i) <= 16.0)
            err = std::max(err, std::abs(u[i] - gaussian_heat(grid.radius(i), t_end, 1.0, 2)));
    return err;
}

}  // namespace

TEST_CASE("grid spacing and end points") {
    const RadialGrid g(10.0, 101, 3);
    CHECK(g.radius(0) == 0.0);
    CHECK(g.radius(100) == 10.0);
    CHECK(g.spacing() == doctest::Approx(0.1));
    CHECK_THROWS_AS(RadialGrid(10.0, 2, 2), ValidationError);
    CHECK_THROWS_AS(RadialGrid(-1.0, 10, 2), ValidationError);
    CHECK_THROWS_AS(RadialField(g, std::vector<double>(5, 0.0)), ValidationError);
}

TEST_CASE("constant fields have zero right-hand side for every profile and boundary") {
    const RadialGrid grid(30.0, 301, 2);
    for (const auto& p : all_families()) {
        for (auto bc : {OuterBoundary::DirichletFrozen, OuterBoundary::NeumannZero}) {
            for (auto adv : {Advection::Centered, Advection::Upwind}) {
                const auto rhs = radial_rhs(RadialField(grid, 2.5), p, bc, adv);
                for (double v : rhs.values()) CHECK(v == 0.0);
            }
        }
    }
}

TEST_CASE("radial Laplacian of r^2 is 2n") {
    SUBCASE("n = 3, interior nodes") {
        const RadialGrid grid(5.0, 51, 3);
        const auto u = RadialField::sample(grid, [](double r) { return r * r; });
        const auto rhs = radial_rhs(u, DriftProfile::zero());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            CHECK(rhs[i] == doctest::Approx(6.0).epsilon(1e-10));
    }
    SUBCASE("n = 2, origin limit") {
        const RadialGrid grid(5.0, 51, 2);
        const auto u = RadialField::sample(grid, [](double r) { return r * r; });
        CHECK(radial_rhs(u, DriftProfile::zero())[0] == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("drift term enters with -psi u_r") {
    // u = r, n = 1: u_rr = 0, u_r = 1, so L u = -psi(r) at interior nodes.
    const RadialGrid grid(4.0, 41, 1);
    const auto u = RadialField::sample(grid, [](double r) { return r; });
    const auto p = DriftProfile::power_law(2.0, 0.5, 1.0);
    const auto rhs = radial_rhs(u, p);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        CHECK(rhs[i] == doctest::Approx(-p(grid.radius(i))).epsilon(1e-10));
}

TEST_CASE("upwind operator has non-negative off-diagonals; centered may not") {
    const RadialGrid grid(40.0, 201, 2);
    for (const auto& p : all_families()) {
        CAPTURE(p.describe());
        const RadialOperator op(grid, p, OuterBoundary::DirichletFrozen, Advection::Upwind);
        CHECK(op.off_diagonals_nonnegative());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& m = op.matrix();
            CHECK(m.lower[i] + m.diag[i] + m.upper[i] == doctest::Approx(0.0));
        }
    }
    // Linear drift with cell Peclet number psi h / 2 > 1 near r_max.
    const RadialOperator centered(grid, DriftProfile::linear(), OuterBoundary::DirichletFrozen,
                                  Advection::Centered);
    CHECK_FALSE(centered.off_diagonals_nonnegative());
}

TEST_CASE("step preserves constants") {
    const RadialGrid grid(20.0, 401, 3);
    for (const auto& p : all_families()) {
        for (double theta : {0.0, 0.5, 1.0}) {
            for (auto adv : {Advection::Centered, Advection::Upwind}) {
                for (auto bc : {OuterBoundary::DirichletFrozen, OuterBoundary::NeumannZero}) {
                    SolverConfig cfg{1e-3, theta, bc, adv, 1};
                    const auto out = step(RadialField(grid, 1.0), p, cfg);
                    for (double v : out.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
                }
            }
        }
    }
}

TEST_CASE("backward Euler with upwinding obeys the discrete maximum principle") {
    std::mt19937 rng(7);
    const RadialGrid grid(30.0, 301, 2);
    for (const auto& p : all_families()) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto u = random_field(grid, rng);
            SolverConfig cfg{0.05, 1.0, OuterBoundary::NeumannZero, Advection::Upwind, 1};
            const auto out = step(u, p, cfg);
            const double tol = 1e-12 * std::max(std::abs(u.max()), std::abs(u.min()));
            CHECK(out.max() <= u.max() + tol);
            CHECK(out.min() >= u.min() - tol);
        }
    }
}

TEST_CASE("monotone non-negative data stay monotone and positive") {
    std::mt19937 rng(11);
    const RadialGrid grid(30.0, 301, 2);
    for (const auto& p : all_families()) {
        CAPTURE(p.describe());
        const auto u0 = random_monotone(grid, rng);
        SolverConfig cfg{0.02, 1.0, OuterBoundary::DirichletFrozen, Advection::Upwind, 10};
        const auto traj = solve(u0, p, cfg, 2.0);
        for (const auto& snap : traj.snapshots) {
            const auto& u = snap.field;
            for (std::size_t i = 0; i + 1 < u.size(); ++i) CHECK(u[i + 1] <= u[i] + 1e-10);
            CHECK(u.min() >= -1e-12);
            CHECK(u.center() > 0.0);
        }
    }
}

TEST_CASE("solve is linear in the initial datum") {
    std::mt19937 rng(3);
    const RadialGrid grid(20.0, 201, 2);
    const double a = 2.0, b = -0.75;
    for (const auto& p : all_families()) {
        const auto u0 = random_field(grid, rng);
        const auto v0 = random_field(grid, rng);
        SolverConfig cfg{0.01, 0.5, OuterBoundary::DirichletFrozen, Advection::Centered, 25};
        const auto tu = solve(u0, p, cfg, 1.0);
        const auto tv = solve(v0, p, cfg, 1.0);
        const auto tw = solve(a * u0 + b * v0, p, cfg, 1.0);
        REQUIRE(tw.size() == tu.size());
        for (std::size_t k = 0; k < tw.size(); ++k) {
            const auto expect = a * tu.snapshots[k].field + b * tv.snapshots[k].field;
            double scale = 0.0, diff = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                scale = std::max(scale, std::abs(expect[i]));
                diff = std::max(diff, std::abs(expect[i] - tw.snapshots[k].field[i]));
            }
            CHECK(diff <= 1e-12 * scale);
        }
    }
}

TEST_CASE("heat flow of a Gaussian converges at second order") {
    const double e1 = max_heat_error(201, 4e-3, 1.0);
    const double e2 = max_heat_error(401, 2e-3, 1.0);
    const double e3 = max_heat_error(801, 1e-3, 1.0);
    CHECK(e3 < 1e-4);
    CHECK(std::log2(e1 / e2) >= 1.9);
    CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("sup u decreases for the heat equation") {
    const RadialGrid grid(10.0, 201, 3);
    const auto u0 = RadialField::sample(grid, [](double r) { return r < 2.0 ? (2.0 - r) * (2.0 - r) : 0.0; });
    SolverConfig cfg{0.01, 1.0, OuterBoundary::DirichletFrozen, Advection::Upwind, 5};
    const auto traj = solve(u0, DriftProfile::zero(), cfg, 3.0);
    for (std::size_t k = 1; k < traj.size(); ++k)
        CHECK(traj.snapshots[k].field.max() < traj.snapshots[k - 1].field.max());
}

TEST_CASE("snapshot bookkeeping") {
    const RadialGrid grid(10.0, 101, 2);
    const RadialField u0(grid, 1.0);
    SolverConfig cfg;
    cfg.dt = 0.3;
    cfg.snapshot_stride = 2;

    SUBCASE("t_end = 0 gives the initial field only") {
        const auto traj = solve(u0, DriftProfile::linear(), cfg, 0.0);
        REQUIRE(traj.size() == 1);
        CHECK(traj.front().time == 0.0);
    }
    SUBCASE("last step is shortened to land on t_end") {
        const auto traj = solve(u0, DriftProfile::linear(), cfg, 1.0);
        const auto t = traj.times();
        CHECK(t == std::vector<double>{0.0, 0.6, 1.0});
    }
    SUBCASE("exact multiples do not add a sliver step") {
        cfg.dt = 0.1;
        cfg.snapshot_stride = 5;
        const auto traj = solve(u0, DriftProfile::linear(), cfg, 1.0);
        REQUIRE(traj.size() == 3);
        CHECK(traj.back().time == 1.0);
        CHECK(traj.snapshots[1].time == doctest::Approx(0.5));
    }
    SUBCASE("negative t_end is rejected") {
        CHECK_THROWS_AS(solve(u0, DriftProfile::zero(), cfg, -1.0), DomainError);
    }
}

TEST_CASE("divergence is reported with the failing step") {
    // Forward Euler far beyond its stability limit overflows within a few hundred steps.
    const RadialGrid grid(10.0, 101, 2);
    const auto u0 = RadialField::sample(grid, [](double r) { return std::exp(-r * r); });
    SolverConfig cfg{1.0, 0.0, OuterBoundary::DirichletFrozen, Advection::Centered, 1};
    try {
        solve(u0, DriftProfile::zero(), cfg, 1000.0);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(e.step() > 0);
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("singular tridiagonal systems are reported") {
    Tridiagonal a(3);
    a.diag = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(TridiagonalSolver{a}, SolverError);
}

TEST_CASE("invalid solver configurations are rejected") {
    const RadialGrid grid(10.0, 11, 2);
    const RadialField u(grid, 1.0);
    CHECK_THROWS_AS(step(u, DriftProfile::zero(), SolverConfig{0.0}), ValidationError);
    CHECK_THROWS_AS(step(u, DriftProfile::zero(), SolverConfig{0.1, 1.5}), ValidationError);
}
