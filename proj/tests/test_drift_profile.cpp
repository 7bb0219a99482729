#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>
#include <numbers>

#include "liftoff/drift_profile.hpp"
#include "liftoff/errors.hpp"

using namespace liftoff;

TEST_CASE("zero profile vanishes everywhere") {
    const auto p = DriftProfile::zero();
    CHECK(eval_psi(p, 7.3) == 0.0);
    CHECK(p.cumulative(12.0) == 0.0);
}

TEST_CASE("power law evaluates its formula beyond the ramp") {
    const auto p = DriftProfile::power_law(3.0, -1.0, 1.0);
    CHECK(eval_psi(p, 2.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(eval_psi(p, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(eval_psi(p, 10.0) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("log-corrected profile at r = e^2") {
    const auto p = DriftProfile::log_corrected(2, 2.0, std::numbers::e);
    // (1/r)(n + alpha/log r) = (2 + 1) / e^2
    CHECK(eval_psi(p, std::exp(2.0)) == doctest::Approx(0.4060058497098381).epsilon(1e-14));
}

TEST_CASE("every variant vanishes at the origin") {
    const DriftProfile profiles[] = {
        DriftProfile::zero(),
        DriftProfile::linear(),
        DriftProfile::power_law(3.0, -1.0, 1.0),
        DriftProfile::power_law(-2.0, 0.5, 0.7),
        DriftProfile::power_law(5.0, -2.0, 2.0),
        DriftProfile::log_corrected(3, 0.5, 2.5),
        DriftProfile::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}),
    };
    for (const auto& p : profiles) {
        CAPTURE(p.describe());
        CHECK(p(0.0) == 0.0);
        CHECK(p.cumulative(0.0) == 0.0);
    }
}

TEST_CASE("ramp joins the far field with matching value and slope") {
    const DriftProfile profiles[] = {
        DriftProfile::power_law(3.0, -1.0, 1.0),
        DriftProfile::power_law(1.0, 0.0, 1.5),
        DriftProfile::power_law(5.0, -2.0, 2.0),
        DriftProfile::power_law(2.0, 1.5, 0.5),
        DriftProfile::log_corrected(2, 2.0, std::numbers::e),
        DriftProfile::log_corrected(2, -0.5, 3.0),
    };
    for (const auto& p : profiles) {
        CAPTURE(p.describe());
        const double r0 = p.ramp_radius();
        const double eps = 1e-7;
        const double left = p(r0 - eps), right = p(r0 + eps);
        CHECK(std::abs(left - right) < 1e-6 * (1.0 + std::abs(p(r0))));
        const double slope_left = (p(r0 - eps) - p(r0 - 2 * eps)) / eps;
        const double slope_right = (p(r0 + 2 * eps) - p(r0 + eps)) / eps;
        CHECK(slope_left == doctest::Approx(slope_right).epsilon(1e-4));
        // Ramp starts flat at the origin.
        CHECK(std::abs(p.derivative(0.0)) == 0.0);
    }
}

TEST_CASE("analytic derivative matches central differences") {
    const DriftProfile profiles[] = {
        DriftProfile::power_law(3.0, -1.0, 1.0),
        DriftProfile::log_corrected(2, 2.0, std::numbers::e),
        DriftProfile::linear(),
    };
    for (const auto& p : profiles) {
        for (double r : {0.3, 0.9, 1.7, 4.0, 11.0}) {
            const double fd = (p(r + 1e-6) - p(r - 1e-6)) / 2e-6;
            CHECK(p.derivative(r) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("closed-form cumulative integral matches composite Simpson") {
    const DriftProfile profiles[] = {
        DriftProfile::power_law(3.0, -1.0, 1.0),
        DriftProfile::power_law(1.0, 0.5, 2.0),
        DriftProfile::power_law(5.0, -2.0, 2.0),
        DriftProfile::log_corrected(2, 2.0, std::numbers::e),
        DriftProfile::linear(),
        DriftProfile::tabulated({0.0, 1.0, 2.5, 4.0}, {0.0, 2.0, -1.0, 0.5}),
    };
    auto simpson = [](const DriftProfile& p, double b) {
        // Split at the ramp radius and the tabulated knots so each piece is smooth.
        auto piece = [&](double lo, double hi) {
            const int m = 20000;
            const double h = (hi - lo) / m;
            double acc = p(lo) + p(hi);
            for (int i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * p(lo + i * h);
            return acc * h / 3.0;
        };
        std::vector<double> cuts{0.0, p.ramp_radius()};
        if (auto* t = std::get_if<Tabulated>(&p.variant()))
            cuts.insert(cuts.end(), t->radii.begin(), t->radii.end());
        cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size() && cuts[i] < b; ++i)
            acc += piece(cuts[i], std::min(cuts[i + 1], b));
        return acc;
    };
    for (const auto& p : profiles) {
        CAPTURE(p.describe());
        for (double r : {0.5, 1.0, 3.0, 4.0}) {
            CAPTURE(r);
            CHECK(p.cumulative(r) == doctest::Approx(simpson(p, r)).epsilon(1e-8));
        }
    }
}

TEST_CASE("tabulated profile interpolates and rejects out-of-range queries") {
    const auto p = DriftProfile::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, 1.0});
    CHECK(p(0.5) == doctest::Approx(1.0));
    CHECK(p(2.0) == doctest::Approx(1.5));
    CHECK(p(3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(p(3.5), OutOfRangeError);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(DriftProfile::power_law(1.0, -1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(DriftProfile::log_corrected(2, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(DriftProfile::tabulated({0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(DriftProfile::tabulated({0.0, 1.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(DriftProfile::tabulated({0.5, 1.0}, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(DriftProfile::linear()(-1.0), DomainError);
}

TEST_CASE("sign predicates") {
    CHECK(DriftProfile::power_law(3.0, -1.0).nonnegative());
    CHECK(DriftProfile::power_law(-3.0, -1.0).nonpositive());
    CHECK_FALSE(DriftProfile::log_corrected(2, -1.9, 1.5).nonnegative());
    CHECK(DriftProfile::log_corrected(2, 2.0).nonnegative());
    CHECK(DriftProfile::zero().nonnegative());
    CHECK(DriftProfile::zero().nonpositive());
}
