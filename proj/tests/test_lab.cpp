#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "liftoff/errors.hpp"
#include "liftoff/lab.hpp"

using namespace liftoff;

namespace {

Scenario small(DriftProfile p, double t_end = 1.0) {
    Scenario s;
    s.name = "small";
    s.profile = std::move(p);
    s.grid = RadialGrid(20.0, 401, 2);
    s.initial = GaussianData{1.0, 2};
    s.solver = SolverConfig{1e-2, 1.0, OuterBoundary::DirichletFrozen, Advection::Upwind, 10};
    s.t_end = t_end;
    s.diag_radius = 16.0;
    return s;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("run reports discrepancy iff the verdict lifts off") {
    const auto up = run(small(DriftProfile::power_law(3.0, -1.0)));
    CHECK(up.classification.verdict == Verdict::LiftOff);
    REQUIRE(up.prediction.has_value());
    CHECK(up.discrepancy.has_value());
    CHECK(up.weight_part == WeightPart::Full);
    CHECK(up.check("weighted_mass_conserved") != nullptr);

    const auto down = run(small(DriftProfile::power_law(1.0, -1.0)));
    CHECK(down.classification.verdict == Verdict::Decay);
    CHECK_FALSE(down.prediction.has_value());
    CHECK_FALSE(down.discrepancy.has_value());
    CHECK(down.weight_part == WeightPart::Positive);
    CHECK(down.check("weighted_mass_nonincreasing") != nullptr);

    for (const auto* r : {&up, &down}) {
        CHECK(r->check("max_principle")->passed);
        CHECK(r->check("max_principle")->enforced);
        CHECK(r->check("positivity")->passed);
        CHECK(r->check("radial_monotonicity")->passed);
        CHECK(r->diagnostics.size() == r->trajectory.size());
    }
}

TEST_CASE("linear profile run carries the oracle error") {
    auto s = small(DriftProfile::linear(), 3.0);
    s.solver = SolverConfig{1e-2, 0.5, OuterBoundary::DirichletFrozen, Advection::Centered, 10};
    const auto r = run(s);
    REQUIRE(r.oracle_error.has_value());
    CHECK(*r.oracle_error < 1e-3);
    CHECK_FALSE(r.check("max_principle")->enforced);
    CHECK(r.prediction->level == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("decay mismatch is flagged, not hidden") {
    // Far too short for sup u to fall below 10%.
    const auto r = run(small(DriftProfile::power_law(1.0, -1.0), 0.5));
    const auto* c = r.check("verdict_behavior");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->passed);
    CHECK_FALSE(r.all_passed());
}

TEST_CASE("outputs are bit-identical across repeated runs") {
    const auto s = small(DriftProfile::power_law(3.0, -1.0));
    const auto dir = std::filesystem::temp_directory_path() / "liftoff_lab_test";
    std::filesystem::remove_all(dir);
    write_outputs(run(s), s, (dir / "a").string());
    write_outputs(run(s), s, (dir / "b").string());
    for (const char* f : {"frames.csv", "diagnostics.csv"}) {
        const auto a = slurp(dir / "a" / f);
        CHECK(a.size() > 100);
        CHECK(a == slurp(dir / "b" / f));
    }
    const auto frames = slurp(dir / "a" / "frames.csv");
    CHECK(frames.rfind("t,r,u\n", 0) == 0);
    CHECK(slurp(dir / "a" / "diagnostics.csv").rfind("t,I_R,sup_u,center_u,mass\n", 0) == 0);
    // 17 significant digits.
    CHECK(frames.find("0.050000000000000003") != std::string::npos);
    const auto json = slurp(dir / "a" / "report.json");
    for (const char* key : {"\"verdict\"", "\"L\"", "\"phi_mass\"", "\"h_pred\"", "\"h_obs\"", "\"invariants\"", "\"timings\""})
        CHECK(json.find(key) != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep rows do not depend on thread count") {
    const auto base = small(DriftProfile::power_law(3.0, -1.0), 0.5);
    const std::vector<double> values{3.0, 1.0, 2.0, -1.0};
    const auto serial = sweep(base, "A", values, {1, false});
    const auto parallel = sweep(base, "A", values, {4, false});
    REQUIRE(serial.size() == values.size());
    CHECK(sweep_summary_csv(serial) == sweep_summary_csv(parallel));
    CHECK(serial[0].report->classification.verdict == Verdict::LiftOff);
    CHECK(serial[1].report->classification.verdict == Verdict::Decay);
    CHECK(serial[2].report->classification.verdict == Verdict::CriticalDecay);
    for (std::size_t i = 0; i < values.size(); ++i) {
        REQUIRE(parallel[i].report.has_value());
        CHECK(parallel[i].report->final_center == serial[i].report->final_center);
    }
}

TEST_CASE("sweep records per-row failures and continues") {
    const auto base = small(DriftProfile::power_law(3.0, -1.0), 0.2);
    const auto rows = sweep(base, "num_nodes", {101, 2, 201}, {2, false});
    CHECK(rows[0].report.has_value());
    CHECK_FALSE(rows[1].report.has_value());
    CHECK(rows[1].error.find("num_nodes") != std::string::npos);
    CHECK(rows[2].report.has_value());
    CHECK_THROWS_AS(sweep(base, "colour", {1.0}), ValidationError);
    const auto alpha = sweep(base, "alpha", {2.0});
    CHECK(alpha[0].error.find("profile.alpha") != std::string::npos);
}

TEST_CASE("with_parameter keeps the scenario consistent") {
    const auto base = small(DriftProfile::log_corrected(2, 2.0));
    CHECK(std::get<LogCorrected>(with_parameter(base, "alpha", 0.5).profile.variant()).alpha == 0.5);
    const auto n3 = with_parameter(base, "n_dim", 3);
    CHECK(n3.grid.dimension() == 3);
    CHECK(std::get<GaussianData>(n3.initial).n_dim == 3);
    CHECK(with_parameter(base, "r_max", 10).diag_radius == doctest::Approx(8.0));
    CHECK(with_parameter(base, "dt", 0.5).solver.dt == 0.5);
    CHECK(with_parameter(base, "sigma", 2).name == "small[sigma=2]");
    CHECK_THROWS_AS(with_parameter(base, "n_dim", 1.5), ValidationError);
    CHECK_THROWS_AS(with_parameter(base, "A", 1.0), ValidationError);
}

TEST_CASE("verify suites") {
    CHECK(suite_criteria("critical") == std::vector<int>{6, 7});
    CHECK(suite_criteria("all").size() == kCriterionCount);
    CHECK_THROWS_WITH_AS(verify("unknown"), doctest::Contains("valid suites: oracle"), ValidationError);
    const auto r = verify("critical", 2);
    CHECK(r.passed());
    REQUIRE(r.criteria.size() == 2);
    CHECK(r.criteria[0].id == 6);
    CHECK(verify_json(r).find("\"suite\": \"critical\"") != std::string::npos);
    CHECK_THROWS_AS(run_criterion(11), DomainError);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
    CHECK_THROWS_AS(parallel_for(5, 3, [](std::size_t i) { if (i == 2) throw Error("boom"); }), Error);
}

TEST_CASE("shipped scenarios: verdict matches observed behaviour") {
    const std::filesystem::path dir = LIFTOFF_SCENARIO_DIR;
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".ini") continue;
        ++count;
        const auto s = load_scenario(entry.path().string());
        const auto r = run(s);
        INFO(s.name);
        CHECK(r.all_passed());
        CHECK(r.check("verdict_behavior") != nullptr);
        CHECK(r.check("verdict_behavior")->passed);
    }
    CHECK(count >= 3);
}
