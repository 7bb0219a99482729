#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liftoff/radial_solver.hpp"
#include "liftoff/scenario.hpp"
#include "liftoff/weights.hpp"

namespace liftoff {

/// One invariant or behaviour check. Checks that are not `enforced` are
/// reported but do not count against RunReport::all_passed.
struct CheckResult {
    std::string name;
    bool passed = true;
    bool enforced = true;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Timings {
    double classify = 0.0;
    double solve = 0.0;
    double diagnose = 0.0;
    double total = 0.0;
};

struct RunReport {
    std::string scenario;
    ClassificationResult classification;
    WeightPart weight_part = WeightPart::Full;
    DiagnosticSeries diagnostics;
    double initial_sup = 0.0;
    double final_sup = 0.0;
    double final_center = 0.0;  ///< h_obs
    double final_time = 0.0;
    std::optional<LiftoffPrediction> prediction;
    /// |h_obs - h_pred| / h_pred; present iff the verdict lifts off.
    std::optional<double> discrepancy;
    /// Max |u - ou_solution| / sup u0 over r <= 0.8 r_max, t <= 3 (linear profile, Gaussian data).
    std::optional<double> oracle_error;
    std::vector<CheckResult> checks;
    Timings timings;
    Trajectory trajectory;

    bool all_passed() const;
    const CheckResult* check(const std::string& name) const;
};

/// classify -> solve -> diagnose -> evaluate checks. Verdict/behaviour
/// mismatches appear as failed checks. Throws DivergenceError or SolverError.
RunReport run(const Scenario& s);

/// Writes frames.csv, diagnostics.csv and report.json into `dir` (created if
/// missing). Throws Error on I/O failure.
void write_outputs(const RunReport& report, const Scenario& s, const std::string& dir);

std::string report_json(const RunReport& report, const Scenario& s);

/// Parameters accepted by sweep().
const std::vector<std::string>& sweep_parameters();

/// Copy of `base` with one parameter replaced. Throws ValidationError when
/// the parameter is unknown or does not apply to the scenario.
Scenario with_parameter(const Scenario& base, const std::string& parameter, double value);

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    std::optional<RunReport> report;
    std::string error;  ///< non-empty when the row failed
};

struct SweepOptions {
    unsigned threads = 1;
    bool keep_trajectories = false;
};

/// One independent run per value. Rows come back in the order of `values`
/// regardless of thread count; a failing row records its error and the
/// sweep continues.
std::vector<SweepRow> sweep(const Scenario& base, const std::string& parameter,
                            const std::vector<double>& values, SweepOptions options = {});

std::string sweep_summary_csv(const std::vector<SweepRow>& rows);
void write_sweep_outputs(const std::vector<SweepRow>& rows, const Scenario& base, const std::string& dir);

// Acceptance suites.

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;      ///< extra measured numbers
    std::string resolution;  ///< reference resolution used
    double seconds = 0.0;
};

constexpr int kCriterionCount = 10;

/// Runs acceptance criterion `id` (1..10). Throws DomainError otherwise.
CriterionResult run_criterion(int id);

struct VerifyReport {
    std::string suite;
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

const std::vector<std::string>& suite_names();
/// Criterion ids making up a suite; "all" lists every criterion.
/// Throws ValidationError listing the valid names for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);

VerifyReport verify(const std::string& suite, unsigned threads = 1);

std::string format_criterion(const CriterionResult& c);
std::string verify_json(const VerifyReport& r);

/// Calls fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace liftoff
