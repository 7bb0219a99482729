// Acceptance suites at their fixed reference resolutions.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "liftoff/errors.hpp"
#include "liftoff/lab.hpp"
#include "liftoff/oracles.hpp"

namespace liftoff {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string resolution_of(const RadialGrid& g, const SolverConfig& c, double t_end) {
    return "n=" + std::to_string(g.dimension()) + " r_max=" + num(g.r_max()) + " nodes=" + std::to_string(g.size()) +
           " dt=" + num(c.dt) + " theta=" + num(c.theta) + " " + to_string(c.advection) + " " +
           to_string(c.outer_bc) + " t_end=" + num(t_end);
}

CriterionResult named(int id, std::string name) {
    CriterionResult c;
    c.id = id;
    c.name = std::move(name);
    return c;
}

const Snapshot* at_time(const Trajectory& traj, double t) {
    for (const auto& s : traj.snapshots)
        if (std::abs(s.time - t) < 1e-9) return &s;
    return nullptr;
}

// Linear profile, Gaussian sigma = 1, n = 2 (criteria 1, 2, 10).
struct OracleSetup {
    GaussianData g{1.0, 2};
    RadialGrid grid{20.0, 2001, 2};
    SolverConfig cfg{1e-3, 0.5, OuterBoundary::DirichletFrozen, Advection::Centered, 500};
};

double max_oracle_error(const OracleSetup& o, const RadialField& u, double t, double r_cut) {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = u.grid().radius(i);
        if (r > r_cut) break;
        worst = std::max(worst, std::abs(u[i] - ou_solution(o.g, r, t)));
    }
    return worst;
}

CriterionResult criterion_oracle() {
    CriterionResult c = named(1, "oracle equivalence (linear profile vs closed form)");
    OracleSetup o;
    const auto u0 = o.g.sample(o.grid);
    const auto traj = solve(u0, DriftProfile::linear(), o.cfg, 3.0);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        const auto* s = at_time(traj, t);
        if (!s) throw Error("criterion 1: missing snapshot");
        const double e = max_oracle_error(o, s->field, t, 16.0) / u0.max();
        c.detail += "t=" + num(t) + ": " + num(e) + " ";
        worst = std::max(worst, e);
    }
    c.measured = worst;
    c.threshold = 1e-3;
    c.passed = worst <= c.threshold;
    c.resolution = resolution_of(o.grid, o.cfg, 3.0) + " r<=16";
    return c;
}

CriterionResult criterion_oracle_limit() {
    CriterionResult c = named(2, "lift-off level 2/3 for the linear profile");
    OracleSetup o;
    const auto u0 = o.g.sample(o.grid);
    const auto profile = DriftProfile::linear();
    const auto traj = solve(u0, profile, o.cfg, 6.0);
    const double target = ou_limit(o.g);
    const double center = traj.back().field.center();
    const auto pred = predict_liftoff_level(u0, WeightFunction(profile), 2);
    const double pred_err = std::abs(pred.level - target) / target;
    c.measured = std::abs(center - target) / target;
    c.threshold = 0.02;
    c.passed = c.measured <= c.threshold && pred_err <= 1e-4;
    c.detail = "u(0,6)=" + num(center) + " target=" + num(target) + " h_pred=" + num(pred.level) +
               " |h_pred-2/3|/(2/3)=" + num(pred_err) + " (tol 1e-4)";
    c.resolution = resolution_of(o.grid, o.cfg, 6.0);
    return c;
}

// Supercritical power law A = 3, beta = -1 (criteria 3, 4).
Scenario supercritical() {
    Scenario s;
    s.name = "supercritical";
    s.profile = DriftProfile::power_law(3.0, -1.0, 1.0);
    s.grid = RadialGrid(40.0, 4001, 2);
    s.initial = GaussianData{1.0, 2};
    s.solver = SolverConfig{1e-3, 0.5, OuterBoundary::DirichletFrozen, Advection::Centered, 100};
    s.t_end = 10.0;
    s.diag_radius = 32.0;
    return s;
}

CriterionResult criterion_conservation() {
    CriterionResult c = named(3, "conservation of the full-psi weighted mass");
    const Scenario s = supercritical();
    const auto traj = solve(s.initial_field(), s.profile, s.solver, s.t_end);
    const auto d = diagnostics(traj, WeightFunction(s.profile), s.diag_radius);
    c.measured = d.max_relative_drift();
    c.threshold = 1e-3;
    c.passed = c.measured <= c.threshold;
    c.detail = "I_R(0)=" + num(d.weighted_mass.front()) + " I_R(t_end)=" + num(d.weighted_mass.back());
    c.resolution = resolution_of(s.grid, s.solver, s.t_end) + " R=32";
    return c;
}

CriterionResult criterion_liftoff_prediction() {
    CriterionResult c = named(4, "lift-off prediction for bounded drift");
    const Scenario s = supercritical();
    const auto u0 = s.initial_field();
    const auto traj = solve(u0, s.profile, s.solver, s.t_end);
    const auto pred = predict_liftoff_level(u0, WeightFunction(s.profile), 2);
    const double center = traj.back().field.center();
    c.measured = std::abs(center - pred.level) / pred.level;
    c.threshold = 0.02;
    c.passed = c.measured <= c.threshold;
    c.detail = "u(0,10)=" + num(center) + " h_pred=" + num(pred.level) + " h_pred_truncated=" +
               num(pred.truncated_level);
    c.resolution = resolution_of(s.grid, s.solver, s.t_end);
    return c;
}

CriterionResult criterion_decay() {
    CriterionResult c = named(5, "decay for a subcritical profile");
    const auto profile = DriftProfile::power_law(1.0, -1.0, 1.0);
    const RadialGrid grid(80.0, 4001, 2);
    const SolverConfig cfg{2e-3, 1.0, OuterBoundary::DirichletFrozen, Advection::Upwind, 100};
    const double t_end = 200.0;
    const auto u0 = GaussianData{1.0, 2}.sample(grid);
    const auto traj = solve(u0, profile, cfg, t_end);
    const auto d = diagnostics(traj, WeightFunction(profile, WeightPart::Positive), 64.0);

    double sup_rise = 0.0;
    for (std::size_t k = 1; k < d.size(); ++k) sup_rise = std::max(sup_rise, d.sup[k] - d.sup[k - 1]);
    double first_below = -1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d.sup[k] < 0.1 * d.sup.front()) {
            first_below = d.times[k];
            break;
        }
    }
    const double mass_rise = d.max_relative_increase();
    c.measured = d.sup.back() / d.sup.front();
    c.threshold = 0.1;
    c.passed = sup_rise <= 1e-8 && first_below >= 0.0 && mass_rise <= 1e-6;
    c.detail = "sup framewise rise=" + num(sup_rise) + " (tol 1e-8); first t with sup<0.1 sup0=" +
               (first_below >= 0.0 ? num(first_below) : std::string("none")) +
               "; psi_+ I_R max relative increase=" + num(mass_rise) + " (tol 1e-6)";
    c.resolution = resolution_of(grid, cfg, t_end) + " R=64";
    return c;
}

CriterionResult criterion_critical() {
    CriterionResult c = named(6, "critical family resolved by integrability");
    const std::vector<std::pair<double, Verdict>> table{
        {2.0, Verdict::CriticalLiftOff}, {0.5, Verdict::CriticalDecay}, {1.0, Verdict::CriticalDecay}};
    int wrong = 0;
    for (const auto& [alpha, expected] : table) {
        const auto got = classify(DriftProfile::log_corrected(2, alpha), 2).verdict;
        c.detail += "alpha=" + num(alpha) + ":" + to_string(got) + " ";
        wrong += got != expected;
    }
    c.measured = wrong;
    c.threshold = 0;
    c.passed = wrong == 0;
    c.resolution = "symbolic";
    return c;
}

CriterionResult criterion_classifier() {
    CriterionResult c = named(7, "classifier table for power laws");
    struct Row {
        double A, beta;
        int n;
        Verdict expected;
    };
    const std::vector<Row> table{{3, -1, 2, Verdict::LiftOff},
                                 {1, 0, 2, Verdict::LiftOff},
                                 {1, -1, 2, Verdict::Decay},
                                 {5, -2, 3, Verdict::Decay}};
    int wrong = 0;
    for (const auto& row : table) {
        const auto got = classify(DriftProfile::power_law(row.A, row.beta), row.n).verdict;
        c.detail += "(A=" + num(row.A) + ",beta=" + num(row.beta) + ",n=" + std::to_string(row.n) +
                    "):" + to_string(got) + " ";
        wrong += got != row.expected;
    }
    c.measured = wrong;
    c.threshold = 0;
    c.passed = wrong == 0;
    c.resolution = "symbolic";
    return c;
}

CriterionResult criterion_mass_growth() {
    CriterionResult c = named(8, "exponential mass growth for the linear profile");
    const RadialGrid grid(30.0, 3001, 2);
    const SolverConfig cfg{1e-3, 0.5, OuterBoundary::DirichletFrozen, Advection::Centered, 50};
    const auto traj = solve(GaussianData{1.0, 2}.sample(grid), DriftProfile::linear(), cfg, 1.5);
    double worst = 0.0;
    for (const auto& row : mass_growth_check(traj))
        worst = std::max(worst, std::abs(row.mass / row.predicted - 1.0));
    c.measured = worst;
    c.threshold = 0.02;
    c.passed = worst <= c.threshold;
    c.detail = "max |mass(t) / (e^{2t} mass(0)) - 1| over t in [0, 1.5]";
    c.resolution = resolution_of(grid, cfg, 1.5);
    return c;
}

CriterionResult criterion_invariants() {
    CriterionResult c = named(9, "invariant suite on every profile family");
    std::vector<double> tab_r, tab_psi;
    for (int i = 0; i <= 50; ++i) {
        const double r = 0.5 * i;
        tab_r.push_back(r);
        tab_psi.push_back(2.5 * r / (1.0 + r * r) + 0.5 * std::sin(r) * r / (1.0 + r));
    }
    const std::vector<std::pair<std::string, DriftProfile>> profiles{
        {"powerlaw", DriftProfile::power_law(3.0, -1.0, 1.0)},
        {"logcorrected", DriftProfile::log_corrected(2, 2.0)},
        {"linear", DriftProfile::linear()},
        {"zero", DriftProfile::zero()},
        {"tabulated", DriftProfile::tabulated(tab_r, tab_psi)},
    };
    const RadialGrid grid(20.0, 801, 2);
    const SolverConfig cfg{5e-3, 1.0, OuterBoundary::DirichletFrozen, Advection::Upwind, 20};
    const double t_end = 3.0;
    const auto u = GaussianData{1.0, 2}.sample(grid);
    const auto v = RadialField::sample(grid, [](double r) { return 1.0 / (1.0 + r * r); });
    const double a = 0.75, b = -1.25;

    double worst_max = 0, worst_mono = 0, worst_neg = 0, worst_const = 0, worst_lin = 0;
    bool all = true;
    for (const auto& [name, profile] : profiles) {
        const RadialOperator op(grid, profile, cfg.outer_bc, cfg.advection);
        const bool m_matrix = op.off_diagonals_nonnegative();
        const auto tu = solve(u, profile, cfg, t_end);
        double excess = 0, rise = 0, neg = 0;
        bool center_positive = true;
        for (std::size_t k = 0; k < tu.size(); ++k) {
            const auto& f = tu.snapshots[k].field;
            excess = std::max({excess, f.max() - u.max(), u.min() - f.min()});
            for (std::size_t i = 1; i < f.size(); ++i) rise = std::max(rise, f[i] - f[i - 1]);
            if (k > 0) {
                neg = std::max(neg, -f.min());
                center_positive = center_positive && f.center() > 0.0;
            }
        }
        const auto tc = solve(RadialField(grid, 0.7), profile, cfg, t_end);
        double const_err = 0;
        for (const auto& snap : tc.snapshots)
            const_err = std::max({const_err, std::abs(snap.field.max() - 0.7), std::abs(snap.field.min() - 0.7)});
        const_err /= 0.7;
        const auto tv = solve(v, profile, cfg, t_end);
        const auto tw = solve(a * u + b * v, profile, cfg, t_end);
        const auto combo = a * tu.back().field + b * tv.back().field;
        double lin_err = 0;
        for (std::size_t i = 0; i < combo.size(); ++i)
            lin_err = std::max(lin_err, std::abs(tw.back().field[i] - combo[i]));
        lin_err /= std::abs(a) + std::abs(b);

        const bool ok = m_matrix && excess <= 1e-12 && rise <= 1e-10 && neg <= 1e-12 && center_positive &&
                        const_err <= 1e-12 && lin_err <= 1e-12;
        all = all && ok;
        worst_max = std::max(worst_max, excess);
        worst_mono = std::max(worst_mono, rise);
        worst_neg = std::max(worst_neg, neg);
        worst_const = std::max(worst_const, const_err);
        worst_lin = std::max(worst_lin, lin_err);
        c.detail += name + (ok ? ":ok " : ":FAIL ");
    }
    c.detail += "| max_principle=" + num(worst_max) + " monotonicity=" + num(worst_mono) + " negativity=" +
                num(worst_neg) + " constant=" + num(worst_const) + " linearity=" + num(worst_lin);
    c.measured = std::max({worst_max, worst_neg, worst_const, worst_lin});
    c.threshold = 1e-12;
    c.passed = all;
    c.resolution = resolution_of(grid, cfg, t_end);
    return c;
}

CriterionResult criterion_convergence() {
    CriterionResult c = named(10, "convergence order on the linear-profile oracle");
    const std::vector<std::pair<std::size_t, double>> levels{{501, 4e-3}, {1001, 2e-3}, {2001, 1e-3}};
    const double t_end = 1.0;
    OracleSetup o;
    std::vector<double> errors;
    std::vector<RadialField> finals;
    for (const auto& [nodes, dt] : levels) {
        const RadialGrid grid(20.0, nodes, 2);
        SolverConfig cfg = o.cfg;
        cfg.dt = dt;
        const auto traj = solve(o.g.sample(grid), DriftProfile::linear(), cfg, t_end);
        errors.push_back(max_oracle_error(o, traj.back().field, t_end, 16.0));
        finals.push_back(traj.back().field);
    }
    // Oracle-free Richardson estimate on the coarse nodes, r <= 16.
    auto diff = [&](const RadialField& coarse, const RadialField& fine) {
        const std::size_t ratio = (fine.size() - 1) / (coarse.size() - 1);
        double worst = 0;
        for (std::size_t i = 0; i < coarse.size() && coarse.grid().radius(i) <= 16.0; ++i)
            worst = std::max(worst, std::abs(coarse[i] - fine[i * ratio]));
        return worst;
    };
    const double d01 = diff(finals[0], finals[1]);
    const double d12 = diff(finals[1], finals[2]);
    const double p01 = std::log2(errors[0] / errors[1]);
    const double p12 = std::log2(errors[1] / errors[2]);
    const double p_rich = std::log2(d01 / d12);
    c.measured = std::min({p01, p12, p_rich});
    c.threshold = 1.9;
    c.passed = c.measured >= c.threshold;
    c.detail = "errors=" + num(errors[0]) + "," + num(errors[1]) + "," + num(errors[2]) + " orders=" + num(p01) +
               "," + num(p12) + " richardson=" + num(p_rich);
    c.resolution = "nodes/dt = 501/4e-3, 1001/2e-3, 2001/1e-3; r_max=20 theta=0.5 centered t=1 r<=16";
    return c;
}

}  // namespace

CriterionResult run_criterion(int id) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult c;
    switch (id) {
        case 1: c = criterion_oracle(); break;
        case 2: c = criterion_oracle_limit(); break;
        case 3: c = criterion_conservation(); break;
        case 4: c = criterion_liftoff_prediction(); break;
        case 5: c = criterion_decay(); break;
        case 6: c = criterion_critical(); break;
        case 7: c = criterion_classifier(); break;
        case 8: c = criterion_mass_growth(); break;
        case 9: c = criterion_invariants(); break;
        case 10: c = criterion_convergence(); break;
        default: throw DomainError("no acceptance criterion " + std::to_string(id) + " (valid: 1..10)");
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

bool VerifyReport::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracle",    "conservation", "liftoff",     "decay",
                                                "critical",  "invariants",   "convergence", "all"};
    return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
    static const std::map<std::string, std::vector<int>> suites{
        {"oracle", {1, 8}},     {"liftoff", {2, 4}},     {"conservation", {3}},
        {"decay", {5}},         {"critical", {6, 7}},    {"invariants", {9}},
        {"convergence", {10}},  {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
    };
    auto it = suites.find(suite);
    if (it == suites.end()) {
        std::string names;
        for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
        throw ValidationError("suite", "unknown suite '" + suite + "' (valid suites: " + names + ")");
    }
    return it->second;
}

VerifyReport verify(const std::string& suite, unsigned threads) {
    const auto ids = suite_criteria(suite);
    VerifyReport r{suite, std::vector<CriterionResult>(ids.size())};
    parallel_for(ids.size(), threads, [&](std::size_t i) { r.criteria[i] = run_criterion(ids[i]); });
    return r;
}

std::string format_criterion(const CriterionResult& c) {
    char head[64];
    std::snprintf(head, sizeof head, "criterion %2d %s ", c.id, c.passed ? "PASS" : "FAIL");
    return std::string(head) + c.name + ": measured=" + num(c.measured) + " threshold=" + num(c.threshold) +
           " [" + c.detail + "] (" + c.resolution + ")";
}

std::string verify_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& c : r.criteria) {
        j["criteria"].push_back({{"id", c.id},
                                 {"name", c.name},
                                 {"passed", c.passed},
                                 {"measured", c.measured},
                                 {"threshold", c.threshold},
                                 {"detail", c.detail},
                                 {"resolution", c.resolution},
                                 {"seconds", c.seconds}});
    }
    return j.dump(2) + "\n";
}

}  // namespace liftoff
