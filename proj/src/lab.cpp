#include "liftoff/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "liftoff/errors.hpp"
#include "liftoff/oracles.hpp"

namespace liftoff {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool non_increasing(const RadialField& u, double tol) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] > u[i - 1] + tol) return false;
    return true;
}

double scale_of(const RadialField& u) {
    const double s = std::max(std::abs(u.max()), std::abs(u.min()));
    return s > 0.0 ? s : 1.0;
}

bool monotone_scheme(const SolverConfig& c) {
    return c.theta == 1.0 && c.advection == Advection::Upwind;
}

void add_check(RunReport& rep, std::string name, double measured, double tol, bool enforced, std::string detail,
               bool passed) {
    rep.checks.push_back({std::move(name), passed, enforced, measured, tol, std::move(detail)});
}

void evaluate_checks(RunReport& rep, const Scenario& s) {
    const auto& traj = rep.trajectory;
    const RadialField& u0 = traj.front().field;
    const double scale = scale_of(u0);
    const double lo = u0.min(), hi = u0.max();
    const bool monotone = monotone_scheme(s.solver);
    const char* scheme_note = monotone ? "" : "informational: guaranteed only for theta = 1 with upwind advection";

    // Discrete maximum principle.
    double excess = 0.0;
    for (const auto& snap : traj.snapshots)
        excess = std::max({excess, snap.field.max() - hi, lo - snap.field.min()});
    excess /= scale;
    add_check(rep, "max_principle", excess, 1e-12, monotone, scheme_note, excess <= 1e-12);

    // Radial monotonicity preservation.
    if (non_increasing(u0, 0.0)) {
        double rise = 0.0;
        for (const auto& snap : traj.snapshots)
            for (std::size_t i = 1; i < snap.field.size(); ++i)
                rise = std::max(rise, snap.field[i] - snap.field[i - 1]);
        rise /= scale;
        add_check(rep, "radial_monotonicity", rise, 1e-10, monotone, scheme_note, rise <= 1e-10);
    }

    // Positivity.
    if (u0.min() >= 0.0 && u0.max() > 0.0) {
        double neg = 0.0;
        bool center_positive = true;
        for (std::size_t k = 1; k < traj.size(); ++k) {
            neg = std::max(neg, -traj.snapshots[k].field.min());
            center_positive = center_positive && traj.snapshots[k].field.center() > 0.0;
        }
        neg /= scale;
        add_check(rep, "positivity", neg, 1e-12, monotone,
                  std::string(center_positive ? "center positive" : "center not positive") +
                      (monotone ? "" : "; " + std::string(scheme_note)),
                  neg <= 1e-12 && center_positive);
    }

    const Verdict v = rep.classification.verdict;
    if (lifts_off(v)) {
        const double drift = rep.diagnostics.max_relative_drift();
        add_check(rep, "weighted_mass_conserved", drift, 1e-3, true, "full-psi weight, R = " + fmt_short(s.diag_radius),
                  drift <= 1e-3);
    } else if (decays(v)) {
        const double rise = rep.diagnostics.max_relative_increase();
        const bool hyp = non_increasing(u0, 0.0);
        add_check(rep, "weighted_mass_nonincreasing", rise, 1e-6, hyp,
                  "psi_+ weight, R = " + fmt_short(s.diag_radius) +
                      (hyp ? "" : "; informational: initial field not radially non-increasing"),
                  rise <= 1e-6);
    }

    if (rep.discrepancy) {
        add_check(rep, "verdict_behavior", *rep.discrepancy, 0.02, true,
                  "|u(0,t_end) - h_pred| / h_pred; h_pred = " + fmt17(rep.prediction->level), *rep.discrepancy <= 0.02);
    } else if (decays(v)) {
        double lowest = rep.initial_sup;
        for (double x : rep.diagnostics.sup) lowest = std::min(lowest, x);
        const double ratio = rep.initial_sup != 0.0 ? lowest / rep.initial_sup : 0.0;
        add_check(rep, "verdict_behavior", ratio, 0.1, true, "min_t sup u / sup u0", ratio < 0.1);
    }

    if (rep.oracle_error) {
        add_check(rep, "oracle", *rep.oracle_error, 1e-3, true, "max |u - ou_solution| / sup u0, r <= 0.8 r_max, t <= 3",
                  *rep.oracle_error <= 1e-3);
    }

    // Convergence to the limit, informational: the theorems give no rate.
    {
        const auto& last = traj.back();
        const double gap = std::abs(last.field.center() - last.field.at(0.5 * s.diag_radius)) / scale;
        double slope = 0.0;
        const double t_from = 0.9 * last.time;
        for (const auto& snap : traj.snapshots) {
            if (snap.time >= t_from && snap.time < last.time) {
                slope = std::abs(last.field.center() - snap.field.center()) / (last.time - snap.time) / scale;
                break;
            }
        }
        const bool ok = gap < 1e-4 && slope < 1e-5;
        add_check(rep, "converged", gap, 1e-4, false,
                  "|u(0) - u(R/2)| / sup u0; center slope over last 10% = " + fmt_short(slope) + " (tol 1e-05)", ok);
    }
}

std::optional<double> oracle_error(const Scenario& s, const Trajectory& traj) {
    const auto* g = std::get_if<GaussianData>(&s.initial);
    if (!g || s.profile.kind() != ProfileKind::Linear) return std::nullopt;
    const RadialField& u0 = traj.front().field;
    const double scale = scale_of(u0);
    const double r_cut = 0.8 * s.grid.r_max();
    double worst = 0.0;
    for (const auto& snap : traj.snapshots) {
        if (snap.time > 3.0 + 1e-12) break;
        for (std::size_t i = 0; i < snap.field.size() && s.grid.radius(i) <= r_cut; ++i) {
            const double r = s.grid.radius(i);
            worst = std::max(worst, std::abs(snap.field[i] - ou_solution(*g, r, snap.time)));
        }
    }
    return worst / scale;
}

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? number(*v) : nlohmann::ordered_json(nullptr);
}

std::string to_string(WeightPart p) { return p == WeightPart::Full ? "full" : "positive"; }

nlohmann::ordered_json report_object(const RunReport& r, const Scenario& s) {
    using json = nlohmann::ordered_json;
    const auto& c = r.classification;
    json j;
    j["scenario"] = r.scenario;
    j["verdict"] = to_string(c.verdict);
    j["L"] = number(c.growth_liminf);
    if (c.growth_limsup != c.growth_liminf) j["L_limsup"] = number(c.growth_limsup);
    j["L_positive"] = number(c.positive_growth);
    j["phi_mass"] = number(c.phi_mass);
    j["phi_mass_tail"] = number(c.phi_mass_tail);
    j["certificate"] = c.certificate;
    j["h_pred"] = r.prediction ? number(r.prediction->level) : json(nullptr);
    j["h_pred_truncated"] = r.prediction ? number(r.prediction->truncated_level) : json(nullptr);
    j["h_pred_tail_mass"] = r.prediction ? number(r.prediction->tail_mass) : json(nullptr);
    j["h_obs"] = number(r.final_center);
    j["discrepancy"] = optional_number(r.discrepancy);
    j["oracle_error"] = optional_number(r.oracle_error);
    j["initial_sup"] = number(r.initial_sup);
    j["final_sup"] = number(r.final_sup);
    j["final_time"] = number(r.final_time);
    j["weight"] = to_string(r.weight_part);
    j["diag_radius"] = number(s.diag_radius);
    j["weighted_mass_max_drift"] = number(r.diagnostics.max_relative_drift());
    j["weighted_mass_max_increase"] = number(r.diagnostics.max_relative_increase());
    json checks = json::object();
    for (const auto& ch : r.checks) {
        checks[ch.name] = {{"passed", ch.passed},
                           {"enforced", ch.enforced},
                           {"measured", number(ch.measured)},
                           {"tolerance", number(ch.tolerance)},
                           {"detail", ch.detail}};
    }
    j["invariants"] = checks;
    j["all_passed"] = r.all_passed();
    j["resolution"] = {{"n", s.grid.dimension()},
                       {"r_max", s.grid.r_max()},
                       {"num_nodes", s.grid.size()},
                       {"dt", s.solver.dt},
                       {"theta", s.solver.theta},
                       {"advection", to_string(s.solver.advection)},
                       {"outer_bc", to_string(s.solver.outer_bc)},
                       {"snapshot_stride", s.solver.snapshot_stride},
                       {"t_end", s.t_end}};
    j["profile"] = s.profile.describe();
    j["timings"] = {{"classify_s", r.timings.classify},
                    {"solve_s", r.timings.solve},
                    {"diagnose_s", r.timings.diagnose},
                    {"total_s", r.timings.total}};
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::filesystem::path ensure_dir(const std::string& dir) {
    std::filesystem::path p = dir.empty() ? std::filesystem::path(".") : std::filesystem::path(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw Error("cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

}  // namespace

bool RunReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || !c.enforced; });
}

const CheckResult* RunReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

RunReport run(const Scenario& s) {
    s.validate();
    const auto t0 = Clock::now();
    RunReport rep;
    rep.scenario = s.name;
    const int n = s.grid.dimension();

    rep.classification = classify(s.profile, n);
    const Verdict v = rep.classification.verdict;
    rep.weight_part = lifts_off(v) ? WeightPart::Full : WeightPart::Positive;
    const WeightFunction w(s.profile, rep.weight_part);
    const RadialField u0 = s.initial_field();
    if (lifts_off(v)) rep.prediction = predict_liftoff_level(u0, w, n);
    rep.timings.classify = seconds_since(t0);

    const auto t1 = Clock::now();
    rep.trajectory = solve(u0, s.profile, s.solver, s.t_end);
    rep.timings.solve = seconds_since(t1);

    const auto t2 = Clock::now();
    rep.diagnostics = diagnostics(rep.trajectory, w, s.diag_radius);
    rep.initial_sup = u0.max();
    rep.final_sup = rep.trajectory.back().field.max();
    rep.final_center = rep.trajectory.back().field.center();
    rep.final_time = rep.trajectory.back().time;
    if (rep.prediction) {
        const double h = rep.prediction->level;
        rep.discrepancy = h != 0.0 ? std::abs(rep.final_center - h) / std::abs(h) : std::abs(rep.final_center);
    }
    rep.oracle_error = oracle_error(s, rep.trajectory);
    evaluate_checks(rep, s);
    rep.timings.diagnose = seconds_since(t2);
    rep.timings.total = seconds_since(t0);
    return rep;
}

std::string report_json(const RunReport& report, const Scenario& s) {
    return report_object(report, s).dump(2) + "\n";
}

void write_outputs(const RunReport& report, const Scenario& s, const std::string& dir) {
    const auto root = ensure_dir(dir);

    std::string frames = "t,r,u\n";
    for (const auto& snap : report.trajectory.snapshots) {
        const auto& g = snap.field.grid();
        const std::string t = fmt17(snap.time);
        for (std::size_t i = 0; i < g.size(); ++i) {
            frames += t;
            frames += ',';
            frames += fmt17(g.radius(i));
            frames += ',';
            frames += fmt17(snap.field[i]);
            frames += '\n';
        }
    }
    write_file(root / "frames.csv", frames);

    const auto& d = report.diagnostics;
    std::string diag = "t,I_R,sup_u,center_u,mass\n";
    for (std::size_t k = 0; k < d.size(); ++k) {
        diag += fmt17(d.times[k]) + ',' + fmt17(d.weighted_mass[k]) + ',' + fmt17(d.sup[k]) + ',' +
                fmt17(d.center[k]) + ',' + fmt17(d.mass[k]) + '\n';
    }
    write_file(root / "diagnostics.csv", diag);
    write_file(root / "report.json", report_json(report, s));
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names{"A", "beta", "alpha", "sigma", "n_dim", "r_max", "num_nodes", "dt"};
    return names;
}

Scenario with_parameter(const Scenario& base, const std::string& parameter, double value) {
    Scenario s = base;
    auto need_integer = [&](const char* key, long lo) {
        if (std::floor(value) != value || value < static_cast<double>(lo) || value > 1e9)
            throw ValidationError(key, "expected an integer >= " + std::to_string(lo));
        return static_cast<long>(value);
    };
    auto rebuild_profile = [&](const char* key, auto&& mutate) {
        auto variant = s.profile.variant();
        if (!mutate(variant)) throw ValidationError(key, "does not apply to profile " + s.profile.describe());
        try {
            s.profile = DriftProfile(std::move(variant));
        } catch (const ValidationError& e) {
            throw ValidationError(key, e.what());
        }
    };

    if (parameter == "A") {
        rebuild_profile("profile.A", [&](DriftProfile::Variant& v) {
            auto* p = std::get_if<PowerLaw>(&v);
            if (p) p->amplitude = value;
            return p != nullptr;
        });
    } else if (parameter == "beta") {
        rebuild_profile("profile.beta", [&](DriftProfile::Variant& v) {
            auto* p = std::get_if<PowerLaw>(&v);
            if (p) p->exponent = value;
            return p != nullptr;
        });
    } else if (parameter == "alpha") {
        rebuild_profile("profile.alpha", [&](DriftProfile::Variant& v) {
            auto* p = std::get_if<LogCorrected>(&v);
            if (p) p->alpha = value;
            return p != nullptr;
        });
    } else if (parameter == "sigma") {
        auto* g = std::get_if<GaussianData>(&s.initial);
        if (!g) throw ValidationError("initial.sigma", "does not apply to tabulated initial data");
        g->sigma = value;
    } else if (parameter == "n_dim") {
        const int n = static_cast<int>(need_integer("domain.n", 1));
        s.grid = RadialGrid(s.grid.r_max(), s.grid.size(), n);
        if (auto* g = std::get_if<GaussianData>(&s.initial)) g->n_dim = n;
    } else if (parameter == "r_max") {
        if (!(value > 0.0)) throw ValidationError("domain.r_max", "must be > 0");
        s.diag_radius *= value / s.grid.r_max();
        s.grid = RadialGrid(value, s.grid.size(), s.grid.dimension());
    } else if (parameter == "num_nodes") {
        s.grid = RadialGrid(s.grid.r_max(), static_cast<std::size_t>(need_integer("domain.num_nodes", 3)),
                            s.grid.dimension());
    } else if (parameter == "dt") {
        s.solver.dt = value;
    } else {
        std::string names;
        for (const auto& p : sweep_parameters()) names += (names.empty() ? "" : ", ") + p;
        throw ValidationError(parameter, "unknown sweep parameter (expected one of " + names + ")");
    }
    s.name = base.name + "[" + parameter + "=" + fmt_short(value) + "]";
    s.validate();
    return s;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < workers; ++k) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> sweep(const Scenario& base, const std::string& parameter, const std::vector<double>& values,
                            SweepOptions options) {
    if (std::find(sweep_parameters().begin(), sweep_parameters().end(), parameter) == sweep_parameters().end())
        with_parameter(base, parameter, 0.0);  // throws the listing error
    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), options.threads, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.parameter = parameter;
        row.value = values[i];
        try {
            RunReport rep = run(with_parameter(base, parameter, values[i]));
            if (!options.keep_trajectories && rep.trajectory.size() > 2)
                rep.trajectory.snapshots = {rep.trajectory.front(), rep.trajectory.back()};
            row.report = std::move(rep);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    return rows;
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows) {
    std::string out = "parameter,value,status,verdict,L,phi_mass,h_pred,h_obs,discrepancy,initial_sup,final_sup,"
                      "checks_passed,error\n";
    for (const auto& row : rows) {
        out += csv_field(row.parameter) + ',' + fmt17(row.value) + ',';
        if (!row.report) {
            out += "error,,,,,,,,,," + csv_field(row.error) + '\n';
            continue;
        }
        const auto& r = *row.report;
        out += "ok," + to_string(r.classification.verdict) + ',' + fmt17(r.classification.growth_liminf) + ',' +
               fmt17(r.classification.phi_mass) + ',' + (r.prediction ? fmt17(r.prediction->level) : "") + ',' +
               fmt17(r.final_center) + ',' + (r.discrepancy ? fmt17(*r.discrepancy) : "") + ',' +
               fmt17(r.initial_sup) + ',' + fmt17(r.final_sup) + ',' + (r.all_passed() ? "true" : "false") + ",\n";
    }
    return out;
}

void write_sweep_outputs(const std::vector<SweepRow>& rows, const Scenario& base, const std::string& dir) {
    const auto root = ensure_dir(dir);
    write_file(root / "summary.csv", sweep_summary_csv(rows));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].report) continue;
        const Scenario s = with_parameter(base, rows[i].parameter, rows[i].value);
        write_outputs(*rows[i].report, s, (root / ("row_" + std::to_string(i))).string());
    }
}

}  // namespace liftoff
