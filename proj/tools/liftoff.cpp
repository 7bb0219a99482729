// liftoff: run scenarios, classify drift profiles, sweep parameters and run
// the acceptance suites.
//
// Exit codes: 0 success, 1 runtime failure or failed suite, 2 invalid input,
// 3 a run finished but an enforced check failed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftoff/errors.hpp"
#include "liftoff/lab.hpp"

namespace {

struct Globals {
    std::string out;
    bool quiet = false;
    unsigned threads = 0;
};

std::string out_dir(const Globals& g, const liftoff::Scenario& s) {
    if (!g.out.empty()) return g.out;
    if (!s.output_dir.empty()) return s.output_dir;
    return "liftoff-out/" + s.name;
}

unsigned thread_count(const Globals& g) {
    if (g.threads > 0) return g.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw liftoff::ValidationError("--values", "not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw liftoff::ValidationError("--values", "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw liftoff::ValidationError("--values", "empty list");
    return out;
}

int cmd_simulate(const Globals& g, const std::string& path) {
    const auto s = liftoff::load_scenario(path);
    const auto report = liftoff::run(s);
    const auto dir = out_dir(g, s);
    liftoff::write_outputs(report, s, dir);
    if (!g.quiet) {
        std::printf("%s: %s, h_obs=%.17g", s.name.c_str(), liftoff::to_string(report.classification.verdict).c_str(),
                    report.final_center);
        if (report.prediction) std::printf(", h_pred=%.17g", report.prediction->level);
        std::printf(", %.2fs -> %s\n", report.timings.total, dir.c_str());
        for (const auto& c : report.checks) {
            std::printf("  %-28s %s%s measured=%.6g tol=%.3g\n", c.name.c_str(), c.passed ? "pass" : "FAIL",
                        c.enforced ? "" : " (info)", c.measured, c.tolerance);
        }
    }
    return report.all_passed() ? 0 : 3;
}

int cmd_classify(const std::string& path) {
    const auto s = liftoff::load_scenario(path);
    const auto c = liftoff::classify(s.profile, s.grid.dimension());
    auto num = [](double v) -> nlohmann::ordered_json {
        if (std::isfinite(v)) return v;
        return v > 0 ? "inf" : "-inf";
    };
    nlohmann::ordered_json j;
    j["scenario"] = s.name;
    j["profile"] = s.profile.describe();
    j["n"] = s.grid.dimension();
    j["verdict"] = liftoff::to_string(c.verdict);
    j["L"] = num(c.growth_liminf);
    j["L_limsup"] = num(c.growth_limsup);
    j["L_positive"] = num(c.positive_growth);
    j["phi_mass"] = num(c.phi_mass);
    j["phi_mass_tail"] = num(c.phi_mass_tail);
    j["certificate"] = c.certificate;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const Globals& g, const std::string& path, const std::string& param, const std::string& values) {
    const auto s = liftoff::load_scenario(path);
    const auto rows = liftoff::sweep(s, param, parse_values(values), {thread_count(g), false});
    const auto dir = g.out.empty() ? out_dir(g, s) + "-sweep-" + param : g.out;
    liftoff::write_sweep_outputs(rows, s, dir);
    if (!g.quiet) std::cout << liftoff::sweep_summary_csv(rows);
    for (const auto& r : rows)
        if (!r.report) return 1;
    return 0;
}

int cmd_verify(const Globals& g, const std::string& suite) {
    liftoff::suite_criteria(suite);
    const auto report = liftoff::verify(suite, thread_count(g));
    if (!g.quiet)
        for (const auto& c : report.criteria) std::printf("%s\n", liftoff::format_criterion(c).c_str());
    if (!g.out.empty()) {
        std::filesystem::create_directories(g.out);
        std::ofstream(std::filesystem::path(g.out) / "verify.json") << liftoff::verify_json(report);
    }
    if (!g.quiet) std::printf("suite %s: %s\n", suite.c_str(), report.passed() ? "PASS" : "FAIL");
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial drift-diffusion lift-off laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "Output directory");
    app.add_flag("--quiet", g.quiet, "Suppress progress output");
    app.add_option("--threads", g.threads, "Worker threads for sweeps and suites (default: all cores)")
        ->check(CLI::PositiveNumber);

    std::string config, param, values, suite;
    auto* sim = app.add_subcommand("simulate", "Run a scenario and write frames, diagnostics and report");
    sim->add_option("config", config, "Scenario file")->required();
    auto* cls = app.add_subcommand("classify", "Classify the scenario's drift profile");
    cls->add_option("config", config, "Scenario file")->required();
    auto* swp = app.add_subcommand("sweep", "Run the scenario over a list of parameter values");
    swp->add_option("config", config, "Scenario file")->required();
    swp->add_option("--param", param, "A, beta, alpha, sigma, n_dim, r_max, num_nodes or dt")->required();
    swp->add_option("--values", values, "Comma separated values")->required();
    auto* ver = app.add_subcommand("verify", "Run an acceptance suite");
    ver->add_option("suite", suite, "oracle, conservation, liftoff, decay, critical, invariants, convergence, all")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(g, config);
        if (*cls) return cmd_classify(config);
        if (*swp) return cmd_sweep(g, config, param, values);
        if (*ver) return cmd_verify(g, suite);
    } catch (const liftoff::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
