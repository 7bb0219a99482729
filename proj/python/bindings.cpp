#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "liftoff/errors.hpp"
#include "liftoff/lab.hpp"
#include "liftoff/oracles.hpp"

namespace py = pybind11;
using namespace liftoff;

namespace {

std::vector<double> to_vector(const RadialField& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

PYBIND11_MODULE(_liftoff, m) {
    m.doc() = "Radial drift-diffusion solver, lift-off classifier and acceptance suites.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<OutOfRangeError>(m, "OutOfRangeError", error.ptr());
    py::register_exception<SolverError>(m, "SolverError", error.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());

    py::class_<DriftProfile>(m, "DriftProfile")
        .def_static("power_law", &DriftProfile::power_law, py::arg("A"), py::arg("beta"), py::arg("r0") = 1.0)
        .def_static("log_corrected", &DriftProfile::log_corrected, py::arg("n"), py::arg("alpha"),
                    py::arg("r0") = 2.718281828459045)
        .def_static("linear", &DriftProfile::linear)
        .def_static("zero", &DriftProfile::zero)
        .def_static("tabulated", &DriftProfile::tabulated, py::arg("r"), py::arg("psi"))
        .def("__call__", &DriftProfile::operator(), py::arg("r"))
        .def("cumulative", &DriftProfile::cumulative, py::arg("r"))
        .def_property_readonly("kind", [](const DriftProfile& p) { return to_string(p.kind()); })
        .def("__repr__", &DriftProfile::describe);

    py::enum_<Verdict>(m, "Verdict")
        .value("LiftOff", Verdict::LiftOff)
        .value("Decay", Verdict::Decay)
        .value("CriticalLiftOff", Verdict::CriticalLiftOff)
        .value("CriticalDecay", Verdict::CriticalDecay)
        .value("Undetermined", Verdict::Undetermined);
    m.def("verdict_name", [](Verdict v) { return to_string(v); }, py::arg("verdict"));

    py::class_<ClassificationResult>(m, "ClassificationResult")
        .def_readonly("verdict", &ClassificationResult::verdict)
        .def_property_readonly("verdict_name", [](const ClassificationResult& c) { return to_string(c.verdict); })
        .def_readonly("L", &ClassificationResult::growth_liminf)
        .def_readonly("L_limsup", &ClassificationResult::growth_limsup)
        .def_readonly("L_positive", &ClassificationResult::positive_growth)
        .def_readonly("phi_mass", &ClassificationResult::phi_mass)
        .def_readonly("phi_mass_tail", &ClassificationResult::phi_mass_tail)
        .def_readonly("certificate", &ClassificationResult::certificate);

    m.def("classify", &classify, py::arg("profile"), py::arg("n"));

    py::class_<WeightFunction>(m, "WeightFunction")
        .def(py::init([](const DriftProfile& p, bool positive_part) {
                 return WeightFunction(p, positive_part ? WeightPart::Positive : WeightPart::Full);
             }),
             py::arg("profile"), py::arg("positive_part") = false)
        .def("__call__", &WeightFunction::operator(), py::arg("r"))
        .def("cumulative", &WeightFunction::cumulative, py::arg("r"));

    py::class_<RadialGrid>(m, "RadialGrid")
        .def(py::init<double, std::size_t, int>(), py::arg("r_max"), py::arg("num_nodes"), py::arg("n"))
        .def_property_readonly("r_max", &RadialGrid::r_max)
        .def_property_readonly("n", &RadialGrid::dimension)
        .def_property_readonly("spacing", &RadialGrid::spacing)
        .def("__len__", &RadialGrid::size)
        .def("radii", &RadialGrid::radii);

    py::class_<RadialField>(m, "RadialField")
        .def(py::init<RadialGrid, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &RadialField::grid)
        .def_property_readonly("values", &to_vector)
        .def("__len__", &RadialField::size)
        .def("at", &RadialField::at, py::arg("r"))
        .def("center", &RadialField::center);

    py::class_<GaussianData>(m, "GaussianData")
        .def(py::init<double, int>(), py::arg("sigma") = 1.0, py::arg("n") = 2)
        .def_readwrite("sigma", &GaussianData::sigma)
        .def_readwrite("n", &GaussianData::n_dim)
        .def("__call__", &GaussianData::operator(), py::arg("r"))
        .def("sample", &GaussianData::sample, py::arg("grid"));

    m.def("heat_solution", &heat_solution, py::arg("data"), py::arg("r"), py::arg("s"));
    m.def("ou_solution", &ou_solution, py::arg("data"), py::arg("r"), py::arg("t"), py::arg("heat_offset") = 0.0);
    m.def("ou_limit", &ou_limit, py::arg("data"), py::arg("heat_offset") = 0.0);
    m.def("weighted_mass", &weighted_mass, py::arg("u"), py::arg("w"), py::arg("R"));

    py::class_<LiftoffPrediction>(m, "LiftoffPrediction")
        .def_readonly("level", &LiftoffPrediction::level)
        .def_readonly("truncated_level", &LiftoffPrediction::truncated_level)
        .def_readonly("phi_mass", &LiftoffPrediction::phi_mass)
        .def_readonly("tail_mass", &LiftoffPrediction::tail_mass);
    m.def("predict_liftoff_level", &predict_liftoff_level, py::arg("u0"), py::arg("w"), py::arg("n"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](double dt, double theta, const std::string& advection, const std::string& outer_bc,
                         std::size_t stride) {
                 SolverConfig c;
                 c.dt = dt;
                 c.theta = theta;
                 if (advection == "upwind") c.advection = Advection::Upwind;
                 else if (advection != "centered") throw ValidationError("solver.advection", "centered or upwind");
                 if (outer_bc == "neumann") c.outer_bc = OuterBoundary::NeumannZero;
                 else if (outer_bc != "dirichlet_frozen")
                     throw ValidationError("solver.outer_bc", "neumann or dirichlet_frozen");
                 c.snapshot_stride = stride;
                 c.validate();
                 return c;
             }),
             py::arg("dt") = 1e-3, py::arg("theta") = 0.5, py::arg("advection") = "centered",
             py::arg("outer_bc") = "dirichlet_frozen", py::arg("snapshot_stride") = 100)
        .def_readonly("dt", &SolverConfig::dt)
        .def_readonly("theta", &SolverConfig::theta);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", &Trajectory::times)
        .def("__len__", &Trajectory::size)
        .def("field", [](const Trajectory& t, std::size_t k) { return t.snapshots.at(k).field; }, py::arg("k"))
        .def("final", [](const Trajectory& t) { return t.back().field; });
    m.def("solve", &solve, py::arg("u0"), py::arg("profile"), py::arg("config"), py::arg("t_end"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("profile", &Scenario::profile)
        .def_readonly("grid", &Scenario::grid)
        .def_readonly("t_end", &Scenario::t_end)
        .def_readonly("diag_radius", &Scenario::diag_radius)
        .def("to_document", &Scenario::to_document);
    m.def("parse_scenario", &parse_scenario, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("enforced", &CheckResult::enforced)
        .def_readonly("measured", &CheckResult::measured)
        .def_readonly("tolerance", &CheckResult::tolerance);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("classification", &RunReport::classification)
        .def_readonly("final_sup", &RunReport::final_sup)
        .def_readonly("h_obs", &RunReport::final_center)
        .def_property_readonly("h_pred",
                               [](const RunReport& r) -> std::optional<double> {
                                   if (!r.prediction) return std::nullopt;
                                   return r.prediction->level;
                               })
        .def_readonly("discrepancy", &RunReport::discrepancy)
        .def_readonly("oracle_error", &RunReport::oracle_error)
        .def_readonly("checks", &RunReport::checks)
        .def_readonly("trajectory", &RunReport::trajectory)
        .def("all_passed", &RunReport::all_passed);
    m.def("run", &run, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
    m.def("write_outputs", &write_outputs, py::arg("report"), py::arg("scenario"), py::arg("dir"));
    m.def("report_json", &report_json, py::arg("report"), py::arg("scenario"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("parameter", &SweepRow::parameter)
        .def_readonly("value", &SweepRow::value)
        .def_readonly("report", &SweepRow::report)
        .def_readonly("error", &SweepRow::error);
    m.def(
        "sweep",
        [](const Scenario& base, const std::string& parameter, const std::vector<double>& values, unsigned threads) {
            py::gil_scoped_release release;
            return sweep(base, parameter, values, {threads, false});
        },
        py::arg("base"), py::arg("parameter"), py::arg("values"), py::arg("threads") = 1);
    m.def("sweep_summary_csv", &sweep_summary_csv, py::arg("rows"));

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &CriterionResult::id)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("passed", &CriterionResult::passed)
        .def_readonly("measured", &CriterionResult::measured)
        .def_readonly("threshold", &CriterionResult::threshold)
        .def_readonly("detail", &CriterionResult::detail)
        .def("__str__", &format_criterion);
    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("suite", &VerifyReport::suite)
        .def_readonly("criteria", &VerifyReport::criteria)
        .def("passed", &VerifyReport::passed);
    m.def("run_criterion", &run_criterion, py::arg("id"), py::call_guard<py::gil_scoped_release>());
    m.def("verify", &verify, py::arg("suite"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("suite_names", &suite_names);
}
