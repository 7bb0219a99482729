#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "liftoff/drift_profile.hpp"
#include "liftoff/oracles.hpp"
#include "liftoff/radial_grid.hpp"
#include "liftoff/radial_solver.hpp"

namespace liftoff {

/// Initial field given by samples, linearly interpolated onto the grid.
struct TabulatedInitial {
    std::vector<double> radii;
    std::vector<double> values;
};

using InitialCondition = std::variant<GaussianData, TabulatedInitial>;

struct Scenario {
    std::string name = "scenario";
    DriftProfile profile;
    RadialGrid grid{20.0, 2001, 2};
    InitialCondition initial = GaussianData{};
    SolverConfig solver;
    double t_end = 1.0;
    double diag_radius = 16.0;
    std::string output_dir;

    /// Throws ValidationError naming the offending key.
    void validate() const;
    RadialField initial_field() const;
    /// Renders the scenario as a document that parse_scenario reads back.
    std::string to_document() const;
};

/// Parses a sectioned `key = value` document:
///
///     name = "supercritical"
///     [profile]  kind = powerlaw | logcorrected | linear | zero | tabulated; A, beta, alpha, r0, r, psi
///     [domain]   n, r_max, num_nodes
///     [initial]  kind = gaussian | tabulated; sigma, r, u
///     [solver]   dt, theta, advection = centered | upwind,
///                outer_bc = neumann | dirichlet_frozen, snapshot_stride
///     [run]      t_end, diag_radius
///     [output]   dir
///
/// Numbers are bare tokens; lists are comma separated numbers; strings may
/// be quoted. '#' and ';' start comments. Omitted solver and run fields take
/// their defaults. Throws ValidationError with the key path on any problem.
Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file. Throws Error if it cannot be opened.
Scenario load_scenario(const std::string& path);

}  // namespace liftoff
