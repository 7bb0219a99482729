#pragma once

#include <vector>

#include "liftoff/radial_grid.hpp"
#include "liftoff/radial_solver.hpp"

namespace liftoff {

/// Initial datum u0(x) = exp(-|x|^2 / (4 sigma)) in R^n.
struct GaussianData {
    double sigma = 1.0;
    int n_dim = 2;

    /// Throws ValidationError unless sigma > 0 and n_dim >= 1.
    void validate() const;
    double operator()(double r) const;
    RadialField sample(const RadialGrid& grid) const;
};

/// Heat flow of the Gaussian datum:
/// w(r, s) = (sigma / (sigma + s))^{n/2} exp(-r^2 / (4 (sigma + s))).
double heat_solution(const GaussianData& g, double r, double s);

/// Exact solution of u_t = Delta u - <x, grad u> built from the heat flow,
/// u(x, t) = w(e^{-t} x, s0 + (1 - e^{-2t}) / 2).
///
/// With the default heat_offset s0 = 0 the solution starts from the Gaussian
/// datum itself; s0 = 1/2 gives u(x, t) = w(e^{-t} x, 1 - e^{-2t}/2), which
/// starts from w(., 1/2).
double ou_solution(const GaussianData& g, double r, double t, double heat_offset = 0.0);

/// t -> inf limit of ou_solution: (sigma / (sigma + s0 + 1/2))^{n/2}.
double ou_limit(const GaussianData& g, double heat_offset = 0.0);

struct MassGrowthRow {
    double time;
    double mass;       ///< |S^{n-1}| int_0^{r_max} u r^{n-1} dr
    double predicted;  ///< e^{n t} times the initial mass
};

/// Pairs the radial mass of each snapshot with the exponential growth law
/// d/dt int u = n int u that holds for b = -x on the whole space.
/// Throws PreconditionError unless the trajectory used the linear profile.
std::vector<MassGrowthRow> mass_growth_check(const Trajectory& traj);

}  // namespace liftoff
