#include "liftoff/oracles.hpp"

#include <cmath>

#include "liftoff/errors.hpp"
#include "liftoff/weights.hpp"

namespace liftoff {

void GaussianData::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("initial.sigma", "must be > 0");
    if (n_dim < 1) throw ValidationError("domain.n", "must be >= 1");
}

double GaussianData::operator()(double r) const { return std::exp(-r * r / (4.0 * sigma)); }

RadialField GaussianData::sample(const RadialGrid& grid) const {
    return RadialField::sample(grid, *this);
}

double heat_solution(const GaussianData& g, double r, double s) {
    if (!(s >= 0.0)) throw DomainError("heat_solution: time must be >= 0");
    const double spread = g.sigma + s;
    return std::pow(g.sigma / spread, 0.5 * g.n_dim) * std::exp(-r * r / (4.0 * spread));
}

double ou_solution(const GaussianData& g, double r, double t, double heat_offset) {
    if (!(t >= 0.0)) throw DomainError("ou_solution: time must be >= 0");
    // -expm1(-2t) = 1 - e^{-2t} without cancellation for small t.
    const double s = heat_offset - 0.5 * std::expm1(-2.0 * t);
    return heat_solution(g, std::exp(-t) * r, s);
}

double ou_limit(const GaussianData& g, double heat_offset) {
    return std::pow(g.sigma / (g.sigma + heat_offset + 0.5), 0.5 * g.n_dim);
}

std::vector<MassGrowthRow> mass_growth_check(const Trajectory& traj) {
    if (traj.profile.kind() != ProfileKind::Linear)
        throw PreconditionError("mass_growth_check: trajectory must use the linear profile");
    std::vector<MassGrowthRow> rows;
    if (traj.snapshots.empty()) return rows;
    const auto& grid = traj.front().field.grid();
    const double n = grid.dimension();
    const double initial = radial_mass(traj.front().field, grid.r_max());
    for (const auto& snap : traj.snapshots)
        rows.push_back({snap.time, radial_mass(snap.field, grid.r_max()),
                        std::exp(n * snap.time) * initial});
    return rows;
}

}  // namespace liftoff
