#include "liftoff/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liftoff/errors.hpp"

namespace liftoff {

std::string to_string(OuterBoundary bc) {
    return bc == OuterBoundary::NeumannZero ? "neumann" : "dirichlet_frozen";
}

std::string to_string(Advection adv) { return adv == Advection::Centered ? "centered" : "upwind"; }

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("solver.dt", "must be > 0");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("solver.theta", "must lie in [0, 1]");
    if (snapshot_stride < 1) throw ValidationError("solver.snapshot_stride", "must be >= 1");
}

void Tridiagonal::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += lower[i] * x[i - 1];
        if (i + 1 < n) acc += upper[i] * x[i + 1];
        y[i] = acc;
    }
}

TridiagonalSolver::TridiagonalSolver(const Tridiagonal& a)
    : lower_(a.lower), inv_pivot_(a.size()), upper_(a.size(), 0.0) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = a.diag[i] - (i > 0 ? a.lower[i] * upper_[i - 1] : 0.0);
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            std::ostringstream os;
            os << "tridiagonal solve: singular pivot at row " << i;
            throw SolverError(os.str());
        }
        inv_pivot_[i] = 1.0 / pivot;
        if (i + 1 < n) upper_[i] = a.upper[i] * inv_pivot_[i];
    }
}

void TridiagonalSolver::solve(std::span<const double> rhs, std::span<double> x) const {
    const std::size_t n = inv_pivot_.size();
    x[0] = rhs[0] * inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) x[i] = (rhs[i] - lower_[i] * x[i - 1]) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_[i] * x[i + 1];
}

RadialOperator::RadialOperator(const RadialGrid& grid, const DriftProfile& profile,
                               OuterBoundary outer_bc, Advection advection)
    : grid_(grid), outer_bc_(outer_bc), matrix_(grid.size()) {
    const std::size_t last = grid.size() - 1;
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double n = grid.dimension();

    // Origin: n u_rr(0) with u(-h) = u(h); psi(0) = 0 and u_r(0) = 0.
    matrix_.upper[0] = 2.0 * n * inv_h2;

    for (std::size_t i = 1; i < last; ++i) {
        const double r = grid.radius(i);
        const double c = (n - 1.0) / r - profile(r);
        double lo = inv_h2, up = inv_h2;
        if (advection == Advection::Centered) {
            lo -= c / (2.0 * h);
            up += c / (2.0 * h);
        } else {
            lo -= std::min(c, 0.0) / h;
            up += std::max(c, 0.0) / h;
        }
        matrix_.lower[i] = lo;
        matrix_.upper[i] = up;
    }

    if (outer_bc == OuterBoundary::NeumannZero) matrix_.lower[last] = 2.0 * inv_h2;
    // Dirichlet-frozen leaves the last row empty.

    for (std::size_t i = 0; i <= last; ++i) matrix_.diag[i] = -(matrix_.lower[i] + matrix_.upper[i]);
}

RadialField RadialOperator::apply(const RadialField& u) const {
    if (!(u.grid() == grid_)) throw DomainError("radial operator: field lives on a different grid");
    // Difference form: rows sum to zero, so constants map to exactly zero.
    RadialField out(grid_);
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        if (i > 0) acc += matrix_.lower[i] * (u[i - 1] - u[i]);
        if (i + 1 < n) acc += matrix_.upper[i] * (u[i + 1] - u[i]);
        out[i] = acc;
    }
    return out;
}

bool RadialOperator::off_diagonals_nonnegative() const {
    for (std::size_t i = 0; i < matrix_.size(); ++i)
        if (matrix_.lower[i] < 0.0 || matrix_.upper[i] < 0.0) return false;
    return true;
}

namespace {

Tridiagonal implicit_matrix(const Tridiagonal& l, double dt, double theta) {
    Tridiagonal a(l.size());
    const double s = theta * dt;
    for (std::size_t i = 0; i < l.size(); ++i) {
        a.lower[i] = -s * l.lower[i];
        a.upper[i] = -s * l.upper[i];
        a.diag[i] = 1.0 - s * l.diag[i];
    }
    return a;
}

}  // namespace

ThetaStepper::ThetaStepper(const RadialOperator& op, double dt, double theta)
    : op_(&op), dt_(dt), theta_(theta), implicit_(implicit_matrix(op.matrix(), dt, theta)) {}

void ThetaStepper::advance(std::span<double> u, std::span<double> scratch) const {
    const auto& l = op_->matrix();
    const std::size_t n = u.size();
    const double explicit_weight = (1.0 - theta_) * dt_;
    for (std::size_t i = 0; i < n; ++i) {
        double lu = 0.0;
        if (i > 0) lu += l.lower[i] * (u[i - 1] - u[i]);
        if (i + 1 < n) lu += l.upper[i] * (u[i + 1] - u[i]);
        scratch[i] = u[i] + explicit_weight * lu;
    }
    implicit_.solve(scratch, u);
}

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& s : snapshots) t.push_back(s.time);
    return t;
}

RadialField radial_rhs(const RadialField& u, const DriftProfile& profile, OuterBoundary outer_bc,
                       Advection advection) {
    return RadialOperator(u.grid(), profile, outer_bc, advection).apply(u);
}

RadialField step(const RadialField& u, const DriftProfile& profile, const SolverConfig& config) {
    config.validate();
    RadialOperator op(u.grid(), profile, config.outer_bc, config.advection);
    ThetaStepper stepper(op, config.dt, config.theta);
    RadialField out = u;
    std::vector<double> scratch(u.size());
    stepper.advance(out.values(), scratch);
    return out;
}

Trajectory solve(const RadialField& u0, const DriftProfile& profile, const SolverConfig& config,
                 double t_end) {
    config.validate();
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("solve: t_end must be >= 0");

    Trajectory traj{{}, config, profile};
    traj.snapshots.push_back({0.0, u0});
    if (t_end == 0.0) return traj;

    const double dt = config.dt;
    auto full_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
    double remainder = t_end - static_cast<double>(full_steps) * dt;
    if (remainder < 1e-9 * dt) remainder = 0.0;
    const long total_steps = full_steps + (remainder > 0.0 ? 1 : 0);

    RadialOperator op(u0.grid(), profile, config.outer_bc, config.advection);
    ThetaStepper stepper(op, dt, config.theta);

    RadialField u = u0;
    std::vector<double> scratch(u.size());
    const auto stride = static_cast<long>(config.snapshot_stride);

    auto check_finite = [&](long k, double t) {
        for (double v : u.values()) {
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "solver diverged at step " << k << " (t = " << t << ")";
                throw DivergenceError(os.str(), k);
            }
        }
    };

    for (long k = 1; k <= full_steps; ++k) {
        stepper.advance(u.values(), scratch);
        const bool last = k == total_steps;
        const double t = last ? t_end : static_cast<double>(k) * dt;
        check_finite(k, t);
        if (last || k % stride == 0) traj.snapshots.push_back({t, u});
    }
    if (remainder > 0.0) {
        ThetaStepper short_step(op, remainder, config.theta);
        short_step.advance(u.values(), scratch);
        check_finite(total_steps, t_end);
        traj.snapshots.push_back({t_end, u});
    }
    return traj;
}

}  // namespace liftoff
