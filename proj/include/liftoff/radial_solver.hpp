#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "liftoff/drift_profile.hpp"
#include "liftoff/radial_grid.hpp"

namespace liftoff {

enum class OuterBoundary {
    NeumannZero,      ///< u_r(r_max) = 0 via the mirror ghost node
    DirichletFrozen,  ///< u(r_max) held at its initial value
};

enum class Advection { Centered, Upwind };

std::string to_string(OuterBoundary bc);
std::string to_string(Advection adv);

struct SolverConfig {
    double dt = 1e-3;
    double theta = 0.5;  ///< 0.5 Crank-Nicolson, 1 backward Euler
    OuterBoundary outer_bc = OuterBoundary::DirichletFrozen;
    Advection advection = Advection::Centered;
    std::size_t snapshot_stride = 100;

    /// Throws ValidationError unless dt > 0, theta in [0, 1], stride >= 1.
    void validate() const;
};

/// Tridiagonal matrix stored by diagonals. Row i couples i-1, i, i+1;
/// lower[0] and upper[size-1] are unused.
struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    std::size_t size() const noexcept { return diag.size(); }
    void apply(std::span<const double> x, std::span<double> y) const;
};

/// LU factorization of a tridiagonal system (Thomas algorithm, no pivoting).
/// Construction throws SolverError on a zero or non-finite pivot.
class TridiagonalSolver {
public:
    explicit TridiagonalSolver(const Tridiagonal& a);
    void solve(std::span<const double> rhs, std::span<double> x) const;

private:
    std::vector<double> lower_, inv_pivot_, upper_;
};

/// Discrete radial operator L u ~ u_rr + ((n-1)/r) u_r - psi(r) u_r.
///
/// Interior rows use second-order centered differences for u_rr. The first
/// order coefficient c(r) = (n-1)/r - psi(r) is either centered or upwinded,
/// the latter giving non-negative off-diagonals for every h. The origin row
/// uses Delta u(0) = n u_rr(0) with the ghost relation u(-h) = u(h). For a
/// Dirichlet-frozen outer boundary the last row is zero; for Neumann-zero it
/// uses the mirror ghost u(r_max + h) = u(r_max - h).
class RadialOperator {
public:
    RadialOperator(const RadialGrid& grid, const DriftProfile& profile,
                   OuterBoundary outer_bc = OuterBoundary::DirichletFrozen,
                   Advection advection = Advection::Centered);

    const RadialGrid& grid() const noexcept { return grid_; }
    const Tridiagonal& matrix() const noexcept { return matrix_; }
    OuterBoundary outer_bc() const noexcept { return outer_bc_; }

    RadialField apply(const RadialField& u) const;

    /// True when every off-diagonal entry is non-negative (so I - dt L is an
    /// M-matrix for every dt > 0).
    bool off_diagonals_nonnegative() const;

private:
    RadialGrid grid_;
    OuterBoundary outer_bc_;
    Tridiagonal matrix_;
};

/// Theta-scheme propagator for a fixed step size:
/// (I - theta dt L) u_new = (I + (1 - theta) dt L) u_old.
class ThetaStepper {
public:
    ThetaStepper(const RadialOperator& op, double dt, double theta);

    double dt() const noexcept { return dt_; }
    /// Advances `u` in place; `scratch` must have the grid's size.
    void advance(std::span<double> u, std::span<double> scratch) const;

private:
    const RadialOperator* op_;
    double dt_, theta_;
    TridiagonalSolver implicit_;
};

struct Snapshot {
    double time;
    RadialField field;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    SolverConfig config;
    DriftProfile profile;

    const Snapshot& front() const { return snapshots.front(); }
    const Snapshot& back() const { return snapshots.back(); }
    std::size_t size() const noexcept { return snapshots.size(); }
    std::vector<double> times() const;
};

/// L u with the given boundary treatment.
RadialField radial_rhs(const RadialField& u, const DriftProfile& profile,
                       OuterBoundary outer_bc = OuterBoundary::DirichletFrozen,
                       Advection advection = Advection::Centered);

/// One theta-scheme step of size config.dt.
RadialField step(const RadialField& u, const DriftProfile& profile, const SolverConfig& config);

/// Integrates to t_end. Snapshots are taken at t = 0, every snapshot_stride
/// steps and at t_end; the final step is shortened so that it lands on t_end.
/// Throws DivergenceError naming the step if a value becomes non-finite.
Trajectory solve(const RadialField& u0, const DriftProfile& profile, const SolverConfig& config,
                 double t_end);

}  // namespace liftoff
