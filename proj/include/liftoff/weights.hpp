#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "liftoff/drift_profile.hpp"
#include "liftoff/radial_grid.hpp"
#include "liftoff/radial_solver.hpp"

namespace liftoff {

/// Surface area of the unit sphere S^{n-1} in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n_dim);

enum class WeightPart {
    Full,      ///< phi' + phi psi = 0
    Positive,  ///< phi' + phi max(psi, 0) = 0
};

struct QuadratureOptions {
    double panels_per_unit = 1e4;
    double cache_radius = 100.0;  ///< cumulative table is stored on [0, cache_radius]
    bool force_quadrature = false;
};

/// phi(r) = exp(-int_0^r psi) (or psi_+). Closed-form antiderivatives are used
/// where the profile family provides them; otherwise a cumulative trapezoid
/// table on a fine uniform quadrature grid.
class WeightFunction {
public:
    explicit WeightFunction(DriftProfile profile, WeightPart part = WeightPart::Full,
                            QuadratureOptions options = {});

    const DriftProfile& profile() const noexcept { return profile_; }
    WeightPart part() const noexcept { return part_; }
    bool uses_closed_form() const noexcept { return closed_form_; }

    /// int_0^r of psi or psi_+.
    double cumulative(double r) const;
    double operator()(double r) const { return std::exp(-cumulative(r)); }

private:
    double integrand(double r) const;
    double quadrature_from(std::size_t node, double r) const;

    DriftProfile profile_;
    WeightPart part_;
    QuadratureOptions options_;
    bool closed_form_ = false;
    bool identically_zero_ = false;
    double panel_ = 0.0;
    std::vector<double> table_;
};

inline double phi(const WeightFunction& w, double r) { return w(r); }

/// I_R = |S^{n-1}| int_0^R phi(r) u(r) r^{n-1} dr by the trapezoid rule on the
/// field's grid, with a partial last panel when R is not a node.
/// Throws DomainError if R > r_max or R < 0.
double weighted_mass(const RadialField& u, const WeightFunction& w, double R);

/// Same integral with phi == 1.
double radial_mass(const RadialField& u, double R);

enum class Verdict { LiftOff, Decay, CriticalLiftOff, CriticalDecay, Undetermined };

std::string to_string(Verdict v);
/// True for LiftOff and CriticalLiftOff.
bool lifts_off(Verdict v);
/// True for Decay and CriticalDecay.
bool decays(Verdict v);

struct ClassificationResult {
    Verdict verdict = Verdict::Undetermined;
    /// liminf / limsup of (1/log r) int_0^r psi. Equal for the analytic families.
    double growth_liminf = 0.0;
    double growth_limsup = 0.0;
    /// limsup of the same average for psi_+.
    double positive_growth = 0.0;
    /// |S^{n-1}| int_0^inf phi r^{n-1} dr for the full weight; +inf if divergent.
    double phi_mass = std::numeric_limits<double>::infinity();
    /// Analytic tail beyond the quadrature radius, already included in phi_mass.
    double phi_mass_tail = 0.0;
    double quadrature_radius = 0.0;
    std::string certificate;
};

/// Decides lift-off vs. decay from the growth of int_0^r psi against log r.
/// Critical cases (limit equal to n) are settled by the integrability of
/// phi(r) r^{n-1}, symbolically. Tabulated profiles are never given an
/// asymptotic verdict.
ClassificationResult classify(const DriftProfile& profile, int n_dim);

struct LiftoffPrediction {
    /// I(0) / int_{R^n} phi, the denominator including the analytic tail.
    double level = 0.0;
    /// Both integrals cut at the grid radius.
    double truncated_level = 0.0;
    double initial_weighted_mass = 0.0;
    double phi_mass = 0.0;
    /// |S^{n-1}| int_{r_max}^inf phi r^{n-1}.
    double tail_mass = 0.0;
};

/// Predicted constant the solution settles to. Throws PreconditionError if the
/// profile does not lift off in dimension n_dim or the weight is not the full one.
LiftoffPrediction predict_liftoff_level(const RadialField& u0, const WeightFunction& w, int n_dim);

struct DiagnosticSeries {
    double radius = 0.0;
    std::vector<double> times;
    std::vector<double> weighted_mass;
    std::vector<double> sup;
    std::vector<double> center;
    std::vector<double> mass;

    std::size_t size() const noexcept { return times.size(); }
    /// max_k |I_R(t_k) / I_R(0) - 1|.
    double max_relative_drift() const;
    /// Largest relative increase between consecutive rows of I_R.
    double max_relative_increase() const;
};

DiagnosticSeries diagnostics(const Trajectory& traj, const WeightFunction& w, double R);

}  // namespace liftoff
