#pragma once

#include <string>
#include <variant>
#include <vector>

namespace liftoff {

// Scalar drift profiles psi: [0, inf) -> R. The advection field is
// b(x) = -(x/|x|) psi(|x|), so positive psi pushes mass outward and the
// radial equation reads u_t = u_rr + ((n-1)/r) u_r - psi(r) u_r.

/// psi(r) = A r^beta for r >= r0, cubic ramp to zero on [0, r0].
struct PowerLaw {
    double amplitude = 1.0;
    double exponent = -1.0;
    double ramp_radius = 1.0;
};

/// psi(r) = (1/r)(n + alpha / log r) for r >= r0 > 1, cubic ramp below.
struct LogCorrected {
    int dimension = 2;
    double alpha = 1.0;
    double ramp_radius = 2.718281828459045;
};

/// psi(r) = r, i.e. b(x) = -x.
struct Linear {};

struct Zero {};

/// Piecewise-linear interpolation through (radius, value) samples.
struct Tabulated {
    std::vector<double> radii;
    std::vector<double> values;
};

enum class ProfileKind { PowerLaw, LogCorrected, Linear, Zero, Tabulated };

std::string to_string(ProfileKind kind);

class DriftProfile {
public:
    using Variant = std::variant<PowerLaw, LogCorrected, Linear, Zero, Tabulated>;

    /// Validates the parameters; throws ValidationError on bad input.
    explicit DriftProfile(Variant v);
    DriftProfile() : DriftProfile(Zero{}) {}

    static DriftProfile power_law(double amplitude, double exponent, double ramp_radius = 1.0);
    static DriftProfile log_corrected(int dimension, double alpha,
                                      double ramp_radius = 2.718281828459045);
    static DriftProfile linear() { return DriftProfile(Linear{}); }
    static DriftProfile zero() { return DriftProfile(Zero{}); }
    static DriftProfile tabulated(std::vector<double> radii, std::vector<double> values);

    ProfileKind kind() const noexcept { return static_cast<ProfileKind>(v_.index()); }
    const Variant& variant() const noexcept { return v_; }

    /// psi(r), ramp included. Throws OutOfRangeError for tabulated queries
    /// outside the sample range and DomainError for r < 0.
    double operator()(double r) const;

    /// d psi / dr. One-sided at the tabulated knots.
    double derivative(double r) const;

    /// Closed-form cumulative integral int_0^r psi, when the family has one.
    /// Tabulated profiles return the exact integral of the interpolant.
    double cumulative(double r) const;

    /// Radius beyond which the far-field formula holds exactly (0 if none).
    double ramp_radius() const noexcept;

    /// True when psi >= 0 (resp. <= 0) everywhere on its domain.
    bool nonnegative() const;
    bool nonpositive() const;

    /// Largest radius at which the profile can be evaluated.
    double max_radius() const noexcept;

    std::string describe() const;

private:
    struct Ramp {
        double quadratic = 0.0;  // p(r) = quadratic r^2 + cubic r^3 on [0, r0]
        double cubic = 0.0;
        double radius = 0.0;
    };

    double far_value(double r) const;
    double far_derivative(double r) const;
    double far_cumulative(double from, double to) const;

    Variant v_;
    Ramp ramp_;
};

/// Free-function form used throughout the lab.
inline double eval_psi(const DriftProfile& profile, double r) { return profile(r); }

}  // namespace liftoff
