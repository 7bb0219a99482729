#include "liftoff/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "liftoff/errors.hpp"

namespace liftoff {

namespace {

constexpr double kCriticalTolerance = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// phi(r_i) r_i^{n-1} on the grid nodes.
std::vector<double> radial_weights(const RadialGrid& grid, const WeightFunction* w) {
    std::vector<double> out(grid.size());
    const int n = grid.dimension();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double r = grid.radius(i);
        out[i] = (w ? (*w)(r) : 1.0) * std::pow(r, n - 1);
    }
    return out;
}

// Trapezoid of weights[i] * u[i] over [0, R].
double trapezoid_to(const RadialField& u, const std::vector<double>& weights, double R) {
    const auto& grid = u.grid();
    const double h = grid.spacing();
    if (!(R >= 0.0) || R > grid.r_max() * (1.0 + 1e-12))
        throw DomainError("weighted mass: radius outside [0, r_max]");
    R = std::min(R, grid.r_max());
    auto k = static_cast<std::size_t>(std::floor(R / h + 1e-9));
    k = std::min(k, grid.size() - 1);

    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        acc += 0.5 * h * (weights[i] * u[i] + weights[i + 1] * u[i + 1]);
    const double rest = R - grid.radius(k);
    if (rest > 1e-12 * h && k + 1 < grid.size()) {
        const double fk = weights[k] * u[k];
        const double fk1 = weights[k + 1] * u[k + 1];
        const double s = rest / h;
        acc += 0.5 * rest * (fk + ((1.0 - s) * fk + s * fk1));
    }
    return sphere_area(grid.dimension()) * acc;
}

// Trapezoid of f on [a, b] with about `per_unit` panels per unit length.
template <class F>
double integrate(F&& f, double a, double b, double per_unit) {
    if (b <= a) return 0.0;
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) * per_unit));
    const double h = (b - a) / static_cast<double>(panels);
    double acc = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < panels; ++i) acc += f(a + static_cast<double>(i) * h);
    return acc * h;
}

// int_R^inf phi(r) r^{n-1} dr from the far-field formula, R >= ramp radius.
// Only called for profiles that lift off in dimension n.
double analytic_tail(const DriftProfile& profile, int n, double R) {
    const WeightFunction w(profile);
    const double phi_R = w(R);
    if (phi_R == 0.0) return 0.0;
    const double nd = n;
    auto stretched_exponential = [&](double c, double k) {
        // phi(r) = phi(R) exp(-c (r^k - R^k)) beyond R.
        const double a = nd / k;
        const double x = c * std::pow(R, k);
        if (x > 700.0) return 0.0;
        const double upper = boost::math::tgamma(a, x);
        return phi_R * std::exp(x) * upper * std::pow(c, -a) / k;
    };
    switch (profile.kind()) {
        case ProfileKind::Linear: return stretched_exponential(0.5, 2.0);
        case ProfileKind::PowerLaw: {
            const auto& p = std::get<PowerLaw>(profile.variant());
            const double k = p.exponent + 1.0;
            if (k == 0.0) return phi_R * std::pow(R, nd) / (p.amplitude - nd);
            return stretched_exponential(p.amplitude / k, k);
        }
        case ProfileKind::LogCorrected: {
            const auto& p = std::get<LogCorrected>(profile.variant());
            return phi_R * std::pow(R, nd) * std::log(R) / (p.alpha - 1.0);
        }
        default: break;
    }
    throw PreconditionError("analytic tail requested for a profile without a finite phi-mass");
}

double tail_beyond(const DriftProfile& profile, int n, double R) {
    const double r0 = profile.ramp_radius();
    if (R >= r0) return analytic_tail(profile, n, R);
    const WeightFunction w(profile);
    const double near = integrate([&](double r) { return w(r) * std::pow(r, n - 1); }, R, r0, 1e4);
    return near + analytic_tail(profile, n, r0);
}

// Radius past which the quadrature is replaced by the analytic tail.
double quadrature_radius(const DriftProfile& profile) {
    const double r0 = profile.ramp_radius();
    switch (profile.kind()) {
        case ProfileKind::Linear: return std::sqrt(80.0);
        case ProfileKind::PowerLaw: {
            const auto& p = std::get<PowerLaw>(profile.variant());
            const double k = p.exponent + 1.0;
            if (k > 0.0) return std::max(r0, std::pow(40.0 * k / p.amplitude, 1.0 / k));
            return std::max(2.0 * r0, 20.0);
        }
        default: return std::max(2.0 * r0, 20.0);
    }
}

}  // namespace

double sphere_area(int n_dim) {
    if (n_dim < 1) throw DomainError("sphere_area: dimension must be >= 1");
    // |S^0| = 2, |S^1| = 2 pi, |S^{n+1}| = 2 pi |S^{n-1}| / n.
    double area = n_dim % 2 == 1 ? 2.0 : 2.0 * std::numbers::pi;
    for (int m = n_dim % 2 == 1 ? 1 : 2; m < n_dim; m += 2) area *= 2.0 * std::numbers::pi / m;
    return area;
}

WeightFunction::WeightFunction(DriftProfile profile, WeightPart part, QuadratureOptions options)
    : profile_(std::move(profile)), part_(part), options_(options) {
    if (!(options_.panels_per_unit > 0.0)) throw ValidationError("panels_per_unit", "must be > 0");
    const bool analytic = profile_.kind() != ProfileKind::Tabulated && !options_.force_quadrature;
    if (analytic) {
        if (part_ == WeightPart::Full || profile_.nonnegative()) {
            closed_form_ = true;
        } else if (profile_.nonpositive()) {
            closed_form_ = true;
            identically_zero_ = true;
        }
    }
    if (closed_form_) return;

    panel_ = 1.0 / options_.panels_per_unit;
    const double extent = std::min(options_.cache_radius, profile_.max_radius());
    const auto nodes = static_cast<std::size_t>(std::floor(extent / panel_)) + 1;
    table_.resize(nodes);
    table_[0] = 0.0;
    double prev = integrand(0.0);
    for (std::size_t k = 1; k < nodes; ++k) {
        const double cur = integrand(static_cast<double>(k) * panel_);
        table_[k] = table_[k - 1] + 0.5 * panel_ * (prev + cur);
        prev = cur;
    }
}

double WeightFunction::integrand(double r) const {
    const double v = profile_(r);
    return part_ == WeightPart::Full ? v : std::max(v, 0.0);
}

double WeightFunction::quadrature_from(std::size_t node, double r) const {
    const double a = static_cast<double>(node) * panel_;
    if (r <= a) return 0.0;
    const auto panels = static_cast<std::size_t>(std::ceil((r - a) / panel_ - 1e-9));
    const double h = (r - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
    double acc = 0.0;
    double prev = integrand(a);
    for (std::size_t i = 1; i <= std::max<std::size_t>(panels, 1); ++i) {
        const double cur = integrand(i == panels ? r : a + static_cast<double>(i) * h);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
    }
    return acc;
}

double WeightFunction::cumulative(double r) const {
    if (!(r >= 0.0)) throw DomainError("phi: radius must be >= 0");
    if (identically_zero_) return 0.0;
    if (closed_form_) return profile_.cumulative(r);
    auto node = static_cast<std::size_t>(std::floor(r / panel_));
    node = std::min(node, table_.size() - 1);
    return table_[node] + quadrature_from(node, r);
}

double weighted_mass(const RadialField& u, const WeightFunction& w, double R) {
    return trapezoid_to(u, radial_weights(u.grid(), &w), R);
}

double radial_mass(const RadialField& u, double R) {
    return trapezoid_to(u, radial_weights(u.grid(), nullptr), R);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::LiftOff: return "LiftOff";
        case Verdict::Decay: return "Decay";
        case Verdict::CriticalLiftOff: return "CriticalResolved(LiftOff)";
        case Verdict::CriticalDecay: return "CriticalResolved(Decay)";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

bool lifts_off(Verdict v) { return v == Verdict::LiftOff || v == Verdict::CriticalLiftOff; }
bool decays(Verdict v) { return v == Verdict::Decay || v == Verdict::CriticalDecay; }

ClassificationResult classify(const DriftProfile& profile, int n_dim) {
    if (n_dim < 1) throw DomainError("classify: dimension must be >= 1");
    const double n = n_dim;
    ClassificationResult res;
    std::ostringstream note;

    double limit = 0.0, positive = 0.0;
    switch (profile.kind()) {
        case ProfileKind::Zero: break;
        case ProfileKind::Linear: limit = positive = kInf; break;
        case ProfileKind::PowerLaw: {
            const auto& p = std::get<PowerLaw>(profile.variant());
            if (p.exponent > -1.0) {
                limit = p.amplitude > 0.0 ? kInf : (p.amplitude < 0.0 ? -kInf : 0.0);
                positive = p.amplitude > 0.0 ? kInf : 0.0;
            } else if (p.exponent == -1.0) {
                limit = p.amplitude;
                positive = std::max(p.amplitude, 0.0);
            }
            break;
        }
        case ProfileKind::LogCorrected:
            limit = positive = std::get<LogCorrected>(profile.variant()).dimension;
            break;
        case ProfileKind::Tabulated: {
            // Finite-range estimate over the upper half of the samples with log r > 1.
            const auto& t = std::get<Tabulated>(profile.variant());
            const WeightFunction plus(profile, WeightPart::Positive);
            double lo = kInf, hi = -kInf, hi_plus = -kInf;
            const double start = std::max(std::numbers::e, 0.5 * t.radii.back());
            for (double r : t.radii) {
                if (r < start) continue;
                const double avg = profile.cumulative(r) / std::log(r);
                lo = std::min(lo, avg);
                hi = std::max(hi, avg);
                hi_plus = std::max(hi_plus, plus.cumulative(r) / std::log(r));
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            res.growth_liminf = lo == kInf ? nan : lo;
            res.growth_limsup = hi == -kInf ? nan : hi;
            res.positive_growth = hi_plus == -kInf ? nan : hi_plus;
            res.verdict = Verdict::Undetermined;
            note << "undetermined at r -> inf: tabulated data cannot certify the growth condition; "
                 << "finite-range estimate of (1/log r) int_0^r psi in [" << res.growth_liminf << ", "
                 << res.growth_limsup << "]";
            res.certificate = note.str();
            return res;
        }
    }
    res.growth_liminf = res.growth_limsup = limit;
    res.positive_growth = positive;

    if (limit > n + kCriticalTolerance) {
        res.verdict = Verdict::LiftOff;
        note << "growth limit " << limit << " > n = " << n_dim;
    } else if (positive < n - kCriticalTolerance) {
        res.verdict = Verdict::Decay;
        note << "positive-part growth limit " << positive << " < n = " << n_dim << "; phi-mass infinite";
    } else if (std::abs(limit - n) <= kCriticalTolerance &&
               std::abs(positive - n) <= kCriticalTolerance) {
        if (profile.kind() == ProfileKind::LogCorrected) {
            const double alpha = std::get<LogCorrected>(profile.variant()).alpha;
            res.verdict = alpha > 1.0 ? Verdict::CriticalLiftOff : Verdict::CriticalDecay;
            note << "critical growth; phi(r) r^{n-1} ~ C / (r (log r)^alpha) with alpha = " << alpha
                 << (alpha > 1.0 ? ": integrable" : ": not integrable");
        } else {
            res.verdict = Verdict::CriticalDecay;
            note << "critical growth; phi(r) r^{n-1} ~ C / r: not integrable";
        }
    } else {
        res.verdict = Verdict::Undetermined;
        note << "growth limits straddle n (full " << limit << ", positive part " << positive << ")";
    }

    if (lifts_off(res.verdict)) {
        const WeightFunction w(profile);
        const double R = quadrature_radius(profile);
        const double body =
            integrate([&](double r) { return w(r) * std::pow(r, n_dim - 1); }, 0.0, R, 1e4);
        const double tail = analytic_tail(profile, n_dim, R);
        const double area = sphere_area(n_dim);
        res.quadrature_radius = R;
        res.phi_mass_tail = area * tail;
        res.phi_mass = area * (body + tail);
        note << "; phi-mass " << res.phi_mass << " (analytic tail beyond r = " << R << ": "
             << res.phi_mass_tail << ")";
    }
    res.certificate = note.str();
    return res;
}

LiftoffPrediction predict_liftoff_level(const RadialField& u0, const WeightFunction& w, int n_dim) {
    if (w.part() != WeightPart::Full)
        throw PreconditionError("predict_liftoff_level: requires the full-psi weight");
    const auto cls = classify(w.profile(), n_dim);
    if (!lifts_off(cls.verdict))
        throw PreconditionError("predict_liftoff_level: phi-mass is infinite (verdict " +
                                to_string(cls.verdict) + ")");
    if (u0.grid().dimension() != n_dim)
        throw PreconditionError("predict_liftoff_level: field dimension differs from n_dim");

    const auto& grid = u0.grid();
    const double R = grid.r_max();
    const RadialField ones(grid, 1.0);
    const auto weights = radial_weights(grid, &w);

    LiftoffPrediction out;
    out.initial_weighted_mass = trapezoid_to(u0, weights, R);
    const double body = trapezoid_to(ones, weights, R);
    out.tail_mass = sphere_area(n_dim) * tail_beyond(w.profile(), n_dim, R);
    out.phi_mass = body + out.tail_mass;
    out.truncated_level = out.initial_weighted_mass / body;
    // Beyond r_max the initial datum is taken to stay at its outermost value.
    out.level = (out.initial_weighted_mass + u0[grid.size() - 1] * out.tail_mass) / out.phi_mass;
    return out;
}

double DiagnosticSeries::max_relative_drift() const {
    double worst = 0.0;
    if (weighted_mass.empty()) return worst;
    const double ref = weighted_mass.front();
    const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
    for (double v : weighted_mass) worst = std::max(worst, std::abs(v - ref) / scale);
    return worst;
}

double DiagnosticSeries::max_relative_increase() const {
    double worst = -kInf;
    for (std::size_t k = 1; k < weighted_mass.size(); ++k) {
        const double scale = weighted_mass[k - 1] != 0.0 ? std::abs(weighted_mass[k - 1]) : 1.0;
        worst = std::max(worst, (weighted_mass[k] - weighted_mass[k - 1]) / scale);
    }
    return worst == -kInf ? 0.0 : worst;
}

DiagnosticSeries diagnostics(const Trajectory& traj, const WeightFunction& w, double R) {
    DiagnosticSeries out;
    out.radius = R;
    if (traj.snapshots.empty()) return out;
    const auto& grid = traj.front().field.grid();
    if (!(R >= 0.0) || R > grid.r_max() * (1.0 + 1e-12))
        throw DomainError("diagnostics: radius outside [0, r_max]");
    const auto weights = radial_weights(grid, &w);
    const auto plain = radial_weights(grid, nullptr);
    for (const auto& snap : traj.snapshots) {
        out.times.push_back(snap.time);
        out.weighted_mass.push_back(trapezoid_to(snap.field, weights, R));
        out.sup.push_back(snap.field.max());
        out.center.push_back(snap.field.center());
        out.mass.push_back(trapezoid_to(snap.field, plain, grid.r_max()));
    }
    return out;
}

}  // namespace liftoff
