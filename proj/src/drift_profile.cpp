#include "liftoff/drift_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "liftoff/errors.hpp"

namespace liftoff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* key) {
    if (!std::isfinite(x)) throw ValidationError(key, "must be finite");
}

}  // namespace

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::PowerLaw: return "powerlaw";
        case ProfileKind::LogCorrected: return "logcorrected";
        case ProfileKind::Linear: return "linear";
        case ProfileKind::Zero: return "zero";
        case ProfileKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

DriftProfile::DriftProfile(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const PowerLaw& p) {
                       require_finite(p.amplitude, "A");
                       require_finite(p.exponent, "beta");
                       require_finite(p.ramp_radius, "r0");
                       if (p.ramp_radius <= 0.0) throw ValidationError("r0", "must be > 0");
                   },
                   [](const LogCorrected& p) {
                       require_finite(p.alpha, "alpha");
                       require_finite(p.ramp_radius, "r0");
                       if (p.dimension < 1) throw ValidationError("n", "must be >= 1");
                       if (p.ramp_radius <= 1.0) throw ValidationError("r0", "must be > 1");
                   },
                   [](const Linear&) {},
                   [](const Zero&) {},
                   [](const Tabulated& t) {
                       if (t.radii.size() != t.values.size())
                           throw ValidationError("psi", "radius and value lists differ in length");
                       if (t.radii.size() < 2)
                           throw ValidationError("r", "need at least two samples");
                       for (std::size_t i = 0; i < t.radii.size(); ++i) {
                           require_finite(t.radii[i], "r");
                           require_finite(t.values[i], "psi");
                           if (i > 0 && !(t.radii[i] > t.radii[i - 1]))
                               throw ValidationError("r", "sample radii must be strictly increasing");
                       }
                       if (t.radii.front() != 0.0 || t.values.front() != 0.0)
                           throw ValidationError("r", "first sample must be (0, 0) so that psi(0) = 0");
                   },
               },
               v_);

    // Hermite cubic through the origin with zero slope there, matching the
    // far-field value and slope at r0: p(r) = c2 r^2 + c3 r^3.
    if (kind() == ProfileKind::PowerLaw || kind() == ProfileKind::LogCorrected) {
        const double r0 = ramp_radius();
        const double f = far_value(r0);
        const double df = far_derivative(r0);
        ramp_.radius = r0;
        ramp_.quadratic = (3.0 * f - df * r0) / (r0 * r0);
        ramp_.cubic = (df * r0 - 2.0 * f) / (r0 * r0 * r0);
    }
}

DriftProfile DriftProfile::power_law(double amplitude, double exponent, double ramp_radius) {
    return DriftProfile(PowerLaw{amplitude, exponent, ramp_radius});
}

DriftProfile DriftProfile::log_corrected(int dimension, double alpha, double ramp_radius) {
    return DriftProfile(LogCorrected{dimension, alpha, ramp_radius});
}

DriftProfile DriftProfile::tabulated(std::vector<double> radii, std::vector<double> values) {
    return DriftProfile(Tabulated{std::move(radii), std::move(values)});
}

double DriftProfile::ramp_radius() const noexcept {
    if (auto* p = std::get_if<PowerLaw>(&v_)) return p->ramp_radius;
    if (auto* p = std::get_if<LogCorrected>(&v_)) return p->ramp_radius;
    return 0.0;
}

double DriftProfile::max_radius() const noexcept {
    if (auto* t = std::get_if<Tabulated>(&v_)) return t->radii.back();
    return std::numeric_limits<double>::infinity();
}

double DriftProfile::far_value(double r) const {
    if (auto* p = std::get_if<PowerLaw>(&v_)) return p->amplitude * std::pow(r, p->exponent);
    const auto& p = std::get<LogCorrected>(v_);
    return (p.dimension + p.alpha / std::log(r)) / r;
}

double DriftProfile::far_derivative(double r) const {
    if (auto* p = std::get_if<PowerLaw>(&v_))
        return p->amplitude * p->exponent * std::pow(r, p->exponent - 1.0);
    const auto& p = std::get<LogCorrected>(v_);
    const double lr = std::log(r);
    return -p.dimension / (r * r) - p.alpha * (lr + 1.0) / (r * r * lr * lr);
}

double DriftProfile::far_cumulative(double from, double to) const {
    if (auto* p = std::get_if<PowerLaw>(&v_)) {
        const double k = p->exponent + 1.0;
        if (k == 0.0) return p->amplitude * std::log(to / from);
        return p->amplitude / k * (std::pow(to, k) - std::pow(from, k));
    }
    const auto& p = std::get<LogCorrected>(v_);
    return p.dimension * std::log(to / from) + p.alpha * std::log(std::log(to) / std::log(from));
}

double DriftProfile::operator()(double r) const {
    if (!(r >= 0.0)) throw DomainError("psi: radius must be >= 0");
    return std::visit(
        overloaded{
            [&](const Zero&) { return 0.0; },
            [&](const Linear&) { return r; },
            [&](const Tabulated& t) {
                if (r > t.radii.back()) {
                    std::ostringstream os;
                    os << "psi: radius " << r << " outside tabulated range [0, " << t.radii.back()
                       << "]";
                    throw OutOfRangeError(os.str());
                }
                auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
                if (it == t.radii.end()) return t.values.back();
                const auto k = static_cast<std::size_t>(it - t.radii.begin()) - 1;
                const double s = (r - t.radii[k]) / (t.radii[k + 1] - t.radii[k]);
                return (1.0 - s) * t.values[k] + s * t.values[k + 1];
            },
            [&](const auto&) {
                if (r >= ramp_.radius) return far_value(r);
                return r * r * (ramp_.quadratic + ramp_.cubic * r);
            },
        },
        v_);
}

double DriftProfile::derivative(double r) const {
    if (!(r >= 0.0)) throw DomainError("psi': radius must be >= 0");
    return std::visit(
        overloaded{
            [&](const Zero&) { return 0.0; },
            [&](const Linear&) { return 1.0; },
            [&](const Tabulated& t) {
                if (r > t.radii.back()) throw OutOfRangeError("psi': radius outside tabulated range");
                auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
                auto k = static_cast<std::size_t>(it - t.radii.begin());
                k = std::min(k, t.radii.size() - 1) - 1;
                return (t.values[k + 1] - t.values[k]) / (t.radii[k + 1] - t.radii[k]);
            },
            [&](const auto&) {
                if (r >= ramp_.radius) return far_derivative(r);
                return r * (2.0 * ramp_.quadratic + 3.0 * ramp_.cubic * r);
            },
        },
        v_);
}

double DriftProfile::cumulative(double r) const {
    if (!(r >= 0.0)) throw DomainError("cumulative psi: radius must be >= 0");
    return std::visit(
        overloaded{
            [&](const Zero&) { return 0.0; },
            [&](const Linear&) { return 0.5 * r * r; },
            [&](const Tabulated& t) {
                if (r > t.radii.back())
                    throw OutOfRangeError("cumulative psi: radius outside tabulated range");
                double acc = 0.0;
                for (std::size_t k = 0; k + 1 < t.radii.size(); ++k) {
                    const double a = t.radii[k];
                    const double b = t.radii[k + 1];
                    if (r <= a) break;
                    const double end = std::min(r, b);
                    const double s = (end - a) / (b - a);
                    const double value_end = (1.0 - s) * t.values[k] + s * t.values[k + 1];
                    acc += 0.5 * (end - a) * (t.values[k] + value_end);
                }
                return acc;
            },
            [&](const auto&) {
                auto ramp_integral = [&](double x) {
                    return x * x * x * (ramp_.quadratic / 3.0 + ramp_.cubic * x / 4.0);
                };
                if (r <= ramp_.radius) return ramp_integral(r);
                return ramp_integral(ramp_.radius) + far_cumulative(ramp_.radius, r);
            },
        },
        v_);
}

bool DriftProfile::nonnegative() const {
    return std::visit(
        overloaded{
            [](const Zero&) { return true; },
            [](const Linear&) { return true; },
            [](const Tabulated& t) {
                return std::all_of(t.values.begin(), t.values.end(), [](double v) { return v >= 0.0; });
            },
            [&](const PowerLaw& p) { return p.amplitude >= 0.0 && ramp_.quadratic >= 0.0; },
            [&](const LogCorrected& p) {
                const double worst = p.alpha >= 0.0 ? p.dimension
                                                    : p.dimension + p.alpha / std::log(p.ramp_radius);
                return worst >= 0.0 && ramp_.quadratic >= 0.0;
            },
        },
        v_);
}

bool DriftProfile::nonpositive() const {
    return std::visit(
        overloaded{
            [](const Zero&) { return true; },
            [](const Linear&) { return false; },
            [](const Tabulated& t) {
                return std::all_of(t.values.begin(), t.values.end(), [](double v) { return v <= 0.0; });
            },
            [&](const PowerLaw& p) { return p.amplitude <= 0.0 && ramp_.quadratic <= 0.0; },
            [](const LogCorrected&) { return false; },
        },
        v_);
}

std::string DriftProfile::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const PowerLaw& p) {
                       os << "powerlaw(A=" << p.amplitude << ", beta=" << p.exponent
                          << ", r0=" << p.ramp_radius << ")";
                   },
                   [&](const LogCorrected& p) {
                       os << "logcorrected(n=" << p.dimension << ", alpha=" << p.alpha
                          << ", r0=" << p.ramp_radius << ")";
                   },
                   [&](const Linear&) { os << "linear"; },
                   [&](const Zero&) { os << "zero"; },
                   [&](const Tabulated& t) { os << "tabulated(" << t.radii.size() << " samples)"; },
               },
               v_);
    return os.str();
}

}  // namespace liftoff
