#include "liftoff/radial_grid.hpp"

#include <algorithm>
#include <cmath>

#include "liftoff/errors.hpp"

namespace liftoff {

RadialGrid::RadialGrid(double r_max, std::size_t num_nodes, int n_dim)
    : r_max_(r_max), num_nodes_(num_nodes), n_dim_(n_dim) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("r_max", "must be > 0");
    if (num_nodes < 3) throw ValidationError("num_nodes", "must be >= 3");
    if (n_dim < 1) throw ValidationError("n", "must be >= 1");
    h_ = r_max / static_cast<double>(num_nodes - 1);
}

std::vector<double> RadialGrid::radii() const {
    std::vector<double> r(num_nodes_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = radius(i);
    return r;
}

RadialField::RadialField(RadialGrid grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ValidationError("values", "length does not match the grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("values", "field values must be finite");
}

double RadialField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double RadialField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RadialField::at(double r) const {
    if (!(r >= 0.0) || r > grid_.r_max()) throw DomainError("field: radius outside grid");
    const double x = r / grid_.spacing();
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= values_.size()) return values_.back();
    const double s = x - static_cast<double>(i);
    return (1.0 - s) * values_[i] + s * values_[i + 1];
}

RadialField& RadialField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

RadialField& RadialField::operator+=(const RadialField& other) {
    if (!(other.grid_ == grid_)) throw DomainError("field: grids differ");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

RadialField operator*(double a, RadialField f) { return f *= a; }
RadialField operator+(RadialField a, const RadialField& b) { return a += b; }

}  // namespace liftoff
