#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace liftoff {

/// Uniform grid on [0, r_max] for the radial reduction in R^n.
class RadialGrid {
public:
    /// Throws ValidationError unless r_max > 0, num_nodes >= 3 and n_dim >= 1.
    RadialGrid(double r_max, std::size_t num_nodes, int n_dim);

    double r_max() const noexcept { return r_max_; }
    std::size_t size() const noexcept { return num_nodes_; }
    int dimension() const noexcept { return n_dim_; }
    double spacing() const noexcept { return h_; }

    /// r_i = i h; the last node is exactly r_max.
    double radius(std::size_t i) const noexcept {
        return i + 1 == num_nodes_ ? r_max_ : static_cast<double>(i) * h_;
    }
    std::vector<double> radii() const;

    friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

private:
    double r_max_;
    std::size_t num_nodes_;
    int n_dim_;
    double h_;
};

/// Nodal values of a radially symmetric function u(|x|).
class RadialField {
public:
    explicit RadialField(RadialGrid grid, double fill = 0.0);
    /// Throws ValidationError if the length differs from the grid or a value is not finite.
    RadialField(RadialGrid grid, std::vector<double> values);

    template <class F>
    static RadialField sample(const RadialGrid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.radius(i));
        return RadialField(grid, std::move(v));
    }

    const RadialGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    double max() const;
    double min() const;
    double center() const noexcept { return values_.front(); }

    /// Linear interpolation at radius r in [0, r_max].
    double at(double r) const;

    RadialField& operator*=(double a);
    RadialField& operator+=(const RadialField& other);

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

RadialField operator*(double a, RadialField f);
RadialField operator+(RadialField a, const RadialField& b);

}  // namespace liftoff
