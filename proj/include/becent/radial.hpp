// Uniform radial grids and quadrature for spherically symmetric 3D integrals.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace becent {

/// Uniform mesh r_i = i * spacing on [0, r_max].
class RadialGrid {
public:
    static constexpr std::size_t min_points = 64;

    RadialGrid(double r_max, std::size_t n_points);

    double r_max() const noexcept { return r_max_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t n_points() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const noexcept { return nodes_[i]; }

    bool operator==(const RadialGrid& other) const noexcept = default;

private:
    double r_max_;
    double spacing_;
    std::vector<double> nodes_;
};

/// Real-valued samples f(r_i) on a RadialGrid. Immutable after construction.
struct RadialFunction {
    RadialFunction(RadialGrid grid, std::vector<double> values);

    RadialGrid grid;
    std::vector<double> values;
};

/// Composite Simpson weights for n uniformly spaced samples (3/8 rule absorbs
/// an odd interval count). n >= 4.
std::vector<double> quadrature_weights(std::size_t n, double spacing);

/// Simpson integral of uniformly spaced samples.
double integrate_samples(std::span<const double> values, double spacing);

/// ∫ f(r) 4π r² dr over the grid. Rejects non-finite samples.
double integrate_radial(const RadialFunction& f);

/// Centered second derivative, one-sided O(h²) stencils at the ends.
RadialFunction second_derivative(const RadialFunction& f);

} // namespace becent
