#include "becent/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace becent {

RadialGrid::RadialGrid(double r_max, std::size_t n_points) : r_max_(r_max) {
    if (!(r_max > 0.0))
        throw std::invalid_argument("RadialGrid: r_max must be positive");
    if (n_points < min_points)
        throw std::invalid_argument("RadialGrid: need at least " +
                                    std::to_string(min_points) + " points, got " +
                                    std::to_string(n_points));
    spacing_ = r_max / static_cast<double>(n_points - 1);
    nodes_.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        nodes_[i] = static_cast<double>(i) * spacing_;
    nodes_.back() = r_max;
}

RadialFunction::RadialFunction(RadialGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.n_points())
        throw std::invalid_argument("RadialFunction: " + std::to_string(values.size()) +
                                    " samples on a grid of " +
                                    std::to_string(grid.n_points()) + " nodes");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("RadialFunction: non-finite sample at index " +
                                        std::to_string(i));
}

std::vector<double> quadrature_weights(std::size_t n, double spacing) {
    if (n < 4)
        throw std::invalid_argument("quadrature_weights: need at least 4 samples");
    std::vector<double> w(n, 0.0);
    if (n == 4) {
        const double c = 3.0 * spacing / 8.0;
        w = {c, 3.0 * c, 3.0 * c, c};
        return w;
    }
    // Composite Simpson needs an even interval count; with an odd count the
    // last three intervals get the 3/8 rule.
    std::size_t m = (n % 2 == 1) ? n : n - 3;
    w[0] = spacing / 3.0;
    for (std::size_t i = 1; i + 1 < m; ++i)
        w[i] = (i % 2 == 1 ? 4.0 : 2.0) * spacing / 3.0;
    w[m - 1] += spacing / 3.0;
    if (n % 2 == 0) {
        const double c = 3.0 * spacing / 8.0;
        w[n - 4] += c;
        w[n - 3] += 3.0 * c;
        w[n - 2] += 3.0 * c;
        w[n - 1] += c;
    }
    return w;
}

double integrate_samples(std::span<const double> values, double spacing) {
    const auto w = quadrature_weights(values.size(), spacing);
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += w[i] * values[i];
    return sum;
}

double integrate_radial(const RadialFunction& f) {
    const auto& r = f.grid.nodes();
    const auto w = quadrature_weights(f.values.size(), f.grid.spacing());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!std::isfinite(f.values[i]))
            throw std::invalid_argument("integrate_radial: non-finite sample at index " +
                                        std::to_string(i));
        sum += w[i] * f.values[i] * r[i] * r[i];
    }
    return 4.0 * M_PI * sum;
}

RadialFunction second_derivative(const RadialFunction& f) {
    const std::size_t n = f.values.size();
    if (n < 5)
        throw std::invalid_argument("second_derivative: need at least 5 points");
    const double h2 = f.grid.spacing() * f.grid.spacing();
    const auto& v = f.values;
    std::vector<double> d(n);
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    return {f.grid, std::move(d)};
}

} // namespace becent
