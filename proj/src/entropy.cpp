#include "becent/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace becent {

namespace {

double entropy_integral(const std::vector<double>& p, const std::vector<double>& x,
                        double spacing, const char* what) {
    const auto w = quadrature_weights(p.size(), spacing);
    double norm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12)
            throw std::invalid_argument(std::string(what) + ": negative density " +
                                        std::to_string(p[i]) + " at index " +
                                        std::to_string(i));
        norm += w[i] * p[i] * x[i] * x[i];
    }
    norm *= 4.0 * M_PI;
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": density integrates to " +
                                    std::to_string(norm) + ", expected 1");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > entropy_floor)
            s += w[i] * p[i] * std::log(p[i]) * x[i] * x[i];
    return -4.0 * M_PI * s;
}

// Moment of x^power over the density, plus the share contributed by the top
// 10% of the coordinate range.
std::pair<double, double> moment_with_tail(const std::vector<double>& p,
                                           const std::vector<double>& x,
                                           double spacing, int power) {
    const auto w = quadrature_weights(p.size(), spacing);
    const double x_tail = 0.9 * x.back();
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double term = w[i] * p[i] * std::pow(x[i], power + 2);
        total += term;
        if (x[i] >= x_tail)
            tail += term;
    }
    total *= 4.0 * M_PI;
    tail *= 4.0 * M_PI;
    return {total, tail};
}

} // namespace

double shannon_entropy(const RadialFunction& density) {
    return entropy_integral(density.values, density.grid.nodes(),
                            density.grid.spacing(), "shannon_entropy(position)");
}

double shannon_entropy(const MomentumFunction& density) {
    return entropy_integral(density.values, density.grid.nodes(),
                            density.grid.spacing(), "shannon_entropy(momentum)");
}

Moments moments(const DensityPair& pair) {
    const auto [msr, msr_tail] =
        moment_with_tail(pair.rho.values, pair.rho.grid.nodes(),
                         pair.rho.grid.spacing(), 2);
    auto [ksq, ksq_tail] = moment_with_tail(pair.nk.values, pair.nk.grid.nodes(),
                                            pair.nk.grid.spacing(), 2);
    const double kinetic = 0.5 * ksq;
    const bool warn = msr_tail > 1e-6 * std::abs(msr) || ksq_tail > 1e-6 * std::abs(ksq);
    return {kinetic, msr, warn};
}

EurBounds eur_bounds(double kinetic, double mean_square_radius) {
    if (!(kinetic > 0.0) || !(mean_square_radius > 0.0))
        throw std::invalid_argument("eur_bounds: T and <r^2> must be positive");
    const double lt = 1.5 * std::log(4.0 / 3.0 * kinetic);
    const double lr = 1.5 * std::log(2.0 / 3.0 * mean_square_radius);
    EurBounds b;
    b.s_r_min = gaussian_entropy_3d - lt;
    b.s_r_max = gaussian_entropy_3d + lr;
    b.s_k_min = gaussian_entropy_3d - lr;
    b.s_k_max = gaussian_entropy_3d + lt;
    b.s_min = entropy_sum_bound;
    b.s_max = entropy_sum_bound +
              1.5 * std::log(8.0 / 9.0 * mean_square_radius * kinetic);
    return b;
}

double landsberg_omega(double s_total, double s_max) {
    if (!(s_max > 0.0))
        throw std::invalid_argument("landsberg_omega: s_max must be positive");
    if (s_total > s_max + 1e-6)
        throw std::runtime_error("landsberg_omega: S = " + std::to_string(s_total) +
                                 " exceeds S(max) = " + std::to_string(s_max) +
                                 "; upstream numerics are suspect");
    const double omega = 1.0 - s_total / s_max;
    return omega < 0.0 ? 0.0 : omega;
}

EntropyReport make_entropy_report(long n_particles, const DensityPair& pair) {
    EntropyReport rep;
    rep.n_particles = n_particles;
    rep.s_r = shannon_entropy(pair.rho);
    rep.s_k = shannon_entropy(pair.nk);
    rep.s_total = rep.s_r + rep.s_k;
    const Moments m = moments(pair);
    rep.kinetic = m.kinetic;
    rep.mean_square_radius = m.mean_square_radius;
    rep.tail_warning = m.tail_warning;
    rep.bounds = eur_bounds(m.kinetic, m.mean_square_radius);
    rep.omega = landsberg_omega(rep.s_total, rep.bounds.s_max);
    return rep;
}

} // namespace becent
