#include "becent/momentum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace becent {

MomentumGrid::MomentumGrid(double k_max, std::size_t n_points) : k_max_(k_max) {
    if (!(k_max > 0.0))
        throw std::invalid_argument("MomentumGrid: k_max must be positive");
    if (n_points < RadialGrid::min_points)
        throw std::invalid_argument("MomentumGrid: need at least " +
                                    std::to_string(RadialGrid::min_points) + " points");
    spacing_ = k_max / static_cast<double>(n_points - 1);
    nodes_.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        nodes_[i] = static_cast<double>(i) * spacing_;
    nodes_.back() = k_max;
}

MomentumGrid MomentumGrid::conjugate(const RadialGrid& source) {
    return {M_PI / source.spacing(), source.n_points()};
}

MomentumFunction::MomentumFunction(MomentumGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.n_points())
        throw std::invalid_argument("MomentumFunction: sample count does not match grid");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("MomentumFunction: non-finite sample at index " +
                                        std::to_string(i));
}

double integrate_momentum(const MomentumFunction& f) {
    const auto& k = f.grid.nodes();
    const auto w = quadrature_weights(f.values.size(), f.grid.spacing());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        sum += w[i] * f.values[i] * k[i] * k[i];
    return 4.0 * M_PI * sum;
}

DensityPair to_momentum(const RadialFunction& psi, const MomentumGrid& kgrid) {
    const auto& r = psi.grid.nodes();
    const std::size_t nr = r.size();
    const double h = psi.grid.spacing();

    std::vector<double> rho(nr);
    for (std::size_t i = 0; i < nr; ++i)
        rho[i] = psi.values[i] * psi.values[i];
    const double rho_norm = integrate_radial({psi.grid, rho});
    if (std::abs(rho_norm - 1.0) > 1e-6)
        throw std::invalid_argument("to_momentum: psi not normalized (|psi|^2 integrates to " +
                                    std::to_string(rho_norm) + ")");

    // Trapezoid weights for the sine-kernel integral: Simpson's alternating
    // 4/2 pattern carries a π/h component that folds low-k amplitude into the
    // Nyquist band. The integrand vanishes at both ends, so the trapezoid sum
    // converges spectrally.
    std::vector<double> integrand(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        const double wt = (i == 0 || i + 1 == nr) ? 0.5 * h : h;
        integrand[i] = wt * psi.values[i] * r[i];
    }

    const double front = std::sqrt(2.0 / M_PI);
    const std::size_t nk = kgrid.n_points();
    std::vector<double> nk_values(nk);
    {
        // k = 0 limit: φ(0) = √(2/π) ∫ ψ r² dr
        double s = 0.0;
        for (std::size_t i = 0; i < nr; ++i)
            s += integrand[i] * r[i];
        nk_values[0] = front * s;
        nk_values[0] *= nk_values[0];
    }
    for (std::size_t j = 1; j < nk; ++j) {
        const double k = kgrid.node(j);
        double s = 0.0;
        for (std::size_t i = 0; i < nr; ++i)
            s += integrand[i] * std::sin(k * r[i]);
        const double phi = front * s / k;
        nk_values[j] = phi * phi;
    }

    const double norm = integrate_momentum({kgrid, nk_values});
    const double defect = std::abs(norm - 1.0);
    if (defect > 1e-3)
        throw std::runtime_error(
            "to_momentum: n(k) normalization defect " + std::to_string(defect) +
            " before renormalization; increase k_max or refine the radial grid");
    for (auto& v : nk_values)
        v /= norm;

    return {RadialFunction(psi.grid, std::move(rho)),
            MomentumFunction(kgrid, std::move(nk_values)), defect};
}

DensityPair to_momentum(const RadialFunction& psi) {
    return to_momentum(psi, MomentumGrid::conjugate(psi.grid));
}

} // namespace becent
