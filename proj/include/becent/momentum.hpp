// Spherical Fourier transform of the radial wavefunction and the paired
// position/momentum densities.
#pragma once

#include <cstddef>
#include <vector>

#include "becent/radial.hpp"

namespace becent {

/// Uniform mesh k_i = i * spacing on [0, k_max].
class MomentumGrid {
public:
    MomentumGrid(double k_max, std::size_t n_points);

    /// Grid conjugate to a radial mesh: k_max = π / spacing, same point count,
    /// so Δk = π / r_max.
    static MomentumGrid conjugate(const RadialGrid& source);

    double k_max() const noexcept { return k_max_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t n_points() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const noexcept { return nodes_[i]; }

    bool operator==(const MomentumGrid& other) const noexcept = default;

private:
    double k_max_;
    double spacing_;
    std::vector<double> nodes_;
};

/// Samples f(k_i) on a MomentumGrid.
struct MomentumFunction {
    MomentumFunction(MomentumGrid grid, std::vector<double> values);

    MomentumGrid grid;
    std::vector<double> values;
};

/// ∫ f(k) 4π k² dk over the grid.
double integrate_momentum(const MomentumFunction& f);

/// Matched normalized densities ρ(r) and n(k).
struct DensityPair {
    RadialFunction rho;
    MomentumFunction nk;
    double nk_norm_defect; // |norm - 1| of n(k) before renormalization
};

/// φ(k) = √(2/π) (1/k) ∫ ψ(r) sin(kr) r dr, n(k) = φ(k)² renormalized.
/// ψ must be normalized: ∫ ψ² 4π r² dr = 1 ± 1e-6.
DensityPair to_momentum(const RadialFunction& psi, const MomentumGrid& kgrid);

/// Same, on the conjugate momentum grid.
DensityPair to_momentum(const RadialFunction& psi);

} // namespace becent
