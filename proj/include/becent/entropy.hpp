// Shannon information entropies of conjugate densities, moments, the
// entropic-uncertainty bounds, and the Landsberg order parameter.
#pragma once

#include "becent/momentum.hpp"
#include "becent/radial.hpp"

namespace becent {

// (3/2)(1 + ln π): entropy of the unit Gaussian density in 3D, and half of
// the uncertainty bound on S_r + S_k.
inline constexpr double gaussian_entropy_3d = 3.2170948287741;
// 3(1 + ln π): lower bound on S = S_r + S_k for conjugate 3D densities.
inline constexpr double entropy_sum_bound = 6.4341896575482;

// Samples below this contribute 0 to -∫ p ln p (the p ln p → 0 limit).
inline constexpr double entropy_floor = 1e-30;

/// -∫ p ln p d³r for a normalized density (nats).
double shannon_entropy(const RadialFunction& density);
/// -∫ p ln p d³k for a normalized momentum density (nats).
double shannon_entropy(const MomentumFunction& density);

struct Moments {
    double kinetic;            // T = ∫ n(k) k²/2 d³k, per particle
    double mean_square_radius; // ⟨r²⟩ = ∫ ρ r² d³r
    bool tail_warning;         // last 10% of either grid carries > 1e-6 of its moment
};

Moments moments(const DensityPair& pair);

struct EurBounds {
    double s_r_min, s_r_max;
    double s_k_min, s_k_max;
    double s_min, s_max;
};

/// Rigorous entropy bounds from T and ⟨r²⟩ (densities normalized to one).
EurBounds eur_bounds(double kinetic, double mean_square_radius);

/// Ω = 1 - S/S(max). Throws if s_total exceeds s_max beyond tolerance.
double landsberg_omega(double s_total, double s_max);

/// Everything derived from one DensityPair.
struct EntropyReport {
    long n_particles; // 0 when not applicable (ingested data)
    double s_r, s_k, s_total;
    double kinetic, mean_square_radius;
    EurBounds bounds;
    double omega;
    bool tail_warning;
};

EntropyReport make_entropy_report(long n_particles, const DensityPair& pair);

} // namespace becent
