// Ground state of the Gross-Pitaevskii equation in an isotropic harmonic
// trap, by imaginary-time propagation of u(r) = r ψ(r).
//
// Units: oscillator units throughout (ħ = m = ω = 1, lengths in
// b = (ħ/mω)^{1/2}, energies in ħω). The dimensionless coupling is
// g = 4π N a / b.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "becent/radial.hpp"

namespace becent {

/// Trap + interaction parameters for N bosons.
struct TrapSpec {
    TrapSpec(long n_particles, double scattering_length_angstrom,
             double trap_length_angstrom);

    /// ⁸⁷Rb trap defaults: a = 52.9 Å, b = 12180 Å (ω/π = 77.78 Hz).
    static TrapSpec rb87(long n_particles);

    long n_particles;
    double scattering_length_angstrom;
    double trap_length_angstrom;
    double coupling; // 4π N a / b, fixed at construction
};

struct SolverOptions {
    double tol = 1e-9;            // relative μ change between accepted steps
    double residual_tol = 1e-6;   // L² norm of (H - μ)ψ
    std::size_t max_iterations = 200000;
    double initial_time_step = 0; // 0 = auto from μ_TF
    double max_time_step = 0.5;
    std::size_t record_energy_every = 0; // 0 = no trace
};

/// Converged ground state. psi is real, nonnegative, normalized to
/// ∫ ψ² 4π r² dr = 1. Energies are per particle in ħω.
struct CondensateState {
    RadialFunction psi;
    double chemical_potential;
    double kinetic_energy;
    double trap_energy;
    double interaction_energy;
    std::size_t iterations;
    double residual;
    double peak_density_a3; // diluteness diagnostic n_peak a³ (not enforced)
    std::vector<double> energy_trace; // filled when record_energy_every > 0

    double total_energy() const noexcept {
        return kinetic_energy + trap_energy + interaction_energy;
    }
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual, std::size_t iterations)
        : std::runtime_error(what), residual(residual), iterations(iterations) {}
    double residual;
    std::size_t iterations;
};

/// Thomas-Fermi chemical potential ½ (15 N a / b)^{2/5}. Requires coupling > 0.
double thomas_fermi_mu(const TrapSpec& spec);

/// r_max = 3 √(2 μ_TF) (floor 10 oscillator lengths), spacing ≈ h_target.
RadialGrid default_grid(const TrapSpec& spec, double h_target = 0.005);

CondensateState solve_ground_state(const TrapSpec& spec, const RadialGrid& grid,
                                   const SolverOptions& options);
CondensateState solve_ground_state(const TrapSpec& spec, const RadialGrid& grid,
                                   double tol = 1e-9);

} // namespace becent
