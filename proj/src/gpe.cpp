#include "becent/gpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace becent {

TrapSpec::TrapSpec(long n, double a_angstrom, double b_angstrom)
    : n_particles(n), scattering_length_angstrom(a_angstrom),
      trap_length_angstrom(b_angstrom) {
    if (n_particles < 1)
        throw std::invalid_argument("TrapSpec: n_particles must be >= 1");
    if (scattering_length_angstrom < 0.0)
        throw std::invalid_argument("TrapSpec: scattering length must be >= 0 "
                                    "(repulsive or ideal gas only)");
    if (!(trap_length_angstrom > 0.0))
        throw std::invalid_argument("TrapSpec: trap length must be positive");
    coupling = 4.0 * M_PI * static_cast<double>(n_particles) *
               scattering_length_angstrom / trap_length_angstrom;
}

TrapSpec TrapSpec::rb87(long n) { return {n, 52.9, 12180.0}; }

double thomas_fermi_mu(const TrapSpec& spec) {
    if (!(spec.coupling > 0.0))
        throw std::invalid_argument("thomas_fermi_mu: undefined for zero coupling");
    const double x = 15.0 * static_cast<double>(spec.n_particles) *
                     spec.scattering_length_angstrom / spec.trap_length_angstrom;
    return 0.5 * std::pow(x, 0.4);
}

RadialGrid default_grid(const TrapSpec& spec, double h_target) {
    double r_max = 10.0;
    if (spec.coupling > 0.0)
        r_max = std::max(r_max, 3.0 * std::sqrt(2.0 * thomas_fermi_mu(spec)));
    std::size_t n = static_cast<std::size_t>(std::ceil(r_max / h_target)) + 1;
    if (n % 2 == 0)
        ++n;
    n = std::max<std::size_t>(n, 2001);
    return {r_max, n};
}

namespace {

// Workspace for the radial problem on u(r) = r ψ(r), u(0) = u(r_max) = 0.
struct Radial {
    const std::vector<double>& r;
    std::size_t n;
    double h;
    std::vector<double> w; // Simpson weights

    double dot(const std::vector<double>& a, const std::vector<double>& b) const {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += w[i] * a[i] * b[i];
        return s;
    }
};

struct Energies {
    double kinetic;     // -2π ∫ u u'' dr (Hamiltonian route)
    double trap;        // 4π ∫ (r²/2) u² dr
    double interaction; // 2π g ∫ u⁴ / r² dr
    double total() const { return kinetic + trap + interaction; }
    double mu() const { return kinetic + trap + 2.0 * interaction; }
};

Energies energies(const Radial& g, const std::vector<double>& u, double coupling) {
    Energies e{0.0, 0.0, 0.0};
    double t = 0.0, v = 0.0, q = 0.0;
    const double h2 = g.h * g.h;
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
        const double upp = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2;
        t += g.w[i] * u[i] * upp;
        v += g.w[i] * 0.5 * g.r[i] * g.r[i] * u[i] * u[i];
        const double psi2 = (u[i] / g.r[i]) * (u[i] / g.r[i]);
        q += g.w[i] * psi2 * u[i] * u[i];
    }
    e.kinetic = -2.0 * M_PI * t;
    e.trap = 4.0 * M_PI * v;
    e.interaction = 2.0 * M_PI * coupling * q;
    return e;
}

void normalize(const Radial& g, std::vector<double>& u) {
    const double norm = 4.0 * M_PI * g.dot(u, u);
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& x : u)
        x *= scale;
}

// Kinetic energy from the gradient: 2π ∫ (u')² dr, centered differences.
double kinetic_gradient(const Radial& g, const std::vector<double>& u) {
    std::vector<double> up(g.n);
    up[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * g.h);
    for (std::size_t i = 1; i + 1 < g.n; ++i)
        up[i] = (u[i + 1] - u[i - 1]) / (2.0 * g.h);
    up[g.n - 1] = (3.0 * u[g.n - 1] - 4.0 * u[g.n - 2] + u[g.n - 3]) / (2.0 * g.h);
    return 2.0 * M_PI * g.dot(up, up);
}

} // namespace

CondensateState solve_ground_state(const TrapSpec& spec, const RadialGrid& grid,
                                   const SolverOptions& opt) {
    if (!(opt.tol > 0.0))
        throw std::invalid_argument("solve_ground_state: tol must be positive");
    const std::size_t n = grid.n_points();
    const double h = grid.spacing();
    const double g = spec.coupling;
    Radial rad{grid.nodes(), n, h, quadrature_weights(n, h)};
    const auto& r = grid.nodes();

    // Initial guess: Gaussian for weak coupling, smoothed Thomas-Fermi
    // profile otherwise.
    std::vector<double> u(n, 0.0);
    if (g < 10.0) {
        const double c = std::pow(M_PI, -0.75);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = r[i] * c * std::exp(-0.5 * r[i] * r[i]);
    } else {
        const double mu_tf = thomas_fermi_mu(spec);
        const double sigma = 0.5 * std::sqrt(2.0 * mu_tf);
        double peak = std::sqrt(mu_tf / g);
        for (std::size_t i = 0; i < n; ++i) {
            const double tf = std::max(mu_tf - 0.5 * r[i] * r[i], 0.0) / g;
            const double psi = std::sqrt(tf) +
                               0.01 * peak * std::exp(-r[i] * r[i] / (2.0 * sigma * sigma));
            u[i] = r[i] * psi;
        }
    }
    u[0] = u[n - 1] = 0.0;
    normalize(rad, u);

    double dt = opt.initial_time_step;
    if (dt <= 0.0) {
        const double scale = g > 0.0 ? std::max(thomas_fermi_mu(spec), 1.5) : 1.5;
        dt = std::min(0.01, 0.25 / scale);
    }

    Energies e = energies(rad, u, g);
    double energy = e.total();
    double mu = e.mu();
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t it = 0;

    std::vector<double> diag(n - 2), rhs(n - 2), cp(n - 2), sol(n - 2);
    std::vector<double> unew(n, 0.0);
    std::vector<double> energy_trace;

    const double off = -0.5 / (h * h); // off-diagonal of -½ d²/dr²

    while (it < opt.max_iterations) {
        ++it;
        // Backward-Euler step of the imaginary-time flow with the
        // nonlinearity frozen at the current density:
        //   (I + dt·H[ρ]) u⁺ = u,  H = -½ d²/dr² + r²/2 + g ψ².
        // The amplification 1/(1 + dt·λ) damps every mode monotonically.
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double psi2 = (u[i] / r[i]) * (u[i] / r[i]);
            const double W = 0.5 * r[i] * r[i] + g * psi2;
            diag[i - 1] = 1.0 + dt * (1.0 / (h * h) + W);
            rhs[i - 1] = u[i];
        }
        const double odt = dt * off;
        // Thomas solve, symmetric tridiagonal (diag, odt).
        cp[0] = odt / diag[0];
        sol[0] = rhs[0] / diag[0];
        for (std::size_t i = 1; i < n - 2; ++i) {
            const double m = diag[i] - odt * cp[i - 1];
            cp[i] = odt / m;
            sol[i] = (rhs[i] - odt * sol[i - 1]) / m;
        }
        for (std::size_t i = n - 2; i-- > 1;)
            sol[i - 1] -= cp[i - 1] * sol[i];
        for (std::size_t i = 1; i + 1 < n; ++i)
            unew[i] = sol[i - 1];
        normalize(rad, unew);

        const Energies en = energies(rad, unew, g);
        const double enew = en.total();
        // jitter band: quadrature sums accumulate ~n·eps relative roundoff
        const double slack = 1e-11 * std::max(std::abs(energy), 1.0);
        if (enew > energy + slack) {
            dt *= 0.5;
            if (dt < 1e-12)
                throw SolverError("solve_ground_state: time step underflow at iteration " +
                                      std::to_string(it) + "; energy not decreasing",
                                  residual, it);
            continue;
        }

        std::swap(u, unew);
        energy = enew;
        const double mu_new = en.mu();
        const double dmu = std::abs(mu_new - mu) / std::max(std::abs(mu_new), 1.0);
        mu = mu_new;
        dt = std::min(dt * 1.1, opt.max_time_step);
        if (opt.record_energy_every > 0 && it % opt.record_energy_every == 0)
            energy_trace.push_back(energy);

        if (dmu < opt.tol) {
            // L² residual of the stationary equation.
            double rs = 0.0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double psi2 = (u[i] / r[i]) * (u[i] / r[i]);
                const double W = 0.5 * r[i] * r[i] + g * psi2;
                const double hu = -0.5 * (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) +
                                  W * u[i];
                const double d = hu - mu * u[i];
                rs += rad.w[i] * d * d;
            }
            residual = std::sqrt(4.0 * M_PI * rs);
            if (residual < opt.residual_tol) {
                converged = true;
                break;
            }
        }
    }

    if (!converged)
        throw SolverError("solve_ground_state: no convergence within " +
                              std::to_string(opt.max_iterations) +
                              " iterations (last residual " + std::to_string(residual) + ")",
                          residual, it);

    // Nodeless ground state: clamp roundoff-level negatives in the far tail.
    double u_peak = 0.0;
    for (const auto& x : u)
        u_peak = std::max(u_peak, std::abs(x));
    for (auto& x : u) {
        if (x < 0.0) {
            if (x < -1e-10 * u_peak)
                throw SolverError("solve_ground_state: converged state has a node",
                                  residual, it);
            x = 0.0;
        }
    }

    std::vector<double> psi(n);
    psi[0] = u[1] / h; // ψ(0) = u'(0)
    for (std::size_t i = 1; i < n; ++i)
        psi[i] = u[i] / r[i];

    double psi_boundary = std::abs(psi[n - 2]);
    double psi_peak = 0.0;
    for (const auto& x : psi)
        psi_peak = std::max(psi_peak, std::abs(x));
    if (psi_boundary > 1e-10 * psi_peak)
        throw SolverError("solve_ground_state: wavefunction reaches the boundary "
                          "(psi(r_max)/psi_peak = " +
                              std::to_string(psi_boundary / psi_peak) +
                              "); increase r_max",
                          residual, it);

    const Energies ef = energies(rad, u, g);
    CondensateState state{RadialFunction(grid, std::move(psi)),
                          ef.mu(),
                          kinetic_gradient(rad, u),
                          ef.trap,
                          ef.interaction,
                          it,
                          residual,
                          0.0,
                          std::move(energy_trace)};

    const double aob = spec.scattering_length_angstrom / spec.trap_length_angstrom;
    state.peak_density_a3 = static_cast<double>(spec.n_particles) * psi_peak * psi_peak *
                            aob * aob * aob;
    return state;
}

CondensateState solve_ground_state(const TrapSpec& spec, const RadialGrid& grid,
                                   double tol) {
    SolverOptions opt;
    opt.tol = tol;
    return solve_ground_state(spec, grid, opt);
}

} // namespace becent
