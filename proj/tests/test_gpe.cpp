#include <doctest.h>

#include <cmath>

#include "becent/gpe.hpp"

using namespace becent;

TEST_CASE("trap spec invariants") {
    auto spec = TrapSpec::rb87(10000);
    CHECK(spec.n_particles == 10000);
    CHECK(spec.scattering_length_angstrom == 52.9);
    CHECK(spec.trap_length_angstrom == 12180.0);
    const double recomputed = 4.0 * M_PI * 10000.0 * 52.9 / 12180.0;
    CHECK(std::abs(spec.coupling - recomputed) <= 1e-12 * recomputed);

    CHECK_THROWS_AS((TrapSpec(0, 52.9, 12180.0)), std::invalid_argument);
    CHECK_THROWS_AS((TrapSpec(10, -1.0, 12180.0)), std::invalid_argument);
    CHECK_THROWS_AS((TrapSpec(10, 52.9, 0.0)), std::invalid_argument);
}

TEST_CASE("thomas-fermi chemical potential") {
    // argument of the power equals one when N a / b = 1/15
    TrapSpec unit(15, 1.0, 225.0); // 15·15·1/225 = 1
    CHECK(thomas_fermi_mu(unit) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(thomas_fermi_mu(TrapSpec::rb87(1000000)) ==
          doctest::Approx(42.124024962203016).epsilon(1e-12));
    CHECK(thomas_fermi_mu(TrapSpec::rb87(500)) ==
          doctest::Approx(2.0142708286910382).epsilon(1e-12));

    CHECK_THROWS_AS((thomas_fermi_mu(TrapSpec(100, 0.0, 12180.0))), std::invalid_argument);
}

TEST_CASE("default grid scales with the thomas-fermi radius") {
    TrapSpec ideal(1, 0.0, 12180.0);
    CHECK(default_grid(ideal).r_max() == doctest::Approx(10.0));

    auto big = TrapSpec::rb87(1000000);
    const double r_tf = std::sqrt(2.0 * thomas_fermi_mu(big));
    CHECK(default_grid(big).r_max() == doctest::Approx(3.0 * r_tf).epsilon(1e-12));
}

TEST_CASE("ideal gas reproduces the oscillator ground state") {
    TrapSpec spec(1, 0.0, 12180.0);
    RadialGrid grid(10.0, 3001);
    auto state = solve_ground_state(spec, grid, 1e-10);

    CHECK(std::abs(state.chemical_potential - 1.5) < 1e-4);
    CHECK(std::abs(state.kinetic_energy - 0.75) < 1e-4);
    CHECK(std::abs(state.trap_energy - 0.75) < 1e-4);
    CHECK(std::abs(state.interaction_energy) < 1e-12);

    // max pointwise deviation from the analytic gaussian < 1e-5
    const double c = std::pow(M_PI, -0.75);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        const double r = grid.node(i);
        worst = std::max(worst, std::abs(state.psi.values[i] - c * std::exp(-0.5 * r * r)));
    }
    CHECK(worst < 1e-5);

    // <r^2> of the density
    std::vector<double> r2rho(grid.n_points());
    for (std::size_t i = 0; i < grid.n_points(); ++i)
        r2rho[i] = grid.node(i) * grid.node(i) * state.psi.values[i] * state.psi.values[i];
    CHECK(std::abs(integrate_radial({grid, r2rho}) - 1.5) < 1e-4);
}

TEST_CASE("state invariants at every coupling") {
    for (long n : {500L, 10000L, 200000L}) {
        auto spec = TrapSpec::rb87(n);
        auto state = solve_ground_state(spec, default_grid(spec), 1e-9);

        // normalization
        std::vector<double> rho(state.psi.values.size());
        for (std::size_t i = 0; i < rho.size(); ++i)
            rho[i] = state.psi.values[i] * state.psi.values[i];
        CHECK(std::abs(integrate_radial({state.psi.grid, rho}) - 1.0) < 1e-8);

        // nodeless
        for (double v : state.psi.values)
            CHECK(v >= 0.0);

        // mu identity: mu = T + V + 2 E_int (gradient-route kinetic)
        const double mu_id = state.chemical_potential -
                             (state.kinetic_energy + state.trap_energy +
                              2.0 * state.interaction_energy);
        CHECK(std::abs(mu_id) < 1e-4);

        // virial: 2T - 2V + 3E_int = 0
        const double virial = 2.0 * state.kinetic_energy - 2.0 * state.trap_energy +
                              3.0 * state.interaction_energy;
        CHECK(std::abs(virial) < 1e-4);

        CHECK(state.residual < 1e-6);
        CHECK(state.peak_density_a3 > 0.0);
        CHECK(state.peak_density_a3 < 1e-3); // dilute regime for these N
    }
}

TEST_CASE("chemical potential approaches thomas-fermi at large N") {
    auto spec = TrapSpec::rb87(50000);
    auto state = solve_ground_state(spec, default_grid(spec), 1e-9);
    const double mu_tf = thomas_fermi_mu(spec);
    CHECK(std::abs(state.chemical_potential - mu_tf) / mu_tf < 0.05);
}

TEST_CASE("reference entropy row emerges downstream at N = 1e4") {
    // solved here, entropies checked in test_entropy/test_sweep; this guards
    // the solver-side numbers the row depends on
    auto spec = TrapSpec::rb87(10000);
    auto state = solve_ground_state(spec, default_grid(spec), 1e-9);
    CHECK(state.chemical_potential > thomas_fermi_mu(spec)); // kinetic pushes mu up
    CHECK(state.chemical_potential < 1.1 * thomas_fermi_mu(spec));
}

TEST_CASE("energy trace is non-increasing") {
    auto spec = TrapSpec::rb87(10000);
    SolverOptions opt;
    opt.record_energy_every = 1;
    auto state = solve_ground_state(spec, default_grid(spec), opt);
    REQUIRE(state.energy_trace.size() > 3);
    for (std::size_t i = 1; i < state.energy_trace.size(); ++i)
        CHECK(state.energy_trace[i] <=
              state.energy_trace[i - 1] +
                  1e-10 * std::max(1.0, std::abs(state.energy_trace[i - 1])));
}

TEST_CASE("solver errors") {
    SUBCASE("non-convergence reports the residual") {
        auto spec = TrapSpec::rb87(10000);
        SolverOptions opt;
        opt.max_iterations = 5;
        try {
            solve_ground_state(spec, default_grid(spec), opt);
            FAIL("expected SolverError");
        } catch (const SolverError& e) {
            CHECK(e.iterations == 5);
        }
    }
    SUBCASE("box too small is diagnosed") {
        auto spec = TrapSpec::rb87(1000000); // TF radius ~9.2
        RadialGrid grid(6.0, 1201);
        CHECK_THROWS_AS((solve_ground_state(spec, grid, 1e-9)), SolverError);
    }
    SUBCASE("tol must be positive") {
        TrapSpec spec(1, 0.0, 12180.0);
        CHECK_THROWS_AS((solve_ground_state(spec, RadialGrid(10.0, 1001), 0.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("swelling is monotone in N") {
    double prev = 0.0;
    for (long n : {500L, 1000L, 3000L, 10000L}) {
        auto spec = TrapSpec::rb87(n);
        auto state = solve_ground_state(spec, default_grid(spec), 1e-9);
        std::vector<double> r2rho(state.psi.values.size());
        for (std::size_t i = 0; i < r2rho.size(); ++i) {
            const double r = state.psi.grid.node(i);
            r2rho[i] = r * r * state.psi.values[i] * state.psi.values[i];
        }
        const double msr = integrate_radial({state.psi.grid, r2rho});
        CHECK(msr > prev);
        prev = msr;
    }
}
