// Sweep the solver over particle numbers, fit S = a + b ln N, and audit the
// entropy inequality chains.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "becent/entropy.hpp"
#include "becent/gpe.hpp"
#include "becent/momentum.hpp"

namespace becent {

struct GridInfo {
    double r_max;
    std::size_t r_points;
    double k_max;
    std::size_t k_points;
};

/// Per-particle-number solver diagnostics kept alongside the entropy report.
struct SolverSummary {
    double chemical_potential;
    double kinetic_energy;
    double trap_energy;
    double interaction_energy;
    std::size_t iterations;
    double residual;
    double peak_density_a3;
};

struct SweepEntry {
    long n_particles;
    EntropyReport report;
    DensityPair densities;
    SolverSummary solver;
    GridInfo grid;
};

struct SweepResult {
    std::vector<SweepEntry> entries; // sorted by n_particles, strictly increasing
    double scattering_length_angstrom;
    double trap_length_angstrom;
};

struct SweepOptions {
    SolverOptions solver;
    double h_target = 0.005;
    std::optional<double> r_max;          // overrides the per-N default box
    std::optional<std::size_t> n_points;  // overrides the per-N point count
    bool parallel = true;
};

class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, long failing_n,
               std::vector<SweepEntry> partial)
        : std::runtime_error(what), failing_n(failing_n),
          partial(std::move(partial)) {}
    long failing_n;
    std::vector<SweepEntry> partial; // successful entries, sorted by N
};

/// Ten particle numbers of the reference ⁸⁷Rb sweep, 5×10² … 10⁶.
const std::vector<long>& reference_n_values();

/// Solve, transform, and report for each N (strictly increasing, all ≥ 1).
SweepResult run_sweep(const TrapSpec& spec_template,
                      const std::vector<long>& n_values,
                      const SweepOptions& options = {});

struct LogLawFit {
    double intercept;    // a (nats)
    double slope;        // b (nats per ln N)
    double rms_residual; // nats
    double n_min, n_max;
};

/// Ordinary least squares of S on ln N. Needs ≥ 3 points, all N ≥ 1,
/// not all equal.
LogLawFit fit_log_law(const std::vector<std::pair<double, double>>& points);

/// min ≤ value ≤ max check with slacks for one chain.
struct ChainCheck {
    double value, lower, upper;
    double slack_lower; // value - lower
    double slack_upper; // upper - value
    bool ok;
};

struct AuditRow {
    long n_particles;
    ChainCheck position, momentum, total;
    bool pass;
};

struct AuditTable {
    std::vector<AuditRow> rows;
    bool all_pass;
};

/// Verify the three inequality chains for every entry. A bound touched
/// within `tolerance` counts as satisfied.
AuditTable audit_inequalities(const SweepResult& sweep, double tolerance = 1e-6);
AuditTable audit_inequalities(const std::vector<std::pair<long, EntropyReport>>& reports,
                              double tolerance = 1e-6);

} // namespace becent
