#include "becent/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

namespace becent {

const std::vector<long>& reference_n_values() {
    static const std::vector<long> values = {500,   1000,   3000,   5000,   7000,
                                             10000, 50000,  100000, 500000, 1000000};
    return values;
}

namespace {

SweepEntry solve_one(const TrapSpec& tmpl, long n, const SweepOptions& opt) {
    TrapSpec spec(n, tmpl.scattering_length_angstrom, tmpl.trap_length_angstrom);
    RadialGrid grid = [&] {
        if (opt.r_max || opt.n_points) {
            const RadialGrid def = default_grid(spec, opt.h_target);
            const double r_max = opt.r_max.value_or(def.r_max());
            std::size_t np;
            if (opt.n_points) {
                np = *opt.n_points;
            } else {
                np = static_cast<std::size_t>(std::ceil(r_max / opt.h_target)) + 1;
                if (np % 2 == 0)
                    ++np;
                np = std::max<std::size_t>(np, 2001);
            }
            return RadialGrid(r_max, np);
        }
        return default_grid(spec, opt.h_target);
    }();

    CondensateState state = solve_ground_state(spec, grid, opt.solver);
    DensityPair pair = to_momentum(state.psi);
    EntropyReport report = make_entropy_report(n, pair);

    GridInfo ginfo{grid.r_max(), grid.n_points(), pair.nk.grid.k_max(),
                   pair.nk.grid.n_points()};
    SolverSummary summary{state.chemical_potential, state.kinetic_energy,
                          state.trap_energy,        state.interaction_energy,
                          state.iterations,         state.residual,
                          state.peak_density_a3};
    return {n, std::move(report), std::move(pair), summary, ginfo};
}

} // namespace

SweepResult run_sweep(const TrapSpec& spec_template, const std::vector<long>& n_values,
                      const SweepOptions& options) {
    if (n_values.empty())
        throw std::invalid_argument("run_sweep: empty particle-number list");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1)
            throw std::invalid_argument("run_sweep: n_values must all be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("run_sweep: n_values must be strictly increasing");
    }

    std::vector<SweepEntry> entries;
    entries.reserve(n_values.size());

    if (options.parallel && n_values.size() > 1) {
        std::vector<std::future<SweepEntry>> futures;
        futures.reserve(n_values.size());
        for (long n : n_values)
            futures.push_back(std::async(std::launch::async, solve_one,
                                         std::cref(spec_template), n,
                                         std::cref(options)));
        std::string first_error;
        long failing_n = 0;
        for (std::size_t i = 0; i < futures.size(); ++i) {
            try {
                entries.push_back(futures[i].get());
            } catch (const std::exception& e) {
                if (first_error.empty()) {
                    failing_n = n_values[i];
                    first_error = e.what();
                }
            }
        }
        if (!first_error.empty())
            throw SweepError("run_sweep: solve failed for N = " +
                                 std::to_string(failing_n) + ": " + first_error,
                             failing_n, std::move(entries));
    } else {
        for (long n : n_values) {
            try {
                entries.push_back(solve_one(spec_template, n, options));
            } catch (const SweepError&) {
                throw;
            } catch (const std::exception& e) {
                throw SweepError("run_sweep: solve failed for N = " + std::to_string(n) +
                                     ": " + e.what(),
                                 n, std::move(entries));
            }
        }
    }

    return {std::move(entries), spec_template.scattering_length_angstrom,
            spec_template.trap_length_angstrom};
}

LogLawFit fit_log_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_log_law: need at least 3 points");
    for (const auto& [n, s] : points)
        if (n < 1.0)
            throw std::invalid_argument("fit_log_law: particle numbers must be >= 1");

    double sx = 0.0, sy = 0.0;
    for (const auto& [n, s] : points) {
        sx += std::log(n);
        sy += s;
    }
    const double m = static_cast<double>(points.size());
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, s] : points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (s - my);
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("fit_log_law: all particle numbers equal");

    LogLawFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    double n_min = points.front().first, n_max = points.front().first;
    for (const auto& [n, s] : points) {
        const double res = s - (fit.intercept + fit.slope * std::log(n));
        rss += res * res;
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
    }
    fit.rms_residual = std::sqrt(rss / m);
    fit.n_min = n_min;
    fit.n_max = n_max;
    return fit;
}

namespace {

ChainCheck check_chain(double value, double lower, double upper, double tol) {
    ChainCheck c{value, lower, upper, value - lower, upper - value, false};
    c.ok = c.slack_lower >= -tol && c.slack_upper >= -tol;
    return c;
}

} // namespace

AuditTable audit_inequalities(const std::vector<std::pair<long, EntropyReport>>& reports,
                              double tolerance) {
    if (reports.empty())
        throw std::invalid_argument("audit_inequalities: nothing to audit");
    AuditTable table;
    table.all_pass = true;
    table.rows.reserve(reports.size());
    for (const auto& [n, rep] : reports) {
        AuditRow row;
        row.n_particles = n;
        row.position = check_chain(rep.s_r, rep.bounds.s_r_min, rep.bounds.s_r_max, tolerance);
        row.momentum = check_chain(rep.s_k, rep.bounds.s_k_min, rep.bounds.s_k_max, tolerance);
        row.total = check_chain(rep.s_total, rep.bounds.s_min, rep.bounds.s_max, tolerance);
        row.pass = row.position.ok && row.momentum.ok && row.total.ok;
        table.all_pass = table.all_pass && row.pass;
        table.rows.push_back(row);
    }
    return table;
}

AuditTable audit_inequalities(const SweepResult& sweep, double tolerance) {
    std::vector<std::pair<long, EntropyReport>> reports;
    reports.reserve(sweep.entries.size());
    for (const auto& e : sweep.entries)
        reports.emplace_back(e.n_particles, e.report);
    return audit_inequalities(reports, tolerance);
}

} // namespace becent
