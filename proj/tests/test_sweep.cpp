#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "becent/sweep.hpp"

using namespace becent;

TEST_CASE("fit recovers exact lines") {
    auto line = [](double a, double b, const std::vector<double>& ns) {
        std::vector<std::pair<double, double>> pts;
        for (double n : ns)
            pts.emplace_back(n, a + b * std::log(n));
        return pts;
    };
    const std::vector<double> ns = {10, 100, 1000, 10000, 100000};

    SUBCASE("S = 1 + 2 ln N") {
        auto fit = fit_log_law(line(1.0, 2.0, ns));
        CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(fit.rms_residual < 1e-12);
        CHECK(fit.n_min == 10);
        CHECK(fit.n_max == 100000);
    }
    SUBCASE("synthetic parameter sets from fermionic systems") {
        for (auto [a, b] : {std::pair{5.325, 0.858}, {5.891, 0.849}, {6.257, 1.007}}) {
            auto fit = fit_log_law(line(a, b, ns));
            CHECK(std::abs(fit.intercept - a) < 1e-10);
            CHECK(std::abs(fit.slope - b) < 1e-10);
        }
    }
}

TEST_CASE("fit preconditions") {
    std::vector<std::pair<double, double>> two = {{10, 1}, {100, 2}};
    CHECK_THROWS_AS((fit_log_law(two)), std::invalid_argument);
    std::vector<std::pair<double, double>> equal = {{10, 1}, {10, 2}, {10, 3}};
    CHECK_THROWS_AS((fit_log_law(equal)), std::invalid_argument);
    std::vector<std::pair<double, double>> below = {{0.5, 1}, {10, 2}, {100, 3}};
    CHECK_THROWS_AS((fit_log_law(below)), std::invalid_argument);
}

TEST_CASE("fit is invariant under reordering") {
    std::mt19937 rng(99);
    std::vector<std::pair<double, double>> pts;
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    for (double n : {500.0, 1e3, 1e4, 1e5, 1e6})
        pts.emplace_back(n, 6.0 + 0.07 * std::log(n) + noise(rng));
    auto ref = fit_log_law(pts);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        auto fit = fit_log_law(pts);
        CHECK(fit.intercept == doctest::Approx(ref.intercept).epsilon(1e-12));
        CHECK(fit.slope == doctest::Approx(ref.slope).epsilon(1e-12));
    }
}

TEST_CASE("sweep preconditions") {
    auto tmpl = TrapSpec::rb87(1);
    CHECK_THROWS_AS((run_sweep(tmpl, {})), std::invalid_argument);
    CHECK_THROWS_AS((run_sweep(tmpl, {1000, 1000})), std::invalid_argument);
    CHECK_THROWS_AS((run_sweep(tmpl, {1000, 500})), std::invalid_argument);
    CHECK_THROWS_AS((run_sweep(tmpl, {0, 10})), std::invalid_argument);
}

TEST_CASE("ideal-gas single-entry sweep saturates the bound") {
    TrapSpec ideal(1, 0.0, 12180.0);
    auto sweep = run_sweep(ideal, {1});
    REQUIRE(sweep.entries.size() == 1);
    CHECK(std::abs(sweep.entries[0].report.s_total - 6.43419) < 1e-3);
}

TEST_CASE("sweep failure carries the failing N and partial results") {
    auto tmpl = TrapSpec::rb87(1);
    SweepOptions opt;
    opt.r_max = 8.0; // fine for N = 500, inside the N = 1e6 TF radius (~9.2)
    opt.parallel = false;
    try {
        run_sweep(tmpl, {500, 1000000}, opt);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(e.failing_n == 1000000);
        REQUIRE(e.partial.size() == 1);
        CHECK(e.partial[0].n_particles == 500);
    }
}

TEST_CASE("short interacting sweep: ordering, monotonicity, audit") {
    auto tmpl = TrapSpec::rb87(1);
    auto sweep = run_sweep(tmpl, {500, 1000, 3000});
    REQUIRE(sweep.entries.size() == 3);

    for (std::size_t i = 1; i < sweep.entries.size(); ++i) {
        CHECK(sweep.entries[i].n_particles > sweep.entries[i - 1].n_particles);
        CHECK(sweep.entries[i].report.s_total > sweep.entries[i - 1].report.s_total);
        CHECK(sweep.entries[i].report.omega > sweep.entries[i - 1].report.omega);
        CHECK(sweep.entries[i].report.mean_square_radius >
              sweep.entries[i - 1].report.mean_square_radius);
    }

    auto audit = audit_inequalities(sweep);
    CHECK(audit.all_pass);
    for (const auto& row : audit.rows) {
        CHECK(row.position.ok);
        CHECK(row.momentum.ok);
        CHECK(row.total.ok);
        CHECK(row.position.slack_lower > -1e-6);
        CHECK(row.total.slack_upper > -1e-6);
    }

    // parallel and sequential agree bit-for-bit
    SweepOptions seq;
    seq.parallel = false;
    auto sweep2 = run_sweep(tmpl, {500, 1000, 3000}, seq);
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        CHECK(sweep.entries[i].report.s_total == sweep2.entries[i].report.s_total);
        CHECK(sweep.entries[i].report.omega == sweep2.entries[i].report.omega);
    }
}

TEST_CASE("audit saturates with zero slack on the gaussian entry") {
    TrapSpec ideal(1, 0.0, 12180.0);
    auto sweep = run_sweep(ideal, {1});
    auto audit = audit_inequalities(sweep);
    REQUIRE(audit.rows.size() == 1);
    CHECK(audit.all_pass);
    const auto& row = audit.rows[0];
    CHECK(std::abs(row.position.slack_lower) < 1e-4);
    CHECK(std::abs(row.position.slack_upper) < 1e-4);
    CHECK(std::abs(row.momentum.slack_lower) < 1e-4);
    CHECK(std::abs(row.momentum.slack_upper) < 1e-4);
    CHECK(std::abs(row.total.slack_lower) < 1e-4);
    CHECK(std::abs(row.total.slack_upper) < 1e-4);
}

TEST_CASE("audit flags corrupted reports with negative slack") {
    TrapSpec ideal(1, 0.0, 12180.0);
    auto sweep = run_sweep(ideal, {1});
    auto rep = sweep.entries[0].report;
    rep.s_r = rep.bounds.s_r_min - 0.5;
    auto audit = audit_inequalities({{1, rep}});
    CHECK(!audit.all_pass);
    CHECK(!audit.rows[0].position.ok);
    CHECK(audit.rows[0].position.slack_lower < 0.0);
    CHECK(audit.rows[0].momentum.ok);
}

TEST_CASE("audit rejects an empty table") {
    CHECK_THROWS_AS((audit_inequalities(std::vector<std::pair<long, EntropyReport>>{})),
                    std::invalid_argument);
}
