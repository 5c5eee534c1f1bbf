#include "becent/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace becent {

namespace fs = std::filesystem;

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "json")
        return OutputFormat::json;
    if (name == "plotdata")
        return OutputFormat::plotdata;
    throw ConfigError("unknown output format '" + name + "' (csv|json|plotdata)");
}

} // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Gross-Pitaevskii ground states and information entropies of "
                 "trapped condensates"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.allow_config_extras(false);

    std::vector<long> n_values;
    app.add_option("--n-values", n_values,
                   "comma-separated particle numbers (default: reference sweep "
                   "5e2..1e6)")
        ->delimiter(',');
    double a_angstrom = 52.9, b_angstrom = 12180.0, tol = 1e-9;
    app.add_option("--scattering-length-angstrom", a_angstrom,
                   "s-wave scattering length a [Angstrom]");
    app.add_option("--trap-length-angstrom", b_angstrom,
                   "oscillator length b = sqrt(hbar/m omega) [Angstrom]");
    double r_max = 0.0;
    std::size_t n_points = 0;
    auto* r_max_opt =
        app.add_option("--r-max", r_max, "radial box size [oscillator lengths]");
    auto* n_points_opt =
        app.add_option("--grid-points", n_points, "radial grid points (>= 64)");
    app.add_option("--tol", tol, "solver convergence tolerance on mu");
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "output directory (default: current)");
    std::vector<std::string> formats;
    app.add_option("--format", formats, "output formats: csv,json,plotdata (default all)")
        ->delimiter(',');
    std::string ingest_pos, ingest_mom;
    app.add_option("--ingest-position", ingest_pos,
                   "two-column position-density table; entropy-report mode");
    app.add_option("--ingest-momentum", ingest_mom,
                   "two-column momentum-density table; entropy-report mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    cfg.scattering_length_angstrom = a_angstrom;
    cfg.trap_length_angstrom = b_angstrom;
    cfg.tol = tol;
    cfg.out_dir = out_dir.empty() ? "." : out_dir;
    cfg.n_values = n_values.empty() ? reference_n_values() : n_values;

    if (!formats.empty()) {
        cfg.formats.clear();
        for (const auto& f : formats)
            cfg.formats.insert(parse_format(f));
    }
    if (r_max_opt->count() > 0) {
        if (!(r_max > 0.0))
            throw ConfigError("--r-max must be positive");
        cfg.r_max = r_max;
    }
    if (n_points_opt->count() > 0) {
        if (n_points < RadialGrid::min_points)
            throw ConfigError("--grid-points must be at least " +
                              std::to_string(RadialGrid::min_points));
        cfg.n_points = n_points;
    }
    if (a_angstrom < 0.0)
        throw ConfigError("scattering length must be >= 0");
    if (!(b_angstrom > 0.0))
        throw ConfigError("trap length must be positive");
    if (!(tol > 0.0))
        throw ConfigError("--tol must be positive");
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        if (cfg.n_values[i] < 1)
            throw ConfigError("--n-values entries must be >= 1");
        if (i > 0 && cfg.n_values[i] <= cfg.n_values[i - 1])
            throw ConfigError("--n-values must be strictly increasing");
    }

    if (ingest_pos.empty() != ingest_mom.empty())
        throw ConfigError("--ingest-position and --ingest-momentum must be given together");
    if (!ingest_pos.empty()) {
        cfg.mode = RunMode::ingest_densities;
        cfg.ingest_position = ingest_pos;
        cfg.ingest_momentum = ingest_mom;
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// ingestion

namespace {

struct Table {
    std::vector<double> x, y;
};

Table read_two_columns(const fs::path& file) {
    std::ifstream in(file);
    if (!in)
        throw IngestError("cannot open '" + file.string() + "'");
    Table t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        std::replace(line.begin(), line.end(), ',', ' ');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a) || !(ss >> b))
            throw IngestError(file.string() + ":" + std::to_string(lineno) +
                              ": expected two numeric columns");
        double extra;
        if (ss >> extra)
            throw IngestError(file.string() + ":" + std::to_string(lineno) +
                              ": more than two columns");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw IngestError(file.string() + ":" + std::to_string(lineno) +
                              ": non-finite value");
        t.x.push_back(a);
        t.y.push_back(b);
    }
    if (t.x.size() < 8)
        throw IngestError(file.string() + ": need at least 8 data rows, found " +
                          std::to_string(t.x.size()));
    return t;
}

// Monotone cubic (Fritsch-Carlson) interpolation of (xs, ys) at x.
// Outside the table the value is held constant.
class Pchip {
public:
    Pchip(const std::vector<double>& xs, const std::vector<double>& ys)
        : x_(xs), y_(ys), d_(xs.size()) {
        const std::size_t n = xs.size();
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
                const double w0 = 2.0 * h1 + h0, w1 = h1 + 2.0 * h0;
                d_[i] = (w0 + w1) / (w0 / delta[i - 1] + w1 / delta[i]);
            }
        }
        d_[0] = edge_slope(x_[1] - x_[0], x_[2] - x_[1], delta[0], delta[1]);
        d_[n - 1] = edge_slope(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3],
                               delta[n - 2], delta[n - 3]);
    }

    double operator()(double x) const {
        if (x <= x_.front())
            return y_.front();
        if (x >= x_.back())
            return y_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return y_[i] * (2 * t3 - 3 * t2 + 1) + h * d_[i] * (t3 - 2 * t2 + t) +
               y_[i + 1] * (-2 * t3 + 3 * t2) + h * d_[i + 1] * (t3 - t2);
    }

private:
    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0)
            d = 0.0;
        else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
            d = 3.0 * del0;
        return d;
    }

    std::vector<double> x_, y_, d_;
};

double trapezoid_norm(const Table& t) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
        const double fa = t.y[i] * t.x[i] * t.x[i];
        const double fb = t.y[i + 1] * t.x[i + 1] * t.x[i + 1];
        s += 0.5 * (fa + fb) * (t.x[i + 1] - t.x[i]);
    }
    // leading gap down to the origin, density held at the first sample
    if (t.x.front() > 0.0)
        s += t.y.front() * t.x.front() * t.x.front() * t.x.front() / 3.0;
    return 4.0 * M_PI * s;
}

bool uniform_from_origin(const std::vector<double>& x) {
    if (x.front() != 0.0)
        return false;
    const double h = x[1] - x[0];
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i] - static_cast<double>(i) * h) > 1e-9 * std::max(1.0, x.back()))
            return false;
    return true;
}

// Clamp tiny negatives, renormalize on a uniform grid.
void finalize_density(std::vector<double>& v, const std::vector<double>& nodes,
                      double spacing) {
    for (auto& p : v)
        if (p < 0.0)
            p = 0.0;
    const auto w = quadrature_weights(v.size(), spacing);
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        norm += w[i] * v[i] * nodes[i] * nodes[i];
    norm *= 4.0 * M_PI;
    for (auto& p : v)
        p /= norm;
}

} // namespace

IngestedDensity load_density_table(const fs::path& file, IngestedDensity::Kind kind) {
    Table t = read_two_columns(file);
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        if (t.x[i] < 0.0)
            throw IngestError(file.string() + ": row " + std::to_string(i + 1) +
                              ": negative coordinate");
        if (i > 0 && t.x[i] <= t.x[i - 1])
            throw IngestError(file.string() + ": row " + std::to_string(i + 1) +
                              ": coordinate column not strictly increasing");
        if (t.y[i] < -1e-12)
            throw IngestError(file.string() + ": row " + std::to_string(i + 1) +
                              ": negative density " + std::to_string(t.y[i]));
        if (t.y[i] < 0.0)
            t.y[i] = 0.0;
    }
    const double norm = trapezoid_norm(t);
    const double defect = std::abs(norm - 1.0);
    if (defect > 0.1)
        throw IngestError(file.string() + ": normalization defect " +
                          std::to_string(defect) + " exceeds 10%");
    for (auto& v : t.y)
        v /= norm;
    return {file, kind, std::move(t.x), std::move(t.y), defect};
}

EntropyReport ingest_density_pair(const fs::path& position_file,
                                  const fs::path& momentum_file) {
    IngestedDensity pos = load_density_table(position_file, IngestedDensity::Kind::position);
    IngestedDensity mom = load_density_table(momentum_file, IngestedDensity::Kind::momentum);

    auto resample = [](const IngestedDensity& d) {
        if (uniform_from_origin(d.coordinates) &&
            d.coordinates.size() >= RadialGrid::min_points)
            return std::make_pair(d.coordinates.back(), d.values);
        const double x_max = d.coordinates.back();
        // the uniform target must keep up with the finest source spacing, or
        // a dense core next to a long sparse tail loses its resolution
        double min_dx = x_max;
        for (std::size_t i = 1; i < d.coordinates.size(); ++i)
            min_dx = std::min(min_dx, d.coordinates[i] - d.coordinates[i - 1]);
        std::size_t n = std::max<std::size_t>(
            {2001, 2 * d.coordinates.size() + 1,
             static_cast<std::size_t>(std::ceil(x_max / min_dx)) + 1});
        if (n % 2 == 0)
            ++n;
        if (n > 1000001)
            throw IngestError(d.source.string() +
                              ": coordinate range spans too many resolution scales (" +
                              std::to_string(n) +
                              " uniform points needed); trim the tail or resample");
        Pchip interp(d.coordinates, d.values);
        std::vector<double> v(n);
        const double h = x_max / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = interp(static_cast<double>(i) * h);
        return std::make_pair(x_max, std::move(v));
    };

    auto [r_max, rho] = resample(pos);
    auto [k_max, nk] = resample(mom);
    RadialGrid rgrid(r_max, rho.size());
    MomentumGrid kgrid(k_max, nk.size());
    finalize_density(rho, rgrid.nodes(), rgrid.spacing());
    finalize_density(nk, kgrid.nodes(), kgrid.spacing());

    DensityPair pair{RadialFunction(rgrid, std::move(rho)),
                     MomentumFunction(kgrid, std::move(nk)),
                     mom.normalization_defect};
    return make_entropy_report(0, pair);
}

// ---------------------------------------------------------------------------
// report emission

namespace {

// Complete files are moved into place; a failure leaves no partial output.
class AtomicWriter {
public:
    explicit AtomicWriter(fs::path target)
        : target_(std::move(target)), tmp_(target_.parent_path() /
                                           (".tmp-" + target_.filename().string())) {
        stream_.open(tmp_);
        if (!stream_)
            throw ConfigError("cannot write to '" + tmp_.string() + "'");
    }
    ~AtomicWriter() {
        if (!committed_) {
            stream_.close();
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }
    std::ofstream& stream() { return stream_; }
    void commit() {
        stream_.close();
        if (!stream_)
            throw ConfigError("write failed for '" + tmp_.string() + "'");
        fs::rename(tmp_, target_);
        committed_ = true;
    }

private:
    fs::path target_, tmp_;
    std::ofstream stream_;
    bool committed_ = false;
};

void probe_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("output directory '" + dir.string() + "' cannot be created");
    const fs::path probe = dir / ".write-probe";
    std::ofstream out(probe);
    if (!out)
        throw ConfigError("output directory '" + dir.string() + "' is not writable");
    out.close();
    fs::remove(probe, ec);
}

} // namespace

EmittedFiles emit_reports(const SweepResult& sweep, const LogLawFit& fit,
                          const RunConfig& config) {
    return emit_reports(sweep, std::optional<LogLawFit>(fit), config);
}

EmittedFiles emit_reports(const SweepResult& sweep, const std::optional<LogLawFit>& fit,
                          const RunConfig& config) {
    if (sweep.entries.empty())
        throw std::invalid_argument("emit_reports: empty sweep");
    const fs::path out = config.out_dir.empty() ? "." : config.out_dir;
    probe_writable(out);

    EmittedFiles emitted;

    if (config.formats.count(OutputFormat::csv)) {
        AtomicWriter w(out / "table.csv");
        w.stream() << "N,S_r(min),S_r,S_r(max),S_k(min),S_k,S_k(max),S(min),S,S(max),Omega\n";
        for (const auto& e : sweep.entries) {
            const auto& rep = e.report;
            const auto& b = rep.bounds;
            w.stream() << e.n_particles << ',' << fmt6(b.s_r_min) << ',' << fmt6(rep.s_r)
                       << ',' << fmt6(b.s_r_max) << ',' << fmt6(b.s_k_min) << ','
                       << fmt6(rep.s_k) << ',' << fmt6(b.s_k_max) << ',' << fmt6(b.s_min)
                       << ',' << fmt6(rep.s_total) << ',' << fmt6(b.s_max) << ','
                       << fmt6(rep.omega) << '\n';
        }
        w.commit();
        emitted.paths.push_back(out / "table.csv");
    }

    if (config.formats.count(OutputFormat::json) && fit) {
        nlohmann::ordered_json j;
        j["a"] = fit->intercept;
        j["b"] = fit->slope;
        j["rms_residual"] = fit->rms_residual;
        j["n_min"] = static_cast<long>(fit->n_min);
        j["n_max"] = static_cast<long>(fit->n_max);
        AtomicWriter w(out / "fit.json");
        w.stream() << j.dump(2) << '\n';
        w.commit();
        emitted.paths.push_back(out / "fit.json");
    }

    if (config.formats.count(OutputFormat::plotdata)) {
        {
            AtomicWriter w(out / "fig1.dat");
            w.stream() << "# N  S=S_r+S_k [nats]\n";
            for (const auto& e : sweep.entries)
                w.stream() << e.n_particles << ' ' << fmt6(e.report.s_total) << '\n';
            w.commit();
            emitted.paths.push_back(out / "fig1.dat");
        }
        {
            AtomicWriter w(out / "fig2.dat");
            w.stream() << "# N  Omega\n";
            for (const auto& e : sweep.entries)
                w.stream() << e.n_particles << ' ' << fmt6(e.report.omega) << '\n';
            w.commit();
            emitted.paths.push_back(out / "fig2.dat");
        }
        const fs::path ddir = out / "densities";
        probe_writable(ddir);
        for (const auto& e : sweep.entries) {
            const std::string tag = std::to_string(e.n_particles);
            {
                AtomicWriter w(ddir / ("rho_" + tag + ".dat"));
                w.stream() << "# r [osc. units]  rho(r)\n";
                const auto& rho = e.densities.rho;
                for (std::size_t i = 0; i < rho.values.size(); ++i)
                    w.stream() << fmt17(rho.grid.node(i)) << ' ' << fmt17(rho.values[i])
                               << '\n';
                w.commit();
                emitted.paths.push_back(ddir / ("rho_" + tag + ".dat"));
            }
            {
                AtomicWriter w(ddir / ("nk_" + tag + ".dat"));
                w.stream() << "# k [1/osc. units]  n(k)\n";
                const auto& nk = e.densities.nk;
                for (std::size_t i = 0; i < nk.values.size(); ++i)
                    w.stream() << fmt17(nk.grid.node(i)) << ' ' << fmt17(nk.values[i])
                               << '\n';
                w.commit();
                emitted.paths.push_back(ddir / ("nk_" + tag + ".dat"));
            }
        }
    }
    return emitted;
}

// ---------------------------------------------------------------------------
// CLI driver

namespace {

nlohmann::ordered_json report_json(const EntropyReport& rep) {
    nlohmann::ordered_json j;
    j["n_particles"] = rep.n_particles;
    j["S_r"] = rep.s_r;
    j["S_k"] = rep.s_k;
    j["S"] = rep.s_total;
    j["T"] = rep.kinetic;
    j["msr"] = rep.mean_square_radius;
    j["S_r_min"] = rep.bounds.s_r_min;
    j["S_r_max"] = rep.bounds.s_r_max;
    j["S_k_min"] = rep.bounds.s_k_min;
    j["S_k_max"] = rep.bounds.s_k_max;
    j["S_min"] = rep.bounds.s_min;
    j["S_max"] = rep.bounds.s_max;
    j["Omega"] = rep.omega;
    j["tail_warning"] = rep.tail_warning;
    return j;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    try {
        cfg = parse_config(argc, argv);
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (cfg.mode == RunMode::ingest_densities) {
            const EntropyReport rep =
                ingest_density_pair(cfg.ingest_position, cfg.ingest_momentum);
            const auto j = report_json(rep);
            if (cfg.formats.count(OutputFormat::json)) {
                probe_writable(cfg.out_dir);
                AtomicWriter w(cfg.out_dir / "report.json");
                w.stream() << j.dump(2) << '\n';
                w.commit();
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        TrapSpec tmpl(1, cfg.scattering_length_angstrom, cfg.trap_length_angstrom);
        SweepOptions opts;
        opts.solver.tol = cfg.tol;
        opts.r_max = cfg.r_max;
        opts.n_points = cfg.n_points;
        const SweepResult sweep = run_sweep(tmpl, cfg.n_values, opts);

        std::optional<LogLawFit> fit;
        if (sweep.entries.size() >= 3) {
            std::vector<std::pair<double, double>> points;
            for (const auto& e : sweep.entries)
                points.emplace_back(static_cast<double>(e.n_particles), e.report.s_total);
            fit = fit_log_law(points);
        }
        const AuditTable audit = audit_inequalities(sweep);

        emit_reports(sweep, fit, cfg);

        std::cout << "N          S_r      S_k      S        Omega      mu       iters\n";
        for (const auto& e : sweep.entries) {
            char line[160];
            std::snprintf(line, sizeof line, "%-10ld %-8.4f %-8.4f %-8.4f %-10.3e %-8.4f %zu\n",
                          e.n_particles, e.report.s_r, e.report.s_k, e.report.s_total,
                          e.report.omega, e.solver.chemical_potential, e.solver.iterations);
            std::cout << line;
        }
        if (fit)
            std::cout << "fit: S = " << fmt6(fit->intercept) << " + " << fmt6(fit->slope)
                      << " ln N  (rms residual " << fmt6(fit->rms_residual) << ")\n";
        std::cout << "inequality audit: " << (audit.all_pass ? "all chains hold" : "VIOLATIONS")
                  << '\n';
        return audit.all_pass ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IngestError& e) {
        std::cerr << "ingestion error: " << e.what() << '\n';
        return 3;
    } catch (const SweepError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace becent
