// Batch front end: configuration, report emission, and ingestion of external
// tabulated densities.
#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "becent/entropy.hpp"
#include "becent/sweep.hpp"

namespace becent {

enum class RunMode { gpe_sweep, ingest_densities };
enum class OutputFormat { csv, json, plotdata };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_config when --help was requested; carries the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    RunMode mode = RunMode::gpe_sweep;
    std::vector<long> n_values;                    // defaults to reference_n_values()
    double scattering_length_angstrom = 52.9;
    double trap_length_angstrom = 12180.0;
    std::optional<double> r_max;
    std::optional<std::size_t> n_points;
    double tol = 1e-9;
    std::filesystem::path out_dir = ".";
    std::set<OutputFormat> formats = {OutputFormat::csv, OutputFormat::json,
                                      OutputFormat::plotdata};
    std::filesystem::path ingest_position;
    std::filesystem::path ingest_momentum;
};

/// CLI flags override config-file values override defaults. Unknown config
/// keys and non-physical values are rejected (ConfigError).
RunConfig parse_config(int argc, const char* const* argv);

/// One external two-column density table, renormalized to 1.
struct IngestedDensity {
    std::filesystem::path source;
    enum class Kind { position, momentum } kind;
    std::vector<double> coordinates; // strictly increasing
    std::vector<double> values;      // nonnegative, renormalized
    double normalization_defect;     // |norm - 1| before renormalization
};

IngestedDensity load_density_table(const std::filesystem::path& file,
                                   IngestedDensity::Kind kind);

/// Entropy report for an externally tabulated (ρ, n) pair; same code path as
/// the solver pipeline downstream of DensityPair.
EntropyReport ingest_density_pair(const std::filesystem::path& position_file,
                                  const std::filesystem::path& momentum_file);

struct EmittedFiles {
    std::vector<std::filesystem::path> paths;
};

/// table.csv, fit.json, fig1.dat/fig2.dat and per-N density dumps, gated by
/// config.formats. Atomic writes; nothing is left behind on failure.
EmittedFiles emit_reports(const SweepResult& sweep, const LogLawFit& fit,
                          const RunConfig& config);
/// Without a fit (sweeps of fewer than 3 points), fit.json is skipped.
EmittedFiles emit_reports(const SweepResult& sweep,
                          const std::optional<LogLawFit>& fit,
                          const RunConfig& config);

/// Full CLI: parse, run, emit. Returns the process exit code
/// (0 ok, 1 usage/config, 2 solver, 3 ingestion).
int run_cli(int argc, const char* const* argv);

} // namespace becent
