#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swmoment/model_spec.hpp"
#include "swmoment/scenarios.hpp"
#include "swmoment/solver.hpp"

namespace swm {

/// One simulation run, as read from a `key = value` config file.
struct RunManifest {
  ScenarioName scenario = ScenarioName::SmoothSine;
  ModelFamily model = ModelFamily::SWE;
  int order = 0;
  double epsilon = 1.0;
  double lambda0 = 1.0;
  double nu0 = 1.0;
  double g = 1.0;
  std::size_t n_x = 0;
  double cfl = 0.7;
  double t_end = 0.0;
  std::string output_dir = "out";
  bool emit_snapshots = false;
  std::vector<double> snapshot_times;
  int benchmark_repeats = 1;

  ModelSpec model_spec() const;
  Grid1D grid() const { return {n_x, -1.0, 1.0}; }
  SolverConfig solver_config() const;

  /// Throws ConfigError for values outside their domains.
  void validate() const;

  bool operator==(const RunManifest&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown, duplicate,
/// missing or malformed keys raise ConfigError with `source:line:` prefixes.
RunManifest parse_config_text(std::string_view text, std::string_view source = "<config>");
RunManifest parse_config(const std::filesystem::path& path);

/// Inverse of parse_config_text; every key is written, doubles with 17
/// significant digits.
std::string write_config(const RunManifest& manifest);

/// Locale-independent shortest-round-trip-safe formatting (17 significant digits).
std::string format_double(double value);

/// SWMOMENT_OUTPUT_ROOT / dir when the variable is set and dir is relative.
std::filesystem::path resolve_output_dir(const std::string& dir);

struct RunOutcome {
  SimulationResult result;
  std::vector<double> wall_times;  ///< one per benchmark repeat
  std::filesystem::path directory;
};

/// Runs the manifest (benchmark_repeats times) and writes solution.csv and
/// meta.csv (plus solution_t<time>.csv snapshots when requested) into the
/// resolved output directory. Solver failures propagate as SolverError.
RunOutcome run_command(const RunManifest& manifest);

/// x,h,u_m[,alpha_1..alpha_N][,dx_h4] for one state. Reduced models list the
/// reconstructed moments and the d_x(h^4) column used for them.
void write_solution_csv(std::ostream& out, const Model& model, const Grid1D& grid, const StateField& state);

/// Relative L1 errors of SWE and reduced runs against SWME runs of the same order.
struct ErrorTable {
  struct Row {
    std::string model;     ///< e.g. "SWE", "RSWME1", "HRSWME2"
    std::string variable;  ///< "h" or "u_m"
    std::vector<double> values;  ///< one per epsilon; NaN if the run failed
  };
  std::vector<double> epsilons;
  std::vector<Row> rows;
  std::vector<std::string> failures;
};

struct TableRequest {
  RunManifest base;  ///< scenario, grid, time, friction; model/order/epsilon are overridden
  int order = 1;
  std::vector<double> epsilons;
  bool include_hyperbolic = false;
};

/// Runs the SWME reference per epsilon, then SWE, RSWME (and HRSWME when
/// requested). A failing reference aborts with SolverError; other failures are
/// recorded as NaN plus a message in `failures`.
ErrorTable build_error_table(const TableRequest& request);

/// Same from a directory of *.cfg files sharing scenario and grid: one SWME
/// reference per epsilon, any number of SWE/RSWME/HRSWME runs.
ErrorTable build_error_table(const std::filesystem::path& config_dir);

/// `model,variable,<eps_1>,...` header followed by one row per table row.
void write_error_table_csv(std::ostream& out, const ErrorTable& table);

struct BenchRow {
  int order = 0;
  double swe = 0.0;    ///< seconds (min over repeats); SWE is order independent
  double swme = 0.0;
  double rswme = 0.0;  ///< includes the final moment reconstruction
  double swme_median = 0.0;
  double rswme_median = 0.0;
};

/// Wall times of SWE, SWME(N) and RSWME(N) for each N, each the minimum over
/// its samples: one SWME sample per round and three back-to-back samples of
/// the cheap SWE/RSWME runs, over manifest.benchmark_repeats rounds.
std::vector<BenchRow> bench_command(const RunManifest& manifest, const std::vector<int>& orders);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace swm
