#include "swmoment/driver.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace swm {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Manifest

ModelSpec RunManifest::model_spec() const {
  ModelSpec spec;
  spec.family = model;
  spec.order = order;
  spec.g = g;
  spec.epsilon = epsilon;
  spec.lambda0 = lambda0;
  spec.nu0 = nu0;
  return spec;
}

SolverConfig RunManifest::solver_config() const {
  SolverConfig cfg;
  cfg.cfl = cfl;
  cfg.t_end = t_end;
  cfg.source_mode = default_source_mode(model);
  cfg.snapshot_times = snapshot_times;
  return cfg;
}

void RunManifest::validate() const {
  if (scenario == ScenarioName::Custom) throw ConfigError("scenario 'custom' cannot be run from a config file");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0,1]");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (n_x < 4) throw ConfigError("n_x must be at least 4");
  if (benchmark_repeats < 1) throw ConfigError("benchmark_repeats must be at least 1");
  if (order < 0) throw ConfigError("n must be non-negative");
  try {
    model_spec().validate();
    solver_config().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kRequiredKeys[] = {"scenario", "model", "epsilon", "n_x", "t_end"};
constexpr std::string_view kKnownKeys[] = {"scenario", "model",  "n",          "epsilon",        "lambda0",
                                           "nu0",      "g",      "n_x",        "cfl",            "t_end",
                                           "output_dir", "emit_snapshots", "snapshot_times", "benchmark_repeats"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<bool> parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  return std::nullopt;
}

struct Line {
  int number;
  std::string value;
};

}  // namespace

RunManifest parse_config_text(std::string_view text, std::string_view source) {
  std::map<std::string, Line, std::less<>> entries;
  const std::string src(source);
  auto fail = [&](int line, const std::string& msg) -> ConfigError {
    return ConfigError(src + ":" + std::to_string(line) + ": " + msg);
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
      throw fail(line_no, "unknown key '" + key + "'");
    if (value.empty()) throw fail(line_no, "key '" + key + "' has no value");
    if (const auto it = entries.find(key); it != entries.end())
      throw fail(line_no, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.number) + ")");
    entries.emplace(key, Line{line_no, value});
    if (end == text.size()) break;
  }

  std::vector<std::string> missing;
  for (auto key : kRequiredKeys)
    if (!entries.contains(key)) missing.emplace_back(key);
  if (!missing.empty()) {
    std::string msg = src + ": missing required keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }

  RunManifest m;
  auto real = [&](const char* key, double& out) {
    const auto it = entries.find(key);
    if (it == entries.end()) return;
    const auto v = parse_number<double>(it->second.value);
    if (!v || !std::isfinite(*v)) throw fail(it->second.number, std::string(key) + " must be a finite number");
    out = *v;
  };
  auto integer = [&](const char* key, auto& out) {
    const auto it = entries.find(key);
    if (it == entries.end()) return;
    const auto v = parse_number<long long>(it->second.value);
    if (!v || *v < 0) throw fail(it->second.number, std::string(key) + " must be a non-negative integer");
    out = static_cast<std::remove_reference_t<decltype(out)>>(*v);
  };

  for (const auto& [key, line] : entries) {
    try {
      if (key == "scenario") m.scenario = parse_scenario(line.value);
      if (key == "model") m.model = parse_family(line.value);
    } catch (const std::invalid_argument& e) {
      throw fail(line.number, e.what());
    }
  }
  integer("n", m.order);
  real("epsilon", m.epsilon);
  real("lambda0", m.lambda0);
  real("nu0", m.nu0);
  real("g", m.g);
  integer("n_x", m.n_x);
  real("cfl", m.cfl);
  real("t_end", m.t_end);
  integer("benchmark_repeats", m.benchmark_repeats);
  if (const auto it = entries.find("output_dir"); it != entries.end()) m.output_dir = it->second.value;
  if (const auto it = entries.find("emit_snapshots"); it != entries.end()) {
    const auto v = parse_bool(it->second.value);
    if (!v) throw fail(it->second.number, "emit_snapshots must be true or false");
    m.emit_snapshots = *v;
  }
  if (const auto it = entries.find("snapshot_times"); it != entries.end()) {
    std::string_view rest = it->second.value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      const auto v = parse_number<double>(item);
      if (!v) throw fail(it->second.number, "snapshot_times must be a comma-separated list of numbers");
      m.snapshot_times.push_back(*v);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }

  try {
    m.validate();
  } catch (const ConfigError& e) {
    // Point at the offending line when the message names a single key.
    for (const auto& [key, line] : entries)
      if (std::string_view(e.what()).starts_with(key + " ")) throw fail(line.number, e.what());
    throw ConfigError(src + ": " + e.what());
  }
  return m;
}

RunManifest parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::string write_config(const RunManifest& m) {
  std::ostringstream out;
  out << "scenario = " << to_string(m.scenario) << '\n'
      << "model = " << to_string(m.model) << '\n'
      << "n = " << m.order << '\n'
      << "epsilon = " << format_double(m.epsilon) << '\n'
      << "lambda0 = " << format_double(m.lambda0) << '\n'
      << "nu0 = " << format_double(m.nu0) << '\n'
      << "g = " << format_double(m.g) << '\n'
      << "n_x = " << m.n_x << '\n'
      << "cfl = " << format_double(m.cfl) << '\n'
      << "t_end = " << format_double(m.t_end) << '\n'
      << "output_dir = " << m.output_dir << '\n'
      << "emit_snapshots = " << (m.emit_snapshots ? "true" : "false") << '\n'
      << "benchmark_repeats = " << m.benchmark_repeats << '\n';
  if (!m.snapshot_times.empty()) {
    out << "snapshot_times = ";
    for (std::size_t i = 0; i < m.snapshot_times.size(); ++i)
      out << (i ? ", " : "") << format_double(m.snapshot_times[i]);
    out << '\n';
  }
  return out.str();
}

fs::path resolve_output_dir(const std::string& dir) {
  const fs::path p(dir);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("SWMOMENT_OUTPUT_ROOT"); root && *root) return fs::path(root) / p;
  return p;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Completed {
  Model model;
  SimulationResult result;
};

Completed simulate(const RunManifest& m) {
  Model model(m.model_spec());
  const Grid1D grid = m.grid();
  const StateField initial = init_scenario(ScenarioConfig::named(m.scenario), model, grid);
  auto result = run(model, grid, m.solver_config(), initial);
  return {std::move(model), std::move(result)};
}

std::string time_tag(double t) {
  std::string s = format_double(t);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_solution_csv(std::ostream& out, const Model& model, const Grid1D& grid, const StateField& state) {
  const ModelSpec& spec = model.spec();
  const int n_alpha = spec.family == ModelFamily::SWE ? 0 : spec.order;
  const auto h = state.depth();
  const auto um = state.mean_velocity();
  const auto alpha = moment_fields(model, grid, state, n_alpha);
  std::vector<double> dh4;
  if (spec.reduced()) dh4 = dx_h4(h, grid.dx());

  out << "x,h,u_m";
  for (int j = 1; j <= n_alpha; ++j) out << ",alpha_" << j;
  if (spec.reduced()) out << ",dx_h4";
  out << '\n';
  for (std::size_t i = 0; i < state.size(); ++i) {
    out << format_double(grid.center(i)) << ',' << format_double(h[i]) << ',' << format_double(um[i]);
    for (const auto& a : alpha) out << ',' << format_double(a[i]);
    if (spec.reduced()) out << ',' << format_double(dh4[i]);
    out << '\n';
  }
}

RunOutcome run_command(const RunManifest& manifest) {
  manifest.validate();
  RunOutcome outcome;
  std::optional<Completed> last;
  for (int r = 0; r < manifest.benchmark_repeats; ++r) {
    last.emplace(simulate(manifest));
    outcome.wall_times.push_back(last->result.wall_time);
  }
  outcome.result = std::move(last->result);
  const Model& model = last->model;
  const Grid1D grid = manifest.grid();

  outcome.directory = resolve_output_dir(manifest.output_dir);
  fs::create_directories(outcome.directory);

  auto solution_text = [&](const StateField& state) {
    std::ostringstream s;
    write_solution_csv(s, model, grid, state);
    return s.str();
  };
  write_file(outcome.directory / "solution.csv", solution_text(outcome.result.state));
  if (manifest.emit_snapshots)
    for (const auto& snap : outcome.result.snapshots)
      write_file(outcome.directory / ("solution_t" + time_tag(snap.time) + ".csv"), solution_text(snap.state));

  const auto& res = outcome.result;
  std::ostringstream meta;
  meta << "key,value\n"
       << "model," << model.spec().label() << '\n'
       << "scenario," << to_string(manifest.scenario) << '\n'
       << "epsilon," << format_double(manifest.epsilon) << '\n'
       << "n_x," << manifest.n_x << '\n'
       << "final_time," << format_double(res.final_time) << '\n'
       << "steps," << res.step_count << '\n'
       << "dt_min," << format_double(res.dt_min) << '\n'
       << "dt_max," << format_double(res.dt_max) << '\n'
       << "dt_mean,"
       << format_double(res.step_count ? res.final_time / static_cast<double>(res.step_count) : 0.0) << '\n'
       << "repeats," << outcome.wall_times.size() << '\n'
       << "wall_time_min," << format_double(*std::min_element(outcome.wall_times.begin(), outcome.wall_times.end()))
       << '\n'
       << "wall_time_median," << format_double(median(outcome.wall_times)) << '\n';
  write_file(outcome.directory / "meta.csv", meta.str());
  return outcome;
}

// ---------------------------------------------------------------------------
// Error tables

namespace {

bool same_setup(const RunManifest& a, const RunManifest& b) {
  return a.scenario == b.scenario && a.n_x == b.n_x && a.t_end == b.t_end && a.cfl == b.cfl && a.g == b.g &&
         a.lambda0 == b.lambda0 && a.nu0 == b.nu0;
}

int family_rank(ModelFamily f) {
  switch (f) {
    case ModelFamily::SWE: return 0;
    case ModelFamily::RSWME: return 1;
    case ModelFamily::HRSWME: return 2;
    case ModelFamily::SWME: return 3;
  }
  return 4;
}

ErrorTable table_from_manifests(std::vector<RunManifest> runs) {
  if (runs.empty()) throw std::invalid_argument("error table needs at least one run");
  for (const auto& m : runs) {
    m.validate();
    if (!same_setup(m, runs.front()))
      throw std::invalid_argument("all runs of an error table must share scenario, grid, time and parameters");
  }

  ErrorTable table;
  std::set<double> eps_set;
  for (const auto& m : runs) eps_set.insert(m.epsilon);
  table.epsilons.assign(eps_set.begin(), eps_set.end());

  // Row labels in display order: SWE, RSWME, HRSWME, each by order.
  std::vector<std::pair<int, int>> keys;
  std::map<std::pair<int, int>, std::string> labels;
  for (const auto& m : runs) {
    if (m.model == ModelFamily::SWME) continue;
    const std::pair<int, int> k{family_rank(m.model), m.order};
    if (!labels.contains(k)) keys.push_back(k);
    labels[k] = m.model_spec().label();
  }
  std::sort(keys.begin(), keys.end());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const char* var : {"h", "u_m"})
    for (const auto& k : keys) table.rows.push_back({labels[k], var, std::vector<double>(table.epsilons.size(), nan)});

  const std::size_t n_rows = keys.size();
  for (std::size_t e = 0; e < table.epsilons.size(); ++e) {
    const double eps = table.epsilons[e];
    const RunManifest* ref_manifest = nullptr;
    for (const auto& m : runs) {
      if (m.epsilon != eps || m.model != ModelFamily::SWME) continue;
      if (ref_manifest)
        throw std::invalid_argument("more than one SWME reference for epsilon = " + format_double(eps));
      ref_manifest = &m;
    }
    if (!ref_manifest) throw std::invalid_argument("no SWME reference run for epsilon = " + format_double(eps));

    const auto ref = simulate(*ref_manifest);  // a failure here aborts the table
    const auto ref_h = ref.result.state.depth();
    const auto ref_u = ref.result.state.mean_velocity();

    for (const auto& m : runs) {
      if (m.epsilon != eps || m.model == ModelFamily::SWME) continue;
      const std::size_t row = static_cast<std::size_t>(
          std::find(keys.begin(), keys.end(), std::pair{family_rank(m.model), m.order}) - keys.begin());
      try {
        const auto c = simulate(m);
        table.rows[row].values[e] = relative_l1(c.result.state.depth(), ref_h);
        table.rows[n_rows + row].values[e] = relative_l1(c.result.state.mean_velocity(), ref_u);
      } catch (const SolverError& err) {
        table.failures.push_back(m.model_spec().label() + " at epsilon = " + format_double(eps) + ": " + err.what());
      }
    }
  }
  return table;
}

}  // namespace

ErrorTable build_error_table(const TableRequest& request) {
  if (request.epsilons.empty()) throw std::invalid_argument("error table needs at least one epsilon");
  std::vector<RunManifest> runs;
  for (double eps : request.epsilons) {
    RunManifest m = request.base;
    m.epsilon = eps;
    auto add = [&](ModelFamily f, int order) {
      m.model = f;
      m.order = order;
      runs.push_back(m);
    };
    add(ModelFamily::SWME, request.order);
    add(ModelFamily::SWE, 0);
    add(ModelFamily::RSWME, request.order);
    if (request.include_hyperbolic) add(ModelFamily::HRSWME, request.order);
  }
  return table_from_manifests(std::move(runs));
}

ErrorTable build_error_table(const fs::path& config_dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("no *.cfg files in " + config_dir.string());
  std::vector<RunManifest> runs;
  for (const auto& f : files) runs.push_back(parse_config(f));
  return table_from_manifests(std::move(runs));
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table) {
  out << "model,variable";
  for (double eps : table.epsilons) out << ',' << format_double(eps);
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.model << ',' << row.variable;
    for (double v : row.values) out << ',' << (std::isnan(v) ? std::string("nan") : format_double(v));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Benchmarks

namespace {

// Wall time of one run; for the reduced models the moments are evaluated
// once, at the final time, and that pass is included.
double timed_run(const RunManifest& m) {
  auto c = simulate(m);
  double t = c.result.wall_time;
  if (m.model_spec().reduced()) {
    const auto started = std::chrono::steady_clock::now();
    const auto alpha = moment_fields(c.model, m.grid(), c.result.state, m.order);
    t += std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (alpha.size() != static_cast<std::size_t>(m.order)) throw std::logic_error("moment reconstruction failed");
  }
  return t;
}

}  // namespace

std::vector<BenchRow> bench_command(const RunManifest& manifest, const std::vector<int>& orders) {
  if (orders.empty()) throw std::invalid_argument("bench needs at least one order");
  for (int n : orders)
    if (n < 1) throw std::invalid_argument("bench orders must be >= 1");
  RunManifest swe = manifest;
  swe.model = ModelFamily::SWE;
  swe.order = 0;
  swe.validate();

  // Repeats are interleaved in rounds over all runs so that slow drifts in
  // machine speed affect every model alike. Within a round the cheap
  // two-equation runs go back to back, several times, so that the RSWME orders
  // are compared under the same machine state.
  constexpr int kCheapSamplesPerRound = 3;
  std::vector<double> swe_times;
  std::vector<std::vector<double>> swme_times(orders.size()), rswme_times(orders.size());
  auto with = [&](ModelFamily family, int order) {
    RunManifest m = swe;
    m.model = family;
    m.order = order;
    return m;
  };
  for (int r = 0; r < manifest.benchmark_repeats; ++r) {
    for (std::size_t k = 0; k < orders.size(); ++k)
      swme_times[k].push_back(timed_run(with(ModelFamily::SWME, orders[k])));
    for (int s = 0; s < kCheapSamplesPerRound; ++s) {
      swe_times.push_back(timed_run(swe));
      for (std::size_t k = 0; k < orders.size(); ++k)
        rswme_times[k].push_back(timed_run(with(ModelFamily::RSWME, orders[k])));
    }
  }

  auto min_of = [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); };
  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    BenchRow row;
    row.order = orders[k];
    row.swe = min_of(swe_times);
    row.swme = min_of(swme_times[k]);
    row.swme_median = median(swme_times[k]);
    row.rswme = min_of(rswme_times[k]);
    row.rswme_median = median(rswme_times[k]);
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "N,SWE,SWME,RSWME,SWME_median,RSWME_median\n";
  for (const auto& r : rows)
    out << r.order << ',' << format_double(r.swe) << ',' << format_double(r.swme) << ',' << format_double(r.rswme)
        << ',' << format_double(r.swme_median) << ',' << format_double(r.rswme_median) << '\n';
}

}  // namespace swm
