// Command-line front end: run / table / bench / constants / eigs.

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swmoment/closure.hpp"
#include "swmoment/driver.hpp"
#include "swmoment/models.hpp"

namespace fs = std::filesystem;

namespace {

// Writes to `path` when given, stdout otherwise.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  const fs::path p = swm::resolve_output_dir(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  write(out);
  std::cerr << "wrote " << p.string() << '\n';
}

int cmd_run(const std::string& cfg) {
  const auto manifest = swm::parse_config(cfg);
  const auto outcome = swm::run_command(manifest);
  std::cout << manifest.model_spec().label() << ": t = " << outcome.result.final_time << " in "
            << outcome.result.step_count << " steps, wall " << outcome.wall_times.back() << " s -> "
            << outcome.directory.string() << '\n';
  return 0;
}

int cmd_table(const std::string& source, const std::vector<double>& eps, int order, bool hyperbolic,
              const std::string& out_path) {
  swm::ErrorTable table;
  if (fs::is_directory(source)) {
    table = swm::build_error_table(fs::path(source));
  } else {
    swm::TableRequest req;
    req.base = swm::parse_config(source);
    req.order = order > 0 ? order : std::max(req.base.order, 1);
    req.epsilons = eps.empty() ? std::vector<double>{req.base.epsilon} : eps;
    req.include_hyperbolic = hyperbolic;
    table = swm::build_error_table(req);
  }
  emit(out_path, [&](std::ostream& os) { swm::write_error_table_csv(os, table); });
  for (const auto& f : table.failures) std::cerr << "run failed: " << f << '\n';
  return table.failures.empty() ? 0 : 1;
}

int cmd_bench(const std::string& cfg, const std::vector<int>& orders, int repeats, const std::string& out_path) {
  auto manifest = swm::parse_config(cfg);
  if (repeats > 0) manifest.benchmark_repeats = repeats;
  const auto rows = swm::bench_command(manifest, orders);
  emit(out_path, [&](std::ostream& os) { swm::write_bench_csv(os, rows); });
  return 0;
}

int cmd_constants(int order) {
  const auto c = swm::compute_constants(order);
  auto line = [](const std::string& name, const swm::Rational& v) {
    std::cout << name << " = " << swm::to_string(v) << " = " << swm::format_double(swm::to_double(v)) << '\n';
  };
  std::cout << "N = " << order << '\n';
  line("Gamma", c.gamma);
  line("Phi", c.phi);
  line("Omega", c.omega);
  line("Lambda", c.lambda);
  for (std::size_t j = 0; j < c.btilde.size(); ++j) {
    const std::string idx = "[" + std::to_string(j + 1) + "]";
    line("Btilde" + idx, c.btilde[j]);
    line("Dtilde" + idx, c.dtilde[j]);
    line("Ftilde" + idx, c.ftilde[j]);
  }
  return 0;
}

int cmd_eigs(const std::string& family, int order, double h, double um, double eps, double lambda0, double nu0,
             double g) {
  swm::ModelSpec spec;
  spec.family = swm::parse_family(family);
  spec.order = order;
  spec.epsilon = eps;
  spec.lambda0 = lambda0;
  spec.nu0 = nu0;
  spec.g = g;
  const swm::Model model(spec);

  swm::Vector u = swm::Vector::Zero(model.state_dim());
  u[0] = h;
  u[1] = h * um;
  const auto values = spec.reduced() ? std::vector<std::complex<double>>{} : swm::numerical_eigenvalues(model, u);
  std::vector<std::complex<double>> eig = values;
  if (spec.reduced()) {
    const auto closed = swm::rswme_eigenvalues(model, u);
    eig.assign(closed.begin(), closed.end());
  }

  bool real = true;
  std::cout << spec.label() << " at h = " << h << ", u_m = " << um << ":\n";
  for (const auto& l : eig) {
    std::cout << "  " << swm::format_double(l.real());
    if (l.imag() != 0.0) std::cout << (l.imag() > 0 ? " + " : " - ") << swm::format_double(std::abs(l.imag())) << "i";
    std::cout << '\n';
    real = real && std::abs(l.imag()) <= 1e-12 * std::max(1.0, std::abs(l.real()));
  }
  if (spec.reduced()) {
    std::cout << "discriminant = " << swm::format_double(swm::rswme_discriminant(model, h, um)) << '\n';
    const double threshold = swm::hyperbolicity_threshold(spec);
    if (std::isfinite(threshold)) std::cout << "threshold h (u_m = 0) = " << swm::format_double(threshold) << '\n';
  }
  std::cout << (real ? "hyperbolic" : "not hyperbolic (complex eigenvalues)") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow-water moment models: simulation, error tables, benchmarks"};
  app.require_subcommand(1);

  std::string cfg;
  auto* run = app.add_subcommand("run", "Run one config file");
  run->add_option("config", cfg, "config file")->required()->check(CLI::ExistingFile);

  std::string table_src, table_out;
  std::vector<double> table_eps;
  int table_n = 0;
  bool table_hyp = false;
  auto* table = app.add_subcommand("table", "Relative L1 error table against SWME references");
  table->add_option("source", table_src, "directory of *.cfg runs, or one base config for a sweep")
      ->required()
      ->check(CLI::ExistingPath);
  table->add_option("--eps", table_eps, "epsilon sweep (base-config mode)")->delimiter(',');
  table->add_option("--n", table_n, "moment order (base-config mode; default from config)");
  table->add_flag("--hyperbolic", table_hyp, "add an HRSWME row");
  table->add_option("-o,--out", table_out, "output CSV (stdout if omitted)");

  std::string bench_cfg, bench_out;
  std::vector<int> bench_n{2, 4, 6};
  int bench_repeats = 0;
  auto* bench = app.add_subcommand("bench", "Wall-time comparison of SWE, SWME(N), RSWME(N)");
  bench->add_option("config", bench_cfg, "base config")->required()->check(CLI::ExistingFile);
  bench->add_option("--n", bench_n, "moment orders")->delimiter(',');
  bench->add_option("--repeats", bench_repeats, "override benchmark_repeats");
  bench->add_option("-o,--out", bench_out, "output CSV (stdout if omitted)");

  int const_n = 1;
  auto* constants = app.add_subcommand("constants", "Exact closure constants");
  constants->add_option("--n", const_n, "moment order")->required()->check(CLI::Range(1, swm::kDefaultMaxOrder));

  std::string eig_model;
  int eig_n = 0;
  double eig_h = 1.0, eig_um = 0.0, eig_eps = 1.0, eig_lambda0 = 1.0, eig_nu0 = 1.0, eig_g = 1.0;
  auto* eigs = app.add_subcommand("eigs", "Eigenvalues of the system matrix at one state");
  eigs->set_help_flag("--help", "Print this help message and exit");  // --h is the depth
  eigs->add_option("--model", eig_model, "SWE | SWME | RSWME | HRSWME")->required();
  eigs->add_option("--n", eig_n, "moment order");
  eigs->add_option("--h", eig_h, "depth")->required();
  eigs->add_option("--um", eig_um, "mean velocity")->required();
  eigs->add_option("--eps", eig_eps, "epsilon");
  eigs->add_option("--lambda0", eig_lambda0, "slip length scale");
  eigs->add_option("--nu0", eig_nu0, "viscosity scale");
  eigs->add_option("--g", eig_g, "gravity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(cfg);
    if (*table) return cmd_table(table_src, table_eps, table_n, table_hyp, table_out);
    if (*bench) return cmd_bench(bench_cfg, bench_n, bench_repeats, bench_out);
    if (*constants) return cmd_constants(const_n);
    if (*eigs) return cmd_eigs(eig_model, eig_n, eig_h, eig_um, eig_eps, eig_lambda0, eig_nu0, eig_g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
