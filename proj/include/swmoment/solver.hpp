#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swmoment/models.hpp"

namespace swm {

/// Uniform periodic grid on [x_min, x_max].
struct Grid1D {
  std::size_t n_cells = 0;
  double x_min = -1.0;
  double x_max = 1.0;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  double center(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }

  /// Throws std::invalid_argument unless n_cells >= 4 and x_max > x_min.
  void validate() const;
};

/// Conserved states of all cells, stored cell-major.
class StateField {
 public:
  StateField() = default;
  StateField(int dim, std::size_t n_cells) : dim_(dim), n_(n_cells), data_(static_cast<std::size_t>(dim) * n_cells, 0.0) {}

  int dim() const { return dim_; }
  std::size_t size() const { return n_; }

  Eigen::Map<Vector> cell(std::size_t i) { return {data_.data() + i * static_cast<std::size_t>(dim_), dim_}; }
  Eigen::Map<const Vector> cell(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_), dim_};
  }

  double& operator()(std::size_t i, int comp) { return data_[i * static_cast<std::size_t>(dim_) + comp]; }
  double operator()(std::size_t i, int comp) const { return data_[i * static_cast<std::size_t>(dim_) + comp]; }

  /// Conserved component `comp` of every cell.
  std::vector<double> component(int comp) const;
  std::vector<double> depth() const { return component(0); }
  /// u_m = (h u_m) / h per cell.
  std::vector<double> mean_velocity() const;
  /// alpha_j = (h alpha_j) / h per cell, j 1-based; requires an SWME field.
  std::vector<double> moment(int j) const;

  const std::vector<double>& raw() const { return data_; }

  bool operator==(const StateField&) const = default;

 private:
  int dim_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class SourceMode { Implicit, Explicit };
enum class ViscosityScheme { Rusanov };

/// Backward Euler for SWME (stiff under the viscous-slip scaling), forward
/// Euler for the two-equation models.
SourceMode default_source_mode(ModelFamily family);

struct SolverConfig {
  double cfl = 0.7;
  double t_end = 0.0;
  SourceMode source_mode = SourceMode::Explicit;
  ViscosityScheme viscosity = ViscosityScheme::Rusanov;
  /// Extra output times in (0, t_end); the final state is always returned.
  std::vector<double> snapshot_times;

  void validate() const;
};

struct Snapshot {
  double time = 0.0;
  StateField state;
};

struct SimulationResult {
  double final_time = 0.0;
  StateField state;
  std::size_t step_count = 0;
  double wall_time = 0.0;  ///< seconds spent in the time loop
  double dt_min = 0.0;
  double dt_max = 0.0;
  std::vector<Snapshot> snapshots;
};

/// Raised on loss of positivity or NaN; carries where and when it happened.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t cell, double time)
      : std::runtime_error(what), cell_(cell), time_(time) {}
  std::size_t cell() const { return cell_; }
  double time() const { return time_; }

 private:
  std::size_t cell_;
  double time_;
};

/// Per-cell max_wavespeed.
std::vector<double> cell_wavespeeds(const Model& model, const StateField& u);

/// Largest stable step cfl * dx / max_i s_i.
double stable_dt(const Model& model, const Grid1D& grid, const StateField& u, double cfl);

/// One first-order path-conservative update with linear paths, midpoint
/// matrix A((U_L+U_R)/2) and Rusanov viscosity s = max(s_L, s_R).
/// `time` only labels diagnostics. Throws std::invalid_argument when dt breaks
/// the CFL bound and SolverError on NaN or h <= 0 after the update.
StateField transport_step(const Model& model, const Grid1D& grid, const StateField& u, double dt,
                          double time = 0.0);

/// Backward Euler on dU/dt = S(U) cell by cell: (I - dt M(h)) U^{n+1} = U^n.
StateField source_step_implicit(const Model& model, const StateField& u, double dt, double time = 0.0);

/// Forward Euler U + dt S(U).
StateField source_step_explicit(const Model& model, const StateField& u, double dt, double time = 0.0);

/// Godunov splitting (transport then source) up to config.t_end, with the last
/// step clipped to land on t_end. Throws SolverError when a cell breaks down or
/// the CFL step falls below 1e-6 of the initial one.
SimulationResult run(const Model& model, const Grid1D& grid, const SolverConfig& config,
                     const StateField& initial);

}  // namespace swm
