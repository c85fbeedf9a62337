#include "swmoment/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace swm {

void Grid1D::validate() const {
  if (n_cells < 4) throw std::invalid_argument("grid needs at least 4 cells");
  if (!(x_max > x_min)) throw std::invalid_argument("grid needs x_max > x_min");
}

std::vector<double> StateField::component(int comp) const {
  if (comp < 0 || comp >= dim_) throw std::out_of_range("state component out of range");
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, comp);
  return out;
}

std::vector<double> StateField::mean_velocity() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, 1) / (*this)(i, 0);
  return out;
}

std::vector<double> StateField::moment(int j) const {
  if (j < 1 || j + 1 >= dim_) throw std::out_of_range("moment index out of range");
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, j + 1) / (*this)(i, 0);
  return out;
}

SourceMode default_source_mode(ModelFamily family) {
  return family == ModelFamily::SWME ? SourceMode::Implicit : SourceMode::Explicit;
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0,1]");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  for (double t : snapshot_times)
    if (!(t > 0.0 && t < t_end)) throw std::invalid_argument("snapshot times must lie in (0, t_end)");
}

namespace {

// A CFL step this far below the initial one means the wavespeeds have blown up;
// continuing would not finish in any reasonable time.
constexpr double kCollapseRatio = 1e-6;

void check_cell(const Model& model, const StateField& u, std::size_t i, double time, const char* stage) {
  const auto c = u.cell(i);
  bool finite = true;
  for (int k = 0; k < c.size(); ++k) finite = finite && std::isfinite(c[k]);
  if (finite && c[0] > 0.0) return;

  std::ostringstream msg;
  msg << model.spec().label() << ": " << stage << " produced an invalid state in cell " << i << " at t = " << time
      << " (U =";
  for (int k = 0; k < c.size(); ++k) msg << ' ' << c[k];
  msg << ')';
  throw SolverError(msg.str(), i, time);
}

StateField transport_with_speeds(const Model& model, const Grid1D& grid, const StateField& u, double dt,
                                 const std::vector<double>& speeds, double time) {
  const std::size_t n = u.size();
  const int dim = u.dim();
  const double ratio = dt / grid.dx();

  StateField out = u;
  Matrix a(dim, dim);
  Vector mid(dim), jump(dim), fluct(dim);

  // Interface i+1/2 between cells i and i+1 (periodic); D- goes to cell i,
  // D+ to cell i+1.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = (i + 1 == n) ? 0 : i + 1;
    jump = u.cell(r) - u.cell(i);
    mid = 0.5 * (u.cell(i) + u.cell(r));
    model.system_matrix(mid, a);
    fluct.noalias() = a * jump;
    const double s = std::max(speeds[i], speeds[r]);
    out.cell(i) -= ratio * 0.5 * (fluct - s * jump);
    out.cell(r) -= ratio * 0.5 * (fluct + s * jump);
  }
  for (std::size_t i = 0; i < n; ++i) check_cell(model, out, i, time, "transport step");
  return out;
}

}  // namespace

std::vector<double> cell_wavespeeds(const Model& model, const StateField& u) {
  std::vector<double> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) s[i] = model.max_wavespeed(u.cell(i));
  return s;
}

double stable_dt(const Model& model, const Grid1D& grid, const StateField& u, double cfl) {
  const auto s = cell_wavespeeds(model, u);
  const double smax = *std::max_element(s.begin(), s.end());
  return cfl * grid.dx() / smax;
}

StateField transport_step(const Model& model, const Grid1D& grid, const StateField& u, double dt, double time) {
  grid.validate();
  if (u.size() != grid.n_cells || u.dim() != model.state_dim())
    throw std::invalid_argument("state field does not match grid/model");
  const auto speeds = cell_wavespeeds(model, u);
  const double smax = *std::max_element(speeds.begin(), speeds.end());
  if (dt * smax > grid.dx() * (1.0 + 1e-12)) throw std::invalid_argument("dt violates the CFL bound");
  return transport_with_speeds(model, grid, u, dt, speeds, time);
}

StateField source_step_implicit(const Model& model, const StateField& u, double dt, double time) {
  StateField out = u;
  const int dim = u.dim();
  const Matrix identity = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double h = u(i, 0);
    const Matrix system = identity - dt * model.source_jacobian(h);
    out.cell(i) = system.partialPivLu().solve(Vector(u.cell(i)));
    out(i, 0) = h;
    check_cell(model, out, i, time, "implicit source step");
  }
  return out;
}

StateField source_step_explicit(const Model& model, const StateField& u, double dt, double time) {
  StateField out = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.cell(i) += dt * model.source(u.cell(i));
    check_cell(model, out, i, time, "explicit source step");
  }
  return out;
}

SimulationResult run(const Model& model, const Grid1D& grid, const SolverConfig& config,
                     const StateField& initial) {
  grid.validate();
  config.validate();
  if (initial.size() != grid.n_cells || initial.dim() != model.state_dim())
    throw std::invalid_argument("initial data does not match grid/model");
  for (std::size_t i = 0; i < initial.size(); ++i) check_cell(model, initial, i, 0.0, "initial data");

  std::vector<double> stops = config.snapshot_times;
  std::sort(stops.begin(), stops.end());
  stops.push_back(config.t_end);

  SimulationResult result;
  StateField u = initial;
  double t = 0.0;
  std::size_t next_stop = 0;
  result.dt_min = config.t_end;
  double first_dt = 0.0;

  const auto started = std::chrono::steady_clock::now();
  while (t < config.t_end) {
    const auto speeds = cell_wavespeeds(model, u);
    const auto fastest = std::max_element(speeds.begin(), speeds.end());
    double dt = config.cfl * grid.dx() / *fastest;
    if (result.step_count == 0) first_dt = dt;
    if (!(dt >= kCollapseRatio * first_dt)) {
      std::ostringstream msg;
      msg << "time step collapsed to " << dt << " (initial " << first_dt << ") [step " << result.step_count + 1
          << ']';
      throw SolverError(msg.str(), static_cast<std::size_t>(fastest - speeds.begin()), t);
    }
    const double target = stops[next_stop];
    bool at_stop = false;
    if (t + dt >= target) {
      dt = target - t;
      at_stop = true;
    }

    try {
      u = transport_with_speeds(model, grid, u, dt, speeds, t);
      u = config.source_mode == SourceMode::Implicit ? source_step_implicit(model, u, dt, t)
                                                     : source_step_explicit(model, u, dt, t);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << e.what() << " [step " << result.step_count + 1 << ", dt = " << dt << ']';
      throw SolverError(msg.str(), e.cell(), e.time());
    }

    t = at_stop ? target : t + dt;
    ++result.step_count;
    result.dt_min = std::min(result.dt_min, dt);
    result.dt_max = std::max(result.dt_max, dt);

    if (at_stop) {
      if (next_stop + 1 < stops.size()) result.snapshots.push_back({t, u});
      ++next_stop;
    }
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (result.step_count == 0) result.dt_min = 0.0;
  result.final_time = t;
  result.state = std::move(u);
  return result;
}

}  // namespace swm
