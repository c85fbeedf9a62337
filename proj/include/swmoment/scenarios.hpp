#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swmoment/models.hpp"
#include "swmoment/solver.hpp"

namespace swm {

enum class ScenarioName {
  SharpWave,    ///< h = 1 + exp(3 cos(pi (x + 0.5)) - 4), u = 0.5 zeta
  SmoothSine,   ///< h = 1 - 0.1 sin(pi x / 2)^2,          u = 0.5 zeta
  SqrtProfile,  ///< h = 1 - 0.1 sin(pi x / 2)^2,          u = 1.5 sqrt(zeta)
  Custom,
};

std::string_view to_string(ScenarioName name);
ScenarioName parse_scenario(std::string_view name);

using HeightProfile = std::function<double(double x)>;
using VelocityProfile = std::function<double(double x, double zeta)>;

struct ScenarioConfig {
  ScenarioName name = ScenarioName::SmoothSine;
  HeightProfile height;
  VelocityProfile velocity;

  /// Built-in profiles for a named scenario; Custom throws.
  static ScenarioConfig named(ScenarioName name);
};

/// (u_m, alpha_1..alpha_N) of a vertical profile u(zeta), by 64-point Gauss
/// quadrature in t = sqrt(zeta): u_m = int u, alpha_j = (2j+1) int u phi_j.
std::vector<double> project_velocity(const std::function<double(double)>& u, int order);

/// Cell-centre initial data for `model`; SWE and the reduced models keep only u_m.
/// Throws std::invalid_argument when h <= 0 anywhere.
StateField init_scenario(const ScenarioConfig& cfg, const Model& model, const Grid1D& grid);

/// Central difference (h^4_{i+1} - h^4_{i-1}) / (2 dx), periodic.
std::vector<double> dx_h4(std::span<const double> h, double dx);

/// sum |c - r| / sum |r|; throws std::invalid_argument on size mismatch or a
/// zero-norm reference.
double relative_l1(std::span<const double> candidate, std::span<const double> reference);

/// u(zeta) = u_m + sum_j alpha_j phi_j(zeta) at each sample.
std::vector<double> velocity_profile(double u_m, std::span<const double> alpha,
                                     std::span<const double> zeta_samples);

/// Moments alpha_{j}(x_i) per cell, j = 1..order: read directly from an SWME
/// state, reconstructed through the closure for the reduced families (order
/// may differ from the model's own), zero for SWE. Result is indexed
/// [j-1][cell].
std::vector<std::vector<double>> moment_fields(const Model& model, const Grid1D& grid, const StateField& state,
                                               int order);

}  // namespace swm
