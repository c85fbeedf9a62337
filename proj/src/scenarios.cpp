#include "swmoment/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "swmoment/basis.hpp"
#include "swmoment/closure.hpp"

namespace swm {

std::string_view to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::SharpWave: return "sharp_wave";
    case ScenarioName::SmoothSine: return "smooth_sine";
    case ScenarioName::SqrtProfile: return "sqrt_profile";
    case ScenarioName::Custom: return "custom";
  }
  return "?";
}

ScenarioName parse_scenario(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "sharp_wave") return ScenarioName::SharpWave;
  if (lower == "smooth_sine") return ScenarioName::SmoothSine;
  if (lower == "sqrt_profile") return ScenarioName::SqrtProfile;
  if (lower == "custom") return ScenarioName::Custom;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

ScenarioConfig ScenarioConfig::named(ScenarioName name) {
  using std::numbers::pi;
  const HeightProfile sine = [](double x) {
    const double s = std::sin(pi * x / 2.0);
    return 1.0 - 0.1 * s * s;
  };
  const VelocityProfile linear = [](double, double zeta) { return 0.5 * zeta; };

  switch (name) {
    case ScenarioName::SharpWave:
      return {name, [](double x) { return 1.0 + std::exp(3.0 * std::cos(pi * (x + 0.5)) - 4.0); }, linear};
    case ScenarioName::SmoothSine:
      return {name, sine, linear};
    case ScenarioName::SqrtProfile:
      return {name, sine, [](double, double zeta) { return 1.5 * std::sqrt(zeta); }};
    case ScenarioName::Custom:
      break;
  }
  throw std::invalid_argument("custom scenarios need explicit profiles");
}

namespace {

constexpr int kMaxProjectionOrder = 16;

std::vector<double> project_onto(const std::function<double(double)>& u, const ScaledLegendreBasis& basis) {
  using Rule = boost::math::quadrature::gauss<double, 64>;
  const int order = basis.order();
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  // zeta = t^2 removes the endpoint singularity of sqrt-type profiles at the
  // bed while keeping the rule exact for polynomial profiles of degree <= 63.
  auto integrate = [](const auto& f) { return Rule::integrate([&](double t) { return 2.0 * t * f(t * t); }, 0.0, 1.0); };
  out[0] = integrate(u);
  for (int j = 1; j <= order; ++j) {
    const double integral = integrate([&](double z) { return u(z) * basis.eval(j, z); });
    out[static_cast<std::size_t>(j)] = (2.0 * j + 1.0) * integral;
  }
  return out;
}

}  // namespace

std::vector<double> project_velocity(const std::function<double(double)>& u, int order) {
  return project_onto(u, ScaledLegendreBasis(order, kMaxProjectionOrder));
}

StateField init_scenario(const ScenarioConfig& cfg, const Model& model, const Grid1D& grid) {
  grid.validate();
  if (!cfg.height || !cfg.velocity) throw std::invalid_argument("scenario is missing a height or velocity profile");

  const ModelSpec& spec = model.spec();
  const int moments = spec.family == ModelFamily::SWME ? spec.order : 0;
  const ScaledLegendreBasis basis(moments);
  StateField u(model.state_dim(), grid.n_cells);

  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double x = grid.center(i);
    const double h = cfg.height(x);
    if (!(h > 0.0))
      throw std::invalid_argument("initial depth must be positive (h = " + std::to_string(h) +
                                  " at x = " + std::to_string(x) + ")");
    const auto coeffs = project_onto([&](double zeta) { return cfg.velocity(x, zeta); }, basis);
    u(i, 0) = h;
    for (int k = 0; k <= moments; ++k) u(i, k + 1) = h * coeffs[static_cast<std::size_t>(k)];
  }
  return u;
}

std::vector<double> dx_h4(std::span<const double> h, double dx) {
  const std::size_t n = h.size();
  if (n < 3) throw std::invalid_argument("dx_h4 needs at least 3 cells");
  auto p4 = [](double v) { return (v * v) * (v * v); };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = h[(i + n - 1) % n];
    const double right = h[(i + 1) % n];
    out[i] = (p4(right) - p4(left)) / (2.0 * dx);
  }
  return out;
}

double relative_l1(std::span<const double> candidate, std::span<const double> reference) {
  if (candidate.size() != reference.size()) throw std::invalid_argument("relative_l1: fields differ in size");
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    diff += std::abs(candidate[i] - reference[i]);
    norm += std::abs(reference[i]);
  }
  if (norm == 0.0) throw std::invalid_argument("relative_l1: reference has zero norm");
  return diff / norm;
}

std::vector<double> velocity_profile(double u_m, std::span<const double> alpha,
                                     std::span<const double> zeta_samples) {
  const ScaledLegendreBasis basis(static_cast<int>(alpha.size()), kMaxProjectionOrder);
  std::vector<double> out;
  out.reserve(zeta_samples.size());
  for (double z : zeta_samples) {
    double u = u_m;
    for (std::size_t j = 0; j < alpha.size(); ++j) u += alpha[j] * basis.eval(static_cast<int>(j) + 1, z);
    out.push_back(u);
  }
  return out;
}

std::vector<std::vector<double>> moment_fields(const Model& model, const Grid1D& grid, const StateField& state,
                                               int order) {
  const ModelSpec& spec = model.spec();
  const std::size_t n = state.size();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(std::max(order, 0)), std::vector<double>(n, 0.0));

  switch (spec.family) {
    case ModelFamily::SWE:
      return out;
    case ModelFamily::SWME:
      if (order > spec.order) throw std::invalid_argument("requested more moments than the SWME state carries");
      for (int j = 1; j <= order; ++j) out[static_cast<std::size_t>(j - 1)] = state.moment(j);
      return out;
    case ModelFamily::RSWME:
    case ModelFamily::HRSWME:
      break;
  }

  const ClosureCoefficients k = order == spec.order ? *model.closure() : to_coefficients(compute_constants(order));
  const auto h = state.depth();
  const auto um = state.mean_velocity();
  const auto dh4 = dx_h4(h, grid.dx());
  for (std::size_t i = 0; i < n; ++i) {
    const auto alpha = reconstruct_moments(k, h[i], um[i], dh4[i], spec);
    for (std::size_t j = 0; j < alpha.size(); ++j) out[j][i] = alpha[j];
  }
  return out;
}

}  // namespace swm
