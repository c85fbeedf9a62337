#pragma once

#include <string>
#include <string_view>

namespace swm {

enum class ModelFamily {
  SWE,     ///< classical shallow water, state (h, hu)
  SWME,    ///< full moment system, state (h, hu, h alpha_1..h alpha_N)
  RSWME,   ///< reduced two-equation system with closure of order N
  HRSWME,  ///< RSWME plus the global hyperbolic regularisation
};

std::string_view to_string(ModelFamily family);

/// Case-insensitive; throws std::invalid_argument for unknown names.
ModelFamily parse_family(std::string_view name);

/// Which system to solve and its physical parameters. Friction uses the
/// viscous-slip scaling nu = nu0/eps, lambda = lambda0/eps.
struct ModelSpec {
  ModelFamily family = ModelFamily::SWE;
  int order = 0;
  double g = 1.0;
  double epsilon = 1.0;
  double lambda0 = 1.0;
  double nu0 = 1.0;

  double nu() const { return nu0 / epsilon; }
  double lambda() const { return lambda0 / epsilon; }

  bool reduced() const { return family == ModelFamily::RSWME || family == ModelFamily::HRSWME; }

  /// 2 for SWE and the reduced models, N+2 for SWME.
  int state_dim() const { return family == ModelFamily::SWME ? order + 2 : 2; }

  /// Throws std::invalid_argument on non-positive parameters or an order
  /// inconsistent with the family.
  void validate() const;

  /// Human-readable tag such as "SWE", "SWME2", "HRSWME1".
  std::string label() const;
};

}  // namespace swm
