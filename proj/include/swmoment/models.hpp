#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "swmoment/basis.hpp"
#include "swmoment/closure.hpp"
#include "swmoment/model_spec.hpp"

namespace swm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using StateRef = Eigen::Ref<const Eigen::VectorXd>;

/// A validated ModelSpec together with the floating tensors / closure
/// constants it needs. Immutable after construction; every member function is
/// pure and may be called concurrently.
///
/// States are conserved vectors U = (h, h u_m [, h alpha_1 .. h alpha_N]).
/// Every function taking a state throws std::domain_error when h <= 0.
class Model {
 public:
  explicit Model(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  int state_dim() const { return spec_.state_dim(); }

  /// Closure constants; present for the reduced families.
  const std::optional<ClosureCoefficients>& closure() const { return closure_; }
  /// Moment tensors; present for SWME.
  const std::optional<DenseTensors>& tensors() const { return tensors_; }

  /// Quasi-linear system matrix A(U) = dF/dU - Q(U). For the reduced models
  /// the d_x(h^4) part of the closed friction sits in entry (1,0).
  Matrix system_matrix(StateRef u) const;
  void system_matrix(StateRef u, Eigen::Ref<Matrix> out) const;

  /// Friction source S(U).
  Vector source(StateRef u) const;

  /// M(h) with S(U) = M(h) U. Column 0 is zero (h carries no friction), so the
  /// momentum/moment block is linear in the conserved variables for fixed h.
  Matrix source_jacobian(double h) const;

  /// Spectral radius of A(U), or a bound on it when A(U) has complex
  /// eigenvalues; see the implementation for the per-family rule.
  double max_wavespeed(StateRef u) const;

  /// Regularisation constant K of the HRSWME term 4 eps^4 g h^5 / (K^2 lambda0^4);
  /// K = 4 / Phi, i.e. 192 for N = 1 and 180 for N >= 2. Reduced families only.
  double regularisation_k() const;

 private:
  ModelSpec spec_;
  std::optional<ClosureCoefficients> closure_;
  std::optional<DenseTensors> tensors_;
  double regularisation_k_ = 0.0;
};

/// Term D under the square root in lambda = u_m (1 + Gamma c h^2) +- sqrt(g h) sqrt(D),
/// c = eps^2 / lambda0^2. Reduced families only.
double rswme_discriminant(const Model& model, double h, double u_m);

/// Closed-form eigenvalues of the 2x2 reduced system; complex when D < 0.
std::array<std::complex<double>, 2> rswme_eigenvalues(const Model& model, StateRef u);

/// All eigenvalues of A(U) from a general dense eigensolver.
std::vector<std::complex<double>> numerical_eigenvalues(const Model& model, StateRef u);

/// Largest h for which the reduced system is hyperbolic at u_m = 0:
/// lambda0 / (eps sqrt(Phi)), i.e. 4 sqrt(3) lambda0/eps for N = 1 and
/// 3 sqrt(5) lambda0/eps for N >= 2; +infinity for HRSWME.
/// Throws std::invalid_argument for SWE/SWME.
double hyperbolicity_threshold(const ModelSpec& spec);

}  // namespace swm
