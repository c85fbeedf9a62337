#pragma once

#include <vector>

#include "swmoment/basis.hpp"
#include "swmoment/rational.hpp"

namespace swm {

struct ModelSpec;

/// Closure constants of the reduced system for moment order N, all exact.
///
/// The reduced moments take the form
///   alpha_j = -(eps/lambda0) btilde_j u_m h
///           + eps^2 ( dtilde_j u_m h^2 / lambda0^2 - g ftilde_j d_x(h^4) / (4 nu0 lambda0) )
/// and the scalars gamma, phi, omega, lambda are the sums that enter the
/// closed two-equation system.
struct ClosureConstants {
  int order = 0;
  std::vector<Rational> btilde;
  std::vector<Rational> dtilde;
  std::vector<Rational> ftilde;
  Rational gamma;
  Rational phi;
  Rational omega;
  Rational lambda;
};

/// Floating copy for the simulation path.
struct ClosureCoefficients {
  int order = 0;
  std::vector<double> btilde;
  std::vector<double> dtilde;
  std::vector<double> ftilde;
  double gamma = 0.0;
  double phi = 0.0;
  double omega = 0.0;
  double lambda = 0.0;
};

/// Solves the order-by-order closure systems from C_N.
/// Throws std::logic_error if the Lambda cross-check against -Phi + Omega^2 fails.
ClosureConstants compute_constants(const RationalMatrix& c_matrix);

inline ClosureConstants compute_constants(const MomentTensors& tensors) {
  return compute_constants(tensors.c_matrix());
}

/// Same constants for order N, built from C_N only.
ClosureConstants compute_constants(int order, int max_order = kDefaultMaxOrder);

ClosureCoefficients to_coefficients(const ClosureConstants& constants);

/// Second-order vector through the explicit I2 matrix route,
/// Ctilde alpha2 = -(I2 1) u_m h^2 / lambda0^2, i.e. returns -Ctilde^{-1} I2 1.
/// Independent of the -F + Omega B shortcut used in compute_constants.
std::vector<Rational> dtilde_via_i2(const RationalMatrix& c_matrix);

/// True iff the exact solve of C_N b = 1 returns (1/4, 1/12, 0, ..., 0).
/// Throws std::invalid_argument for order < 2.
bool lemma_b1_check(int order, int max_order = kDefaultMaxOrder);

/// Moment values alpha_1..alpha_N of the reduced model at one point, truncated
/// after the eps^2 terms. Throws std::invalid_argument for h <= 0 or
/// non-positive scaling parameters.
std::vector<double> reconstruct_moments(const ClosureCoefficients& constants, double h, double u_m,
                                        double dx_h4, const ModelSpec& params);

}  // namespace swm
