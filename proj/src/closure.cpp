#include "swmoment/closure.hpp"

#include <stdexcept>

#include "swmoment/model_spec.hpp"

namespace swm {

namespace {

Rational sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

// Ctilde_ij = (2i+1) C_ij
RationalMatrix weighted(const RationalMatrix& c) {
  RationalMatrix out = c;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) out(i, j) *= static_cast<long>(2 * (i + 1) + 1);
  return out;
}

}  // namespace

ClosureConstants compute_constants(const RationalMatrix& c_matrix) {
  const std::size_t n = c_matrix.rows();
  if (n < 1 || c_matrix.cols() != n) throw std::invalid_argument("closure needs a square C_N, N >= 1");

  const RationalMatrix c_inv = c_matrix.inverse();
  const RationalMatrix ct_inv = weighted(c_matrix).inverse();

  ClosureConstants k;
  k.order = static_cast<int>(n);
  k.btilde = c_inv.row_sums();
  k.ftilde = (ct_inv * c_inv).row_sums();

  const Rational c_inv_total = c_inv.total_sum();
  k.dtilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) k.dtilde[i] = -k.ftilde[i] + c_inv_total * k.btilde[i];

  k.gamma = 0;
  for (std::size_t j = 0; j < n; ++j) k.gamma += k.btilde[j] * k.btilde[j] / static_cast<long>(2 * (j + 1) + 1);
  k.phi = sum(k.ftilde);
  k.omega = sum(k.btilde);
  k.lambda = sum(k.dtilde);

  if (k.lambda != -k.phi + k.omega * k.omega)
    throw std::logic_error("closure constants violate Lambda = -Phi + Omega^2");
  return k;
}

ClosureConstants compute_constants(int order, int max_order) {
  return compute_constants(build_c_matrix(order, max_order));
}

ClosureCoefficients to_coefficients(const ClosureConstants& k) {
  ClosureCoefficients f;
  f.order = k.order;
  for (const auto& x : k.btilde) f.btilde.push_back(to_double(x));
  for (const auto& x : k.dtilde) f.dtilde.push_back(to_double(x));
  for (const auto& x : k.ftilde) f.ftilde.push_back(to_double(x));
  f.gamma = to_double(k.gamma);
  f.phi = to_double(k.phi);
  f.omega = to_double(k.omega);
  f.lambda = to_double(k.lambda);
  return f;
}

std::vector<Rational> dtilde_via_i2(const RationalMatrix& c_matrix) {
  const std::size_t n = c_matrix.rows();
  const RationalMatrix c_inv = c_matrix.inverse();
  const Rational total = c_inv.total_sum();

  RationalMatrix i2 = c_inv;
  for (std::size_t i = 0; i < n; ++i) i2(i, i) -= static_cast<long>(2 * (i + 1) + 1) * total;

  const std::vector<Rational> rhs = i2.row_sums();
  std::vector<Rational> d = weighted(c_matrix).solve(rhs);
  for (auto& x : d) x = -x;
  return d;
}

bool lemma_b1_check(int order, int max_order) {
  if (order < 2) throw std::invalid_argument("Lemma B.1 is stated for N >= 2");
  const RationalMatrix c = build_c_matrix(order, max_order);
  const std::vector<Rational> b = c.solve(std::vector<Rational>(static_cast<std::size_t>(order), Rational(1)));
  if (b[0] != Rational(1, 4) || b[1] != Rational(1, 12)) return false;
  for (std::size_t i = 2; i < b.size(); ++i)
    if (b[i] != 0) return false;
  return true;
}

std::vector<double> reconstruct_moments(const ClosureCoefficients& k, double h, double u_m,
                                        double dx_h4, const ModelSpec& params) {
  if (!(h > 0.0)) throw std::invalid_argument("reconstruct_moments: h must be positive");
  if (!(params.epsilon > 0.0 && params.lambda0 > 0.0 && params.nu0 > 0.0))
    throw std::invalid_argument("reconstruct_moments: eps, lambda0, nu0 must be positive");

  const double eps = params.epsilon;
  const double l0 = params.lambda0;
  const double first = -(eps / l0) * u_m * h;
  const double second_u = eps * eps / (l0 * l0) * u_m * h * h;
  const double second_g = -eps * eps * params.g / (4.0 * params.nu0 * l0) * dx_h4;

  std::vector<double> alpha(k.btilde.size());
  for (std::size_t j = 0; j < alpha.size(); ++j)
    alpha[j] = k.btilde[j] * first + k.dtilde[j] * second_u + k.ftilde[j] * second_g;
  return alpha;
}

}  // namespace swm
