#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "swmoment/rational.hpp"

namespace swm {

/// Largest moment order accepted by default. Exact tensors stay cheap well
/// beyond this, but nothing downstream is validated past it.
inline constexpr int kDefaultMaxOrder = 12;

/// Throws std::invalid_argument unless 0 <= order <= max_order.
void check_order(int order, int max_order = kDefaultMaxOrder);

/// Scaled Legendre polynomials phi_1..phi_N on zeta in [0,1], phi_j(0) = 1,
/// stored as exact integer monomial coefficients (lowest degree first).
/// phi_0 == 1 is implicit and not stored.
class ScaledLegendreBasis {
 public:
  explicit ScaledLegendreBasis(int order, int max_order = kDefaultMaxOrder);

  int order() const { return order_; }

  /// Monomial coefficients of phi_j, 1 <= j <= order().
  const std::vector<BigInt>& coefficients(int j) const;

  /// phi_j(zeta) by the Legendre three-term recurrence, 1 <= j <= order(),
  /// 0 <= zeta <= 1.
  double eval(int j, double zeta) const;

  /// Coefficients of phi_j converted to double (cached, lowest degree first).
  const std::vector<double>& float_coefficients(int j) const;

 private:
  int order_;
  std::vector<std::vector<BigInt>> coeffs_;
  std::vector<std::vector<double>> float_coeffs_;
};

inline ScaledLegendreBasis build_basis(int order, int max_order = kDefaultMaxOrder) {
  return ScaledLegendreBasis(order, max_order);
}

inline double eval_phi(const ScaledLegendreBasis& basis, int j, double zeta) {
  return basis.eval(j, zeta);
}

/// Integrals arising from depth integration of the moment system, all exact.
/// Public accessors take 1-based moment indices i, j, k in 1..order().
///
///   A_ijk = (2i+1) int phi_i phi_j phi_k
///   B_ijk = (2i+1) int phi_i' (int_0^zeta phi_j) phi_k
///   C_ij  =        int phi_i' phi_j'
///
/// C carries no (2i+1) weight: that weight is applied in the friction term,
/// which keeps C symmetric and equal to the closed form 2m(m+1), m = min(i,j),
/// for i - j even.
class MomentTensors {
 public:
  int order() const { return order_; }

  const Rational& a(int i, int j, int k) const { return a_[index3(i, j, k)]; }
  const Rational& b(int i, int j, int k) const { return b_[index3(i, j, k)]; }
  const Rational& c(int i, int j) const { return c_(i - 1, j - 1); }

  /// The N x N matrix C_N.
  const RationalMatrix& c_matrix() const { return c_; }

  friend MomentTensors build_tensors(int order, int max_order);

 private:
  std::size_t index3(int i, int j, int k) const {
    const auto n = static_cast<std::size_t>(order_);
    return (static_cast<std::size_t>(i - 1) * n + static_cast<std::size_t>(j - 1)) * n +
           static_cast<std::size_t>(k - 1);
  }

  int order_ = 0;
  std::vector<Rational> a_;
  std::vector<Rational> b_;
  RationalMatrix c_;
};

/// Builds all tensors by exact monomial integration; order >= 1.
MomentTensors build_tensors(int order, int max_order = kDefaultMaxOrder);

/// C_N alone, by exact integration (no A/B work).
RationalMatrix build_c_matrix(int order, int max_order = kDefaultMaxOrder);

/// C_N from the closed form: 0 for i - j odd, 2m(m+1) with m = min(i,j) otherwise.
RationalMatrix closed_form_c_matrix(int order);

/// Floating copies of the tensors, flattened with 0-based indices, for the
/// simulation path.
struct DenseTensors {
  int order = 0;
  std::vector<double> a;  // a[(i*N + j)*N + k]
  std::vector<double> b;
  std::vector<double> c;  // c[i*N + j]

  double A(int i, int j, int k) const {
    return a[(static_cast<std::size_t>(i) * order + j) * order + k];
  }
  double B(int i, int j, int k) const {
    return b[(static_cast<std::size_t>(i) * order + j) * order + k];
  }
  double C(int i, int j) const { return c[static_cast<std::size_t>(i) * order + j]; }
};

DenseTensors to_dense(const MomentTensors& tensors);

/// Debug export of one tensor ('A', 'B' or 'C') as `i,j,k,numerator,denominator`
/// rows with 1-based indices; k is 0 for C.
void write_tensor_csv(std::ostream& out, const MomentTensors& tensors, char which);

}  // namespace swm
