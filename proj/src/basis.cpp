#include "swmoment/basis.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace swm {

namespace {

// Polynomials in zeta, lowest degree first.
using Poly = std::vector<Rational>;

Poly multiply(const Poly& p, const Poly& q) {
  if (p.empty() || q.empty()) return {};
  Poly out(p.size() + q.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {Rational(0)};
  Poly out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = p[k] * static_cast<long>(k);
  return out;
}

// int_0^zeta p
Poly antiderivative(const Poly& p) {
  Poly out(p.size() + 1, Rational(0));
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k] / static_cast<long>(k + 1);
  return out;
}

// int_0^1 p
Rational integrate_unit(const Poly& p) {
  Rational s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] / static_cast<long>(k + 1);
  return s;
}

Poly to_poly(const std::vector<BigInt>& coeffs) {
  Poly p;
  p.reserve(coeffs.size());
  for (const auto& c : coeffs) p.emplace_back(c);
  return p;
}

// (1/j!) d^j/dzeta^j (zeta - zeta^2)^j
std::vector<BigInt> rodrigues(int j) {
  Poly base{Rational(0), Rational(1), Rational(-1)};
  Poly p{Rational(1)};
  for (int n = 0; n < j; ++n) p = multiply(p, base);
  for (int n = 0; n < j; ++n) p = derivative(p);
  BigInt factorial = 1;
  for (int n = 2; n <= j; ++n) factorial *= n;

  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    const Rational scaled = c / factorial;
    if (boost::multiprecision::denominator(scaled) != 1)
      throw std::logic_error("scaled Legendre coefficient is not integral");
    out.push_back(boost::multiprecision::numerator(scaled));
  }
  return out;
}

std::vector<Poly> basis_polys(const ScaledLegendreBasis& basis) {
  std::vector<Poly> phis;
  phis.reserve(static_cast<std::size_t>(basis.order()));
  for (int j = 1; j <= basis.order(); ++j) phis.push_back(to_poly(basis.coefficients(j)));
  return phis;
}

RationalMatrix c_from_polys(const std::vector<Poly>& phis) {
  const std::size_t n = phis.size();
  std::vector<Poly> d;
  d.reserve(n);
  for (const auto& p : phis) d.push_back(derivative(p));
  RationalMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      c(i, j) = integrate_unit(multiply(d[i], d[j]));
      c(j, i) = c(i, j);
    }
  return c;
}

}  // namespace

void check_order(int order, int max_order) {
  if (order < 0) throw std::invalid_argument("moment order must be non-negative");
  if (order > max_order)
    throw std::invalid_argument("moment order " + std::to_string(order) +
                                " exceeds the supported maximum " + std::to_string(max_order));
}

ScaledLegendreBasis::ScaledLegendreBasis(int order, int max_order) : order_(order) {
  check_order(order, max_order);
  coeffs_.reserve(static_cast<std::size_t>(order));
  float_coeffs_.reserve(static_cast<std::size_t>(order));
  for (int j = 1; j <= order; ++j) {
    coeffs_.push_back(rodrigues(j));
    std::vector<double> f;
    f.reserve(coeffs_.back().size());
    for (const auto& c : coeffs_.back()) f.push_back(c.convert_to<double>());
    float_coeffs_.push_back(std::move(f));
  }
}

const std::vector<BigInt>& ScaledLegendreBasis::coefficients(int j) const {
  if (j < 1 || j > order_) throw std::out_of_range("basis index out of range");
  return coeffs_[static_cast<std::size_t>(j - 1)];
}

const std::vector<double>& ScaledLegendreBasis::float_coefficients(int j) const {
  if (j < 1 || j > order_) throw std::out_of_range("basis index out of range");
  return float_coeffs_[static_cast<std::size_t>(j - 1)];
}

double ScaledLegendreBasis::eval(int j, double zeta) const {
  if (zeta < 0.0 || zeta > 1.0) throw std::out_of_range("zeta must lie in [0,1]");
  if (j < 1 || j > order_) throw std::out_of_range("basis index out of range");
  // Bonnet recurrence in x = 1 - 2 zeta: the monomial coefficients grow like
  // binom(2j, j) and Horner on them loses digits quickly.
  const double x = 1.0 - 2.0 * zeta;
  double prev = 1.0, cur = x;
  for (int k = 1; k < j; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

MomentTensors build_tensors(int order, int max_order) {
  check_order(order, max_order);
  if (order < 1) throw std::invalid_argument("moment tensors need order >= 1");

  const ScaledLegendreBasis basis(order, max_order);
  const std::vector<Poly> phi = basis_polys(basis);
  const auto n = static_cast<std::size_t>(order);

  std::vector<Poly> dphi, iphi;
  for (const auto& p : phi) {
    dphi.push_back(derivative(p));
    iphi.push_back(antiderivative(p));
  }

  MomentTensors t;
  t.order_ = order;
  t.a_.assign(n * n * n, Rational(0));
  t.b_.assign(n * n * n, Rational(0));

  for (std::size_t i = 0; i < n; ++i) {
    const long weight = static_cast<long>(2 * (i + 1) + 1);
    for (std::size_t j = 0; j < n; ++j) {
      const Poly phi_ij = multiply(phi[i], phi[j]);
      const Poly dphi_i_iphi_j = multiply(dphi[i], iphi[j]);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = (i * n + j) * n + k;
        // A is symmetric in (j,k); fill from the k >= j half.
        if (k >= j) {
          t.a_[idx] = weight * integrate_unit(multiply(phi_ij, phi[k]));
        } else {
          t.a_[idx] = t.a_[(i * n + k) * n + j];
        }
        t.b_[idx] = weight * integrate_unit(multiply(dphi_i_iphi_j, phi[k]));
      }
    }
  }
  t.c_ = c_from_polys(phi);
  return t;
}

RationalMatrix build_c_matrix(int order, int max_order) {
  check_order(order, max_order);
  if (order < 1) throw std::invalid_argument("C matrix needs order >= 1");
  return c_from_polys(basis_polys(ScaledLegendreBasis(order, max_order)));
}

RationalMatrix closed_form_c_matrix(int order) {
  if (order < 1) throw std::invalid_argument("C matrix needs order >= 1");
  const auto n = static_cast<std::size_t>(order);
  RationalMatrix c(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      if ((i + j) % 2 != 0) continue;
      const long m = static_cast<long>(std::min(i, j));
      c(i - 1, j - 1) = 2 * m * (m + 1);
    }
  return c;
}

DenseTensors to_dense(const MomentTensors& tensors) {
  DenseTensors d;
  d.order = tensors.order();
  const int n = d.order;
  d.a.reserve(static_cast<std::size_t>(n * n * n));
  d.b.reserve(static_cast<std::size_t>(n * n * n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        d.a.push_back(to_double(tensors.a(i, j, k)));
        d.b.push_back(to_double(tensors.b(i, j, k)));
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) d.c.push_back(to_double(tensors.c(i, j)));
  return d;
}

void write_tensor_csv(std::ostream& out, const MomentTensors& tensors, char which) {
  auto row = [&out](int i, int j, int k, const Rational& v) {
    out << i << ',' << j << ',' << k << ',' << boost::multiprecision::numerator(v) << ','
        << boost::multiprecision::denominator(v) << '\n';
  };
  const int n = tensors.order();
  out << "i,j,k,numerator,denominator\n";
  switch (which) {
    case 'A':
    case 'B':
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k)
            row(i, j, k, which == 'A' ? tensors.a(i, j, k) : tensors.b(i, j, k));
      break;
    case 'C':
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) row(i, j, 0, tensors.c(i, j));
      break;
    default:
      throw std::invalid_argument(std::string("unknown tensor '") + which + "'");
  }
}

}  // namespace swm
