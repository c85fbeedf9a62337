#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's basis or tensor code: the moment basis is evaluated as
// shifted Legendre polynomials phi_j(zeta) = P_j(1 - 2 zeta) through Bonnet's
// recurrence and integrals are taken with a Gauss-Legendre rule built here by
// Newton iteration.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

struct Legendre {
  double p;   // P_n(x)
  double dp;  // P_n'(x)
  double pm;  // P_{n-1}(x)
  double pp;  // P_{n+1}(x)
};

inline Legendre legendre(int n, double x) {
  std::vector<double> p(static_cast<std::size_t>(n) + 2);
  p[0] = 1.0;
  p[1] = x;
  for (int k = 1; k <= n; ++k) p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
  const double pm = n > 0 ? p[n - 1] : 0.0;
  const double dp = n > 0 ? n * (x * p[n] - pm) / (x * x - 1.0) : 0.0;
  return {p[n], dp, pm, p[n + 1]};
}

/// Gauss-Legendre nodes/weights mapped to [0,1].
struct GaussRule {
  std::vector<double> x, w;
};

inline GaussRule gauss_rule(int n) {
  GaussRule rule;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto l = legendre(n, x);
      const double dx = l.p / l.dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto l = legendre(n, x);
    rule.x.push_back(0.5 * (1.0 - x));
    rule.w.push_back(1.0 / ((1.0 - x * x) * l.dp * l.dp));
  }
  return rule;
}

inline double phi(int j, double zeta) { return legendre(j, 1.0 - 2.0 * zeta).p; }
inline double dphi(int j, double zeta) { return -2.0 * legendre(j, 1.0 - 2.0 * zeta).dp; }
/// int_0^zeta phi_j = (P_{j-1}(x) - P_{j+1}(x)) / (2 (2j+1)), x = 1 - 2 zeta.
inline double int_phi(int j, double zeta) {
  const auto l = legendre(j, 1.0 - 2.0 * zeta);
  return (l.pm - l.pp) / (2.0 * (2.0 * j + 1.0));
}

/// Floating tensors by quadrature, 1-based accessors.
struct Tensors {
  int n;
  std::vector<double> a, b, c;
  double A(int i, int j, int k) const { return a[((i - 1) * n + (j - 1)) * n + (k - 1)]; }
  double B(int i, int j, int k) const { return b[((i - 1) * n + (j - 1)) * n + (k - 1)]; }
  double C(int i, int j) const { return c[(i - 1) * n + (j - 1)]; }
};

inline Tensors quadrature_tensors(int n) {
  const auto rule = gauss_rule(3 * n + 4);
  Tensors t{n, std::vector<double>(n * n * n), std::vector<double>(n * n * n), std::vector<double>(n * n)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      double c = 0.0;
      for (std::size_t q = 0; q < rule.x.size(); ++q) c += rule.w[q] * dphi(i, rule.x[q]) * dphi(j, rule.x[q]);
      t.c[(i - 1) * n + (j - 1)] = c;
      for (int k = 1; k <= n; ++k) {
        double a = 0.0, b = 0.0;
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
          const double z = rule.x[q];
          a += rule.w[q] * phi(i, z) * phi(j, z) * phi(k, z);
          b += rule.w[q] * dphi(i, z) * int_phi(j, z) * phi(k, z);
        }
        t.a[((i - 1) * n + (j - 1)) * n + (k - 1)] = (2.0 * i + 1.0) * a;
        t.b[((i - 1) * n + (j - 1)) * n + (k - 1)] = (2.0 * i + 1.0) * b;
      }
    }
  return t;
}

/// Conservative SWME flux F(U), U = (h, hu, h alpha_1..h alpha_N), written out
/// from the depth-integrated momentum and moment equations.
inline std::vector<double> swme_flux(const Tensors& t, double g, const std::vector<double>& u) {
  const int n = t.n;
  const double h = u[0], um = u[1] / h;
  std::vector<double> alpha(n);
  for (int j = 0; j < n; ++j) alpha[j] = u[j + 2] / h;
  std::vector<double> f(n + 2);
  f[0] = h * um;
  double energy = 0.0;
  for (int j = 1; j <= n; ++j) energy += alpha[j - 1] * alpha[j - 1] / (2.0 * j + 1.0);
  f[1] = h * um * um + 0.5 * g * h * h + h * energy;
  for (int i = 1; i <= n; ++i) {
    double quad = 0.0;
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) quad += t.A(i, j, k) * alpha[j - 1] * alpha[k - 1];
    f[i + 1] = h * (2.0 * um * alpha[i - 1] + quad);
  }
  return f;
}

/// Non-conservative matrix Q(U): moment rows only, Q_ij = u delta_ij - sum_k B_ijk alpha_k
/// acting on d_x(h alpha_j).
inline std::vector<std::vector<double>> swme_q(const Tensors& t, const std::vector<double>& u) {
  const int n = t.n;
  const double h = u[0], um = u[1] / h;
  std::vector<std::vector<double>> q(n + 2, std::vector<double>(n + 2, 0.0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      double v = i == j ? um : 0.0;
      for (int k = 1; k <= n; ++k) v -= t.B(i, j, k) * u[k + 1] / h;
      q[i + 1][j + 1] = v;
    }
  return q;
}

/// Central finite-difference Jacobian of the flux minus Q.
inline std::vector<std::vector<double>> swme_fd_matrix(const Tensors& t, double g, const std::vector<double>& u) {
  const int dim = t.n + 2;
  auto q = swme_q(t, u);
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim));
  for (int c = 0; c < dim; ++c) {
    const double step = 1e-6 * std::max(1.0, std::abs(u[c]));
    auto up = u, dn = u;
    up[c] += step;
    dn[c] -= step;
    const auto fp = swme_flux(t, g, up), fm = swme_flux(t, g, dn);
    for (int r = 0; r < dim; ++r) a[r][c] = (fp[r] - fm[r]) / (2.0 * step) - q[r][c];
  }
  return a;
}

/// One first-order Rusanov update of the classical SWE with the conservative
/// flux, periodic boundaries. State stored as separate h / hu arrays.
inline void swe_rusanov_step(std::vector<double>& h, std::vector<double>& hu, double g, double dt, double dx) {
  const std::size_t n = h.size();
  auto speed = [&](std::size_t i) { return std::abs(hu[i] / h[i]) + std::sqrt(g * h[i]); };
  std::vector<double> fh(n), fhu(n);  // flux at interface i+1/2
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = (i + 1) % n;
    const double s = std::max(speed(i), speed(r));
    const double fl_h = hu[i], fr_h = hu[r];
    const double fl_u = hu[i] * hu[i] / h[i] + 0.5 * g * h[i] * h[i];
    const double fr_u = hu[r] * hu[r] / h[r] + 0.5 * g * h[r] * h[r];
    fh[i] = 0.5 * (fl_h + fr_h) - 0.5 * s * (h[r] - h[i]);
    fhu[i] = 0.5 * (fl_u + fr_u) - 0.5 * s * (hu[r] - hu[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = (i + n - 1) % n;
    h[i] -= dt / dx * (fh[i] - fh[l]);
    hu[i] -= dt / dx * (fhu[i] - fhu[l]);
  }
}

}  // namespace oracle
