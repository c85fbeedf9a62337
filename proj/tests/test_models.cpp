#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "swmoment/models.hpp"

using swm::Matrix;
using swm::ModelFamily;
using swm::ModelSpec;
using swm::Vector;

namespace {

ModelSpec make_spec(ModelFamily family, int order, double eps = 1.0, double lambda0 = 1.0, double nu0 = 1.0,
                    double g = 1.0) {
  ModelSpec s;
  s.family = family;
  s.order = order;
  s.epsilon = eps;
  s.lambda0 = lambda0;
  s.nu0 = nu0;
  s.g = g;
  return s;
}

Vector state(std::initializer_list<double> primitive) {
  // (h, u_m, alpha_1, ...) -> conserved
  std::vector<double> p(primitive);
  Vector u(static_cast<Eigen::Index>(p.size()));
  u[0] = p[0];
  for (std::size_t k = 1; k < p.size(); ++k) u[static_cast<Eigen::Index>(k)] = p[0] * p[k];
  return u;
}

std::vector<double> sorted_real(std::vector<std::complex<double>> v) {
  std::vector<double> r;
  for (const auto& z : v) r.push_back(z.real());
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("model spec validation and labels") {
  CHECK(make_spec(ModelFamily::SWE, 0).label() == "SWE");
  CHECK(make_spec(ModelFamily::SWME, 2).label() == "SWME2");
  CHECK(make_spec(ModelFamily::HRSWME, 1).label() == "HRSWME1");
  CHECK(swm::parse_family("rswme") == ModelFamily::RSWME);
  CHECK_THROWS_AS(swm::parse_family("HSWME"), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::SWE, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::SWME, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::RSWME, 1, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::RSWME, 1, 1.0, -1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::RSWME, 1, 1.0, 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_spec(ModelFamily::RSWME, 1, 1.0, 1.0, 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(swm::Model(make_spec(ModelFamily::SWME, 13)), std::invalid_argument);
  CHECK(make_spec(ModelFamily::SWME, 4).state_dim() == 6);
  CHECK(make_spec(ModelFamily::RSWME, 4).state_dim() == 2);
}

TEST_CASE("system matrix examples") {
  SUBCASE("SWE") {
    const swm::Model m(make_spec(ModelFamily::SWE, 0, 1.0, 1.0, 1.0, 9.81));
    const Matrix a = m.system_matrix(state({2.0, 0.5}));
    CHECK(a(0, 0) == 0.0);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == doctest::Approx(9.81 * 2.0 - 0.25));
    CHECK(a(1, 1) == 1.0);
  }
  SUBCASE("SWME1 at rest") {
    const swm::Model m(make_spec(ModelFamily::SWME, 1));
    const Matrix a = m.system_matrix(state({1.0, 0.0, 0.0}));
    Matrix expected(3, 3);
    expected << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    CHECK(a == expected);
  }
  SUBCASE("RSWME1 / HRSWME1 gravity entry") {
    const swm::Model r(make_spec(ModelFamily::RSWME, 1));
    const swm::Model hr(make_spec(ModelFamily::HRSWME, 1));
    CHECK(r.system_matrix(state({1.0, 0.0}))(1, 0) == doctest::Approx(47.0 / 48.0).epsilon(1e-15));
    CHECK(hr.system_matrix(state({1.0, 0.0}))(1, 0) ==
          doctest::Approx(47.0 / 48.0 + 4.0 / (192.0 * 192.0)).epsilon(1e-15));
    CHECK(hr.regularisation_k() == doctest::Approx(192.0));
    CHECK(swm::Model(make_spec(ModelFamily::HRSWME, 3)).regularisation_k() == doctest::Approx(180.0));
    CHECK_THROWS_AS(swm::Model(make_spec(ModelFamily::SWE, 0)).regularisation_k(), std::invalid_argument);
  }
  SUBCASE("errors") {
    const swm::Model m(make_spec(ModelFamily::SWME, 2));
    CHECK_THROWS_AS(m.system_matrix(state({0.0, 0.0, 0.0, 0.0})), std::domain_error);
    CHECK_THROWS_AS(m.system_matrix(state({1.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(m.source(state({-1.0, 0.0, 0.0, 0.0})), std::domain_error);
    CHECK_THROWS_AS(m.source_jacobian(0.0), std::domain_error);
    CHECK_THROWS_AS(m.max_wavespeed(state({0.0, 0.0, 0.0, 0.0})), std::domain_error);
  }
}

TEST_CASE("SWME system matrix equals the finite-difference flux Jacobian minus Q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> hd(0.3, 3.0), ud(-1.5, 1.5), ad(-0.6, 0.6);
  for (int n : {1, 2, 3, 4, 6}) {
    const swm::Model m(make_spec(ModelFamily::SWME, n, 1.0, 1.0, 1.0, 1.3));
    const auto tensors = oracle::quadrature_tensors(n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> u(n + 2);
      u[0] = hd(rng);
      u[1] = u[0] * ud(rng);
      for (int j = 0; j < n; ++j) u[j + 2] = u[0] * ad(rng);
      const auto fd = oracle::swme_fd_matrix(tensors, 1.3, u);
      const Matrix a = m.system_matrix(Eigen::Map<const Vector>(u.data(), n + 2));
      double scale = 0.0, diff = 0.0;
      for (int r = 0; r < n + 2; ++r)
        for (int c = 0; c < n + 2; ++c) {
          scale = std::max(scale, std::abs(fd[r][c]));
          diff = std::max(diff, std::abs(fd[r][c] - a(r, c)));
        }
      CHECK(diff <= 1e-6 * scale);
    }
  }
}

TEST_CASE("source examples") {
  SUBCASE("rest state has no friction") {
    for (auto f : {ModelFamily::SWE, ModelFamily::SWME, ModelFamily::RSWME, ModelFamily::HRSWME}) {
      const int n = f == ModelFamily::SWE ? 0 : 3;
      const swm::Model m(make_spec(f, n, 0.3));
      const Vector s = m.source(Vector::Unit(m.state_dim(), 0) * 1.7);
      CHECK(s.norm() == 0.0);
    }
  }
  SUBCASE("SWE") {
    const swm::Model m(make_spec(ModelFamily::SWE, 0, 0.5, 1.0, 2.0));  // nu/lambda = 2
    const Vector s = m.source(state({1.5, 0.4}));
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(-0.8));
  }
  SUBCASE("SWME1 with nu = lambda = 1") {
    const swm::Model m(make_spec(ModelFamily::SWME, 1));
    const Vector s = m.source(state({1.0, 1.0, 0.0}));
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(-1.0));
    CHECK(s[2] == doctest::Approx(-3.0));
  }
  SUBCASE("RSWME2 unit state") {
    const swm::Model m(make_spec(ModelFamily::RSWME, 2));
    const Vector s = m.source(state({1.0, 1.0}));
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(-34.0 / 45.0).epsilon(1e-15));
  }
}

TEST_CASE("source Jacobian") {
  SUBCASE("SWE: linear drag on h u_m") {
    const swm::Model m(make_spec(ModelFamily::SWE, 0, 1.0, 1.0, 3.0));
    const Matrix j = m.source_jacobian(1.0);
    CHECK(j(0, 0) == 0.0);
    CHECK(j(0, 1) == 0.0);
    CHECK(j(1, 0) == 0.0);
    CHECK(j(1, 1) == doctest::Approx(-3.0));
  }
  SUBCASE("SWME1 at h = 1") {
    const swm::Model m(make_spec(ModelFamily::SWME, 1));
    const Matrix j = m.source_jacobian(1.0);
    CHECK(j.row(0).norm() == 0.0);
    CHECK(j(1, 0) == 0.0);
    CHECK(j(1, 1) == doctest::Approx(-1.0));
    CHECK(j(1, 2) == doctest::Approx(-1.0));
    CHECK(j(2, 0) == 0.0);
    CHECK(j(2, 1) == doctest::Approx(-3.0));
    CHECK(j(2, 2) == doctest::Approx(-15.0));
  }
  SUBCASE("RSWME factor") {
    const swm::Model m(make_spec(ModelFamily::RSWME, 2));
    CHECK(m.source_jacobian(1.0)(1, 1) == doctest::Approx(-34.0 / 45.0));
  }
  SUBCASE("S(U) = M(h) U on random states for every family") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> hd(0.2, 2.5), vd(-1.0, 1.0), pd(0.1, 3.0);
    for (auto f : {ModelFamily::SWE, ModelFamily::SWME, ModelFamily::RSWME, ModelFamily::HRSWME}) {
      for (int trial = 0; trial < 50; ++trial) {
        const int n = f == ModelFamily::SWE ? 0 : 1 + trial % 5;
        const swm::Model m(make_spec(f, n, pd(rng), pd(rng), pd(rng), pd(rng)));
        Vector u(m.state_dim());
        u[0] = hd(rng);
        for (int k = 1; k < u.size(); ++k) u[k] = vd(rng);
        const Vector s = m.source(u);
        const Vector ms = m.source_jacobian(u[0]) * u;
        CHECK((s - ms).norm() <= 1e-12 * (1.0 + s.norm()));
        CHECK(m.source_jacobian(u[0]).col(0).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("reduced eigenvalues") {
  std::mt19937_64 rng(3);
  SUBCASE("closed form equals a numerical eigensolve inside the hyperbolic region") {
    std::uniform_real_distribution<double> pd(0.2, 2.0), ud(-2.0, 2.0);
    int checked = 0;
    while (checked < 300) {
      const auto family = checked % 2 ? ModelFamily::RSWME : ModelFamily::HRSWME;
      const swm::Model m(make_spec(family, 1 + checked % 3, pd(rng), pd(rng), 1.0, pd(rng)));
      const double h = pd(rng) * 3.0;
      if (swm::rswme_discriminant(m, h, 0.0) <= 0.0) continue;
      const Vector u = state({h, ud(rng)});
      const auto closed = swm::rswme_eigenvalues(m, u);
      const auto num = sorted_real(swm::numerical_eigenvalues(m, u));
      CHECK(closed[0].imag() == 0.0);
      CHECK(closed[0].real() == doctest::Approx(num[0]).epsilon(1e-10).scale(1.0));
      CHECK(closed[1].real() == doctest::Approx(num[1]).epsilon(1e-10).scale(1.0));
      CHECK(m.max_wavespeed(u) == doctest::Approx(std::max(std::abs(num[0]), std::abs(num[1]))).epsilon(1e-10));
      ++checked;
    }
  }
  SUBCASE("vanishing depth gives the gravity waves") {
    const swm::Model m(make_spec(ModelFamily::RSWME, 1, 1.0, 1.0, 1.0, 2.0));
    const double h = 1e-6;
    const auto l = swm::rswme_eigenvalues(m, state({h, 0.0}));
    CHECK(l[1].real() == doctest::Approx(std::sqrt(2.0 * h)).epsilon(1e-9));
    CHECK(l[0].real() == doctest::Approx(-std::sqrt(2.0 * h)).epsilon(1e-9));
  }
  SUBCASE("HRSWME1 at rest") {
    for (double eps : {0.1, 1.0, 4.0})
      for (double h : {0.3, 1.0, 2.0, 5.0}) {
        const double lambda0 = 1.5, g = 1.0;
        const swm::Model m(make_spec(ModelFamily::HRSWME, 1, eps, lambda0, 1.0, g));
        const auto l = swm::rswme_eigenvalues(m, state({h, 0.0}));
        const double expected = std::sqrt(g * h) * std::abs(1.0 - 2.0 * h * h * eps * eps / (192.0 * lambda0 * lambda0));
        CHECK(l[1].real() == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        CHECK(l[0].real() == doctest::Approx(-expected).epsilon(1e-12).scale(1.0));
      }
  }
  SUBCASE("thresholds") {
    CHECK(swm::hyperbolicity_threshold(make_spec(ModelFamily::RSWME, 1)) == doctest::Approx(4.0 * std::sqrt(3.0)));
    CHECK(swm::hyperbolicity_threshold(make_spec(ModelFamily::RSWME, 2, 0.5)) ==
          doctest::Approx(6.0 * std::sqrt(5.0)));
    CHECK(std::isinf(swm::hyperbolicity_threshold(make_spec(ModelFamily::HRSWME, 2))));
    CHECK_THROWS_AS(swm::hyperbolicity_threshold(make_spec(ModelFamily::SWE, 0)), std::invalid_argument);
    CHECK_THROWS_AS(swm::hyperbolicity_threshold(make_spec(ModelFamily::SWME, 2)), std::invalid_argument);
  }
  SUBCASE("discriminant changes sign at the threshold") {
    for (int n : {1, 2, 5})
      for (double eps : {0.25, 1.0}) {
        const swm::Model m(make_spec(ModelFamily::RSWME, n, eps, 0.8));
        const double hmax = swm::hyperbolicity_threshold(m.spec());
        CHECK(swm::rswme_discriminant(m, hmax, 0.0) == doctest::Approx(0.0).scale(1.0));
        CHECK(swm::rswme_discriminant(m, hmax * (1 - 1e-6), 0.0) > 0.0);
        CHECK(swm::rswme_discriminant(m, hmax * (1 + 1e-6), 0.0) < 0.0);
        CHECK(swm::rswme_eigenvalues(m, state({hmax * 1.1, 0.0}))[1].imag() != 0.0);
        // u_m-dependent terms are non-negative below the threshold
        for (double h = 0.05 * hmax; h < hmax; h += 0.05 * hmax)
          for (double um : {-2.0, -0.1, 0.3, 1.7}) CHECK(swm::rswme_discriminant(m, h, um) > 0.0);
      }
  }
  SUBCASE("regularised discriminant is never negative") {
    // At u_m = 0 it is the perfect square (1 - Phi c h^2 / 2)^2: zero at exactly one depth.
    for (int n : {1, 2, 4}) {
      const swm::Model m(make_spec(ModelFamily::HRSWME, n, 2.0));
      for (double h = 0.01; h < 40.0; h *= 1.07)
        for (double um : {0.0, 0.2, -3.0}) {
          const double d = swm::rswme_discriminant(m, h, um);
          CHECK(d >= 0.0);
          if (um != 0.0) CHECK(d > 0.0);
        }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(swm::rswme_discriminant(swm::Model(make_spec(ModelFamily::SWE, 0)), 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(swm::rswme_eigenvalues(swm::Model(make_spec(ModelFamily::SWME, 1)), state({1.0, 0.0, 0.0})),
                    std::invalid_argument);
  }
}

TEST_CASE("maximum wave speed") {
  CHECK(swm::Model(make_spec(ModelFamily::SWE, 0)).max_wavespeed(state({1.0, 0.0})) == doctest::Approx(1.0));

  const swm::Model m1(make_spec(ModelFamily::SWME, 1));
  const double a = -0.25, um = 0.25;
  const double expected = std::max(std::abs(um + std::sqrt(1.0 + a * a)), std::abs(um - std::sqrt(1.0 + a * a)));
  CHECK(m1.max_wavespeed(state({1.0, um, a})) == doctest::Approx(expected).epsilon(1e-12));

  SUBCASE("reduced models outside the hyperbolic region still get a finite positive bound") {
    const swm::Model m(make_spec(ModelFamily::RSWME, 1));
    const double s = m.max_wavespeed(state({10.0, 0.5}));
    CHECK(std::isfinite(s));
    CHECK(s > 0.0);
  }
}

TEST_CASE("structural properties of the reduced family") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> hd(0.2, 2.0), ud(-1.0, 1.0);
  SUBCASE("identical matrices and sources for every N >= 2") {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector u = state({hd(rng), ud(rng)});
      const swm::Model ref(make_spec(ModelFamily::RSWME, 2, 0.7, 1.2, 0.9));
      for (int n = 3; n <= 12; ++n) {
        const swm::Model m(make_spec(ModelFamily::RSWME, n, 0.7, 1.2, 0.9));
        CHECK(m.system_matrix(u) == ref.system_matrix(u));
        CHECK(m.source(u) == ref.source(u));
        CHECK(m.max_wavespeed(u) == ref.max_wavespeed(u));
      }
    }
  }
  SUBCASE("vanishing epsilon recovers SWE") {
    const swm::Model swe(make_spec(ModelFamily::SWE, 0, 1e-8));
    for (auto f : {ModelFamily::RSWME, ModelFamily::HRSWME}) {
      const swm::Model m(make_spec(f, 1, 1e-8));
      for (int trial = 0; trial < 50; ++trial) {
        const Vector u = state({hd(rng), ud(rng)});
        const Matrix d = m.system_matrix(u) - swe.system_matrix(u);
        CHECK(d.cwiseAbs().maxCoeff() < 1e-15 * (1.0 + swe.system_matrix(u).cwiseAbs().maxCoeff()));
        const double rel = std::abs(m.source(u)[1] - swe.source(u)[1]) / std::abs(swe.source(u)[1]);
        CHECK(rel < 1e-7);
      }
    }
  }
  SUBCASE("water at rest carries no friction") {
    for (auto f : {ModelFamily::SWE, ModelFamily::SWME, ModelFamily::RSWME, ModelFamily::HRSWME}) {
      const swm::Model m(make_spec(f, f == ModelFamily::SWE ? 0 : 2));
      CHECK(m.source(Vector::Unit(m.state_dim(), 0) * 1.3).norm() == 0.0);
    }
  }
}
