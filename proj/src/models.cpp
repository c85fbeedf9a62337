#include "swmoment/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swm {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::SWE: return "SWE";
    case ModelFamily::SWME: return "SWME";
    case ModelFamily::RSWME: return "RSWME";
    case ModelFamily::HRSWME: return "HRSWME";
  }
  return "?";
}

ModelFamily parse_family(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (upper == "SWE") return ModelFamily::SWE;
  if (upper == "SWME") return ModelFamily::SWME;
  if (upper == "RSWME") return ModelFamily::RSWME;
  if (upper == "HRSWME") return ModelFamily::HRSWME;
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("g must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(lambda0 > 0.0)) throw std::invalid_argument("lambda0 must be positive");
  if (!(nu0 > 0.0)) throw std::invalid_argument("nu0 must be positive");
  if (family == ModelFamily::SWE) {
    if (order != 0) throw std::invalid_argument("SWE takes order 0");
  } else {
    if (order < 1) throw std::invalid_argument(std::string(to_string(family)) + " needs order >= 1");
    check_order(order);
  }
}

std::string ModelSpec::label() const {
  std::string s(to_string(family));
  if (family != ModelFamily::SWE) s += std::to_string(order);
  return s;
}

Model::Model(const ModelSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.family == ModelFamily::SWME) {
    tensors_ = to_dense(build_tensors(spec_.order));
  } else if (spec_.reduced()) {
    const ClosureConstants exact = compute_constants(spec_.order);
    closure_ = to_coefficients(exact);
    regularisation_k_ = to_double(Rational(4) / exact.phi);
  }
}

double Model::regularisation_k() const {
  if (!spec_.reduced()) throw std::invalid_argument("regularisation constant is defined for reduced models only");
  return regularisation_k_;
}

namespace {

double checked_depth(StateRef u, int dim) {
  if (u.size() != dim) throw std::invalid_argument("state has the wrong dimension");
  const double h = u[0];
  if (!(h > 0.0)) throw std::domain_error("water depth must be positive, got h = " + std::to_string(h));
  return h;
}

// Entry (1,0) of the reduced matrix and the advective factor (1 + Gamma c h^2).
struct ReducedEntries {
  double a10;
  double a11;
};

ReducedEntries reduced_entries(const Model& m, double h, double um) {
  const ModelSpec& s = m.spec();
  const ClosureCoefficients& k = *m.closure();
  const double c = s.epsilon * s.epsilon / (s.lambda0 * s.lambda0);
  const double ch2 = c * h * h;
  double a10 = -um * um * (1.0 - k.gamma * ch2) + s.g * h * (1.0 - k.phi * ch2);
  if (s.family == ModelFamily::HRSWME) {
    const double kk = m.regularisation_k();
    a10 += 4.0 * c * c * s.g * std::pow(h, 5) / (kk * kk);
  }
  return {a10, 2.0 * um * (1.0 + k.gamma * ch2)};
}

}  // namespace

Matrix Model::system_matrix(StateRef u) const {
  Matrix out(state_dim(), state_dim());
  system_matrix(u, out);
  return out;
}

void Model::system_matrix(StateRef u, Eigen::Ref<Matrix> out) const {
  const int dim = state_dim();
  const double h = checked_depth(u, dim);
  const double um = u[1] / h;
  out.setZero();
  out(0, 1) = 1.0;

  switch (spec_.family) {
    case ModelFamily::SWE:
      out(1, 0) = spec_.g * h - um * um;
      out(1, 1) = 2.0 * um;
      return;
    case ModelFamily::RSWME:
    case ModelFamily::HRSWME: {
      const auto e = reduced_entries(*this, h, um);
      out(1, 0) = e.a10;
      out(1, 1) = e.a11;
      return;
    }
    case ModelFamily::SWME:
      break;
  }

  const DenseTensors& t = *tensors_;
  const int n = spec_.order;
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) alpha[j] = u[j + 2] / h;

  double energy = 0.0;
  for (int j = 0; j < n; ++j) energy += alpha[j] * alpha[j] / (2.0 * (j + 1) + 1.0);
  out(1, 0) = spec_.g * h - um * um - energy;
  out(1, 1) = 2.0 * um;
  for (int j = 0; j < n; ++j) out(1, j + 2) = 2.0 * alpha[j] / (2.0 * (j + 1) + 1.0);

  for (int i = 0; i < n; ++i) {
    double quad = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) quad += t.A(i, j, k) * alpha[j] * alpha[k];
    out(i + 2, 0) = -2.0 * um * alpha[i] - quad;
    out(i + 2, 1) = 2.0 * alpha[i];
    // dF/dU part 2 u d_ij + 2 sum_k A_ijk alpha_k, minus Q = u d_ij - sum_k B_ijk alpha_k.
    for (int j = 0; j < n; ++j) {
      double lin = 0.0;
      for (int k = 0; k < n; ++k) lin += (2.0 * t.A(i, j, k) + t.B(i, j, k)) * alpha[k];
      out(i + 2, j + 2) = (i == j ? um : 0.0) + lin;
    }
  }
}

Vector Model::source(StateRef u) const {
  const int dim = state_dim();
  const double h = checked_depth(u, dim);
  const double um = u[1] / h;
  Vector s = Vector::Zero(dim);

  switch (spec_.family) {
    case ModelFamily::SWE:
      s[1] = -spec_.nu() / spec_.lambda() * um;
      return s;
    case ModelFamily::RSWME:
    case ModelFamily::HRSWME: {
      const ClosureCoefficients& k = *closure_;
      const double r = spec_.epsilon * h / spec_.lambda0;
      s[1] = -spec_.nu0 / spec_.lambda0 * um * (1.0 - k.omega * r + k.lambda * r * r);
      return s;
    }
    case ModelFamily::SWME:
      break;
  }

  const DenseTensors& t = *tensors_;
  const int n = spec_.order;
  const double slip = spec_.nu() / spec_.lambda();
  double bottom = um;  // velocity at zeta = 0
  for (int j = 0; j < n; ++j) bottom += u[j + 2] / h;
  s[1] = -slip * bottom;
  for (int i = 0; i < n; ++i) {
    double shear = 0.0;
    for (int j = 0; j < n; ++j) shear += t.C(i, j) * u[j + 2] / h;
    s[i + 2] = -(2.0 * (i + 1) + 1.0) * (slip * bottom + spec_.nu() / h * shear);
  }
  return s;
}

Matrix Model::source_jacobian(double h) const {
  if (!(h > 0.0)) throw std::domain_error("water depth must be positive, got h = " + std::to_string(h));
  const int dim = state_dim();
  Matrix m = Matrix::Zero(dim, dim);

  switch (spec_.family) {
    case ModelFamily::SWE:
      m(1, 1) = -spec_.nu() / spec_.lambda() / h;
      return m;
    case ModelFamily::RSWME:
    case ModelFamily::HRSWME: {
      const ClosureCoefficients& k = *closure_;
      const double r = spec_.epsilon * h / spec_.lambda0;
      m(1, 1) = -spec_.nu0 / spec_.lambda0 * (1.0 - k.omega * r + k.lambda * r * r) / h;
      return m;
    }
    case ModelFamily::SWME:
      break;
  }

  const DenseTensors& t = *tensors_;
  const int n = spec_.order;
  const double slip = spec_.nu() / spec_.lambda() / h;
  for (int col = 1; col < dim; ++col) m(1, col) = -slip;
  for (int i = 0; i < n; ++i) {
    const double w = 2.0 * (i + 1) + 1.0;
    for (int col = 1; col < dim; ++col) m(i + 2, col) = -w * slip;
    for (int j = 0; j < n; ++j) m(i + 2, j + 2) -= w * spec_.nu() / (h * h) * t.C(i, j);
  }
  return m;
}

double Model::max_wavespeed(StateRef u) const {
  const int dim = state_dim();
  const double h = checked_depth(u, dim);
  const double um = u[1] / h;

  switch (spec_.family) {
    case ModelFamily::SWE:
      return std::abs(um) + std::sqrt(spec_.g * h);
    case ModelFamily::RSWME:
    case ModelFamily::HRSWME: {
      // Outside the hyperbolic region the moduli |Re| + |Im| still bound the
      // growth of the linearised modes, which is what the viscosity needs.
      const double adv = std::abs(um * (1.0 + closure_->gamma * spec_.epsilon * spec_.epsilon * h * h /
                                                (spec_.lambda0 * spec_.lambda0)));
      const double d = rswme_discriminant(*this, h, um);
      return adv + std::sqrt(spec_.g * h) * std::sqrt(std::abs(d));
    }
    case ModelFamily::SWME:
      break;
  }

  const auto eig = numerical_eigenvalues(*this, u);
  double radius = 0.0;
  double max_imag = 0.0;
  for (const auto& l : eig) {
    radius = std::max(radius, std::abs(l.real()));
    max_imag = std::max(max_imag, std::abs(l.imag()));
  }
  if (max_imag > 1e-12 * (1.0 + radius)) {
    double alpha_sq = 0.0;
    for (int j = 2; j < dim; ++j) alpha_sq += (u[j] / h) * (u[j] / h);
    radius = std::max(radius, std::abs(um) + std::sqrt(spec_.g * h + alpha_sq));
  }
  return radius;
}

double rswme_discriminant(const Model& model, double h, double u_m) {
  const ModelSpec& s = model.spec();
  if (!s.reduced()) throw std::invalid_argument("discriminant is defined for reduced models only");
  const ClosureCoefficients& k = *model.closure();
  const double c = s.epsilon * s.epsilon / (s.lambda0 * s.lambda0);
  const double ch2 = c * h * h;
  // (a11/2)^2 + a10 = u^2 (3 Gamma c h^2 + Gamma^2 c^2 h^4) + g h (1 - Phi c h^2) [+ reg]
  double d = 1.0 - k.phi * ch2 +
             u_m * u_m * (3.0 * k.gamma * ch2 + k.gamma * k.gamma * ch2 * ch2) / (s.g * h);
  if (s.family == ModelFamily::HRSWME) {
    const double kk = model.regularisation_k();
    d += 4.0 * ch2 * ch2 / (kk * kk);
  }
  return d;
}

std::array<std::complex<double>, 2> rswme_eigenvalues(const Model& model, StateRef u) {
  const ModelSpec& s = model.spec();
  if (!s.reduced()) throw std::invalid_argument("closed-form eigenvalues are defined for reduced models only");
  const double h = checked_depth(u, 2);
  const double um = u[1] / h;
  const double c = s.epsilon * s.epsilon / (s.lambda0 * s.lambda0);
  const double centre = um * (1.0 + model.closure()->gamma * c * h * h);
  const std::complex<double> root =
      std::sqrt(s.g * h) * std::sqrt(std::complex<double>(rswme_discriminant(model, h, um), 0.0));
  return {centre - root, centre + root};
}

std::vector<std::complex<double>> numerical_eigenvalues(const Model& model, StateRef u) {
  const Matrix a = model.system_matrix(u);
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double hyperbolicity_threshold(const ModelSpec& spec) {
  spec.validate();
  if (spec.family == ModelFamily::HRSWME) return std::numeric_limits<double>::infinity();
  if (spec.family != ModelFamily::RSWME)
    throw std::invalid_argument("no closed-form hyperbolicity threshold for " + spec.label());
  const double phi = to_double(compute_constants(spec.order).phi);
  return spec.lambda0 / (spec.epsilon * std::sqrt(phi));
}

}  // namespace swm
