#include "swmoment/rational.hpp"

#include <stdexcept>
#include <utility>

namespace swm {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& lhs = (*this)(i, k);
      if (lhs == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += lhs * rhs(k, j);
    }
  return out;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("RationalMatrix: shape mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<Rational> RationalMatrix::row_sums() const {
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
  return out;
}

Rational RationalMatrix::total_sum() const {
  Rational s = 0;
  for (const auto& x : data_) s += x;
  return s;
}

namespace {

// Reduces [m | aug] in place to [I | m^-1 aug]. Any nonzero pivot is exact.
void gauss_jordan(RationalMatrix& m, RationalMatrix& aug) {
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("RationalMatrix: matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
      for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(col, j), aug(pivot, j));
    }
    const Rational inv = 1 / m(col, col);
    for (std::size_t j = 0; j < n; ++j) m(col, j) *= inv;
    for (std::size_t j = 0; j < aug.cols(); ++j) aug(col, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t j = 0; j < n; ++j) m(r, j) -= f * m(col, j);
      for (std::size_t j = 0; j < aug.cols(); ++j) aug(r, j) -= f * aug(col, j);
    }
  }
}

}  // namespace

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("RationalMatrix: inverse of non-square matrix");
  RationalMatrix work = *this;
  RationalMatrix inv = identity(rows_);
  gauss_jordan(work, inv);
  return inv;
}

std::vector<Rational> RationalMatrix::solve(const std::vector<Rational>& rhs) const {
  if (rows_ != cols_ || rhs.size() != rows_)
    throw std::invalid_argument("RationalMatrix: solve shape mismatch");
  RationalMatrix work = *this;
  RationalMatrix aug(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) aug(i, 0) = rhs[i];
  gauss_jordan(work, aug);
  std::vector<Rational> x(rows_);
  for (std::size_t i = 0; i < rows_; ++i) x[i] = aug(i, 0);
  return x;
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("RationalMatrix: determinant of non-square matrix");
  RationalMatrix m = *this;
  Rational det = 1;
  const std::size_t n = rows_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace swm
