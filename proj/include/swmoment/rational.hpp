#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace swm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  RationalMatrix transpose() const;

  std::vector<Rational> row_sums() const;
  Rational total_sum() const;

  /// Gauss-Jordan inverse; throws std::domain_error when singular.
  RationalMatrix inverse() const;

  /// Solves this * x = rhs exactly; throws std::domain_error when singular.
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const;

  Rational determinant() const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace swm
