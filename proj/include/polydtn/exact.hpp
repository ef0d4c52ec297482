#pragma once

// Exact integer / rational linear algebra for the small-graph identities
// (matrix-tree counts, Kirchhoff ratios, grove polynomials).

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polydtn::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every double is a dyadic rational).
Rational from_double(double x);
double to_double(const Rational& q);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
BigInt bareiss_determinant(IntMatrix m);

/// Clears denominators and runs Bareiss.
Rational determinant(const RationalMatrix& m);

/// Solves A X = B exactly; throws NumericalFailure if A is singular.
RationalMatrix solve(RationalMatrix a, RationalMatrix b);

}  // namespace polydtn::exact
