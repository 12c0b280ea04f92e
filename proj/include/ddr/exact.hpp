#ifndef DDR_EXACT_HPP
#define DDR_EXACT_HPP

// Exact rational matrices: used for the symbolic polynomial maps and for the
// cochain-level homology computations, where floating point is not allowed.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace ddr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_double(const Eigen::MatrixXd &m); // entries must be integers

  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }

  Rational &operator()(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

  RationalMatrix operator*(const RationalMatrix &other) const;
  RationalMatrix operator-(const RationalMatrix &other) const;
  bool operator==(const RationalMatrix &other) const = default;

  RationalMatrix select_columns(std::span<const std::size_t> columns) const;
  RationalMatrix column(std::size_t j) const;
  RationalMatrix transpose() const;

  bool is_zero() const;
  Eigen::MatrixXd to_double() const;

private:
  std::size_t m_rows = 0;
  std::size_t m_cols = 0;
  std::vector<Rational> m_data;
};

/// Horizontal concatenation; row counts must agree.
RationalMatrix hstack(const RationalMatrix &a, const RationalMatrix &b);

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(RationalMatrix m);

std::size_t exact_rank(const RationalMatrix &m);

/// Leftmost maximal set of linearly independent columns.
std::vector<std::size_t> independent_columns(const RationalMatrix &m);

/// Basis of the right null space, one column per free variable (in increasing order).
RationalMatrix kernel_basis(const RationalMatrix &m);

/// Scales a column vector by the lcm of its denominators and divides by the gcd
/// of the numerators, so that the result is a primitive integer vector.
RationalMatrix primitive_integer_column(const RationalMatrix &v);

} // namespace ddr

#endif
