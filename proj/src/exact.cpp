#include <ddr/exact.hpp>

#include <cmath>

#include <ddr/errors.hpp>

namespace ddr {

RationalMatrix RationalMatrix::identity(std::size_t n)
{
  RationalMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    id(i, i) = 1;
  }
  return id;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd &m)
{
  RationalMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v != std::round(v)) {
        throw DomainError("RationalMatrix::from_double: non-integer entry");
      }
      r(i, j) = static_cast<long long>(v);
    }
  }
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix &other) const
{
  if (m_cols != other.m_rows) {
    throw DomainError("RationalMatrix product: shape mismatch");
  }
  RationalMatrix out(m_rows, other.m_cols);
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t l = 0; l < m_cols; ++l) {
      const Rational &a = (*this)(i, l);
      if (a == 0) {
        continue;
      }
      for (std::size_t j = 0; j < other.m_cols; ++j) {
        const Rational &b = other(l, j);
        if (b != 0) {
          out(i, j) += a * b;
        }
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix &other) const
{
  if (m_rows != other.m_rows || m_cols != other.m_cols) {
    throw DomainError("RationalMatrix difference: shape mismatch");
  }
  RationalMatrix out(*this);
  for (std::size_t i = 0; i < m_data.size(); ++i) {
    out.m_data[i] -= other.m_data[i];
  }
  return out;
}

RationalMatrix RationalMatrix::select_columns(std::span<const std::size_t> columns) const
{
  RationalMatrix out(m_rows, columns.size());
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out(i, j) = (*this)(i, columns[j]);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::column(std::size_t j) const
{
  const std::size_t idx[] = {j};
  return select_columns(idx);
}

RationalMatrix RationalMatrix::transpose() const
{
  RationalMatrix out(m_cols, m_rows);
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t j = 0; j < m_cols; ++j) {
      out(j, i) = (*this)(i, j);
    }
  }
  return out;
}

bool RationalMatrix::is_zero() const
{
  for (const auto &x : m_data) {
    if (x != 0) {
      return false;
    }
  }
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const
{
  Eigen::MatrixXd out(m_rows, m_cols);
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t j = 0; j < m_cols; ++j) {
      out(i, j) = static_cast<double>((*this)(i, j));
    }
  }
  return out;
}

RationalMatrix hstack(const RationalMatrix &a, const RationalMatrix &b)
{
  if (a.rows() != b.rows()) {
    throw DomainError("hstack: row counts differ");
  }
  RationalMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out(i, a.cols() + j) = b(i, j);
    }
  }
  return out;
}

RowEchelon row_reduce(RationalMatrix m)
{
  RowEchelon result;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) {
      ++pivot;
    }
    if (pivot == m.rows()) {
      continue;
    }
    if (pivot != row) {
      for (std::size_t j = col; j < m.cols(); ++j) {
        std::swap(m(row, j), m(pivot, j));
      }
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) {
      if (m(row, j) != 0) {
        m(row, j) *= inv;
      }
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) {
        continue;
      }
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (m(row, j) != 0) {
          m(i, j) -= factor * m(row, j);
        }
      }
    }
    result.pivots.push_back(col);
    ++row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t exact_rank(const RationalMatrix &m)
{
  return row_reduce(m).pivots.size();
}

std::vector<std::size_t> independent_columns(const RationalMatrix &m)
{
  return row_reduce(m).pivots;
}

RationalMatrix kernel_basis(const RationalMatrix &m)
{
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) {
    is_pivot[p] = true;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) {
      free_cols.push_back(j);
    }
  }
  RationalMatrix basis(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const std::size_t jf = free_cols[f];
    basis(jf, f) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      basis(ech.pivots[r], f) = -ech.reduced(r, jf);
    }
  }
  return basis;
}

RationalMatrix primitive_integer_column(const RationalMatrix &v)
{
  BigInt scale = 1;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    scale = boost::multiprecision::lcm(scale, BigInt(denominator(v(i, 0))));
  }
  RationalMatrix out(v.rows(), 1);
  BigInt g = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    out(i, 0) = v(i, 0) * scale;
    g = boost::multiprecision::gcd(g, BigInt(numerator(out(i, 0))));
  }
  if (g > 1) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
      out(i, 0) /= g;
    }
  }
  return out;
}

} // namespace ddr
