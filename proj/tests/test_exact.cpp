#include <gtest/gtest.h>

#include <ddr/exact.hpp>

using namespace ddr;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<long long>> &rows)
{
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

} // namespace

TEST(Exact, RankOfIdentityAndZero)
{
  EXPECT_EQ(exact_rank(RationalMatrix::identity(3)), 3u);
  EXPECT_EQ(exact_rank(RationalMatrix(4, 5)), 0u);
}

TEST(Exact, KernelBasisIsAnnihilated)
{
  const RationalMatrix m = from_rows({{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}});
  const RationalMatrix k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((m * k).is_zero());
  EXPECT_EQ(exact_rank(k), 2u);
}

TEST(Exact, IndependentColumnsAreLeftmost)
{
  const RationalMatrix m = from_rows({{1, 2, 0}, {1, 2, 1}});
  const auto cols = independent_columns(m);
  ASSERT_EQ(cols.size(), 2u);
  EXPECT_EQ(cols[0], 0u);
  EXPECT_EQ(cols[1], 2u);
}

TEST(Exact, PrimitiveIntegerColumn)
{
  RationalMatrix v(3, 1);
  v(0, 0) = Rational(1, 2);
  v(1, 0) = Rational(-3, 4);
  v(2, 0) = 0;
  const RationalMatrix p = primitive_integer_column(v);
  EXPECT_EQ(p(0, 0), 2);
  EXPECT_EQ(p(1, 0), -3);
  EXPECT_EQ(p(2, 0), 0);
}
