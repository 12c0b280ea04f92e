#include <gtest/gtest.h>

#include <ddr/cw_homology.hpp>
#include <ddr/ddr_operators.hpp>

#include "oracles.hpp"

using namespace ddr;

namespace {

Mesh builtin(const std::string &name) { return build_voxel_mesh(VoxelPattern::builtin(name), 1.0); }

} // namespace

TEST(CochainComplex, IncidenceStructure)
{
  const Mesh mesh = builtin("ring");
  const CochainComplexInt cw = build_cochain_complex(mesh);
  const IntMatrix &d0 = cw.coboundary[0];
  for (Eigen::Index e = 0; e < d0.rows(); ++e) {
    const auto &v = mesh.edge(static_cast<std::size_t>(e)).vertices;
    EXPECT_EQ(d0(e, static_cast<Eigen::Index>(v[0])), -1);
    EXPECT_EQ(d0(e, static_cast<Eigen::Index>(v[1])), 1);
    EXPECT_EQ(d0.row(e).cwiseAbs().sum(), 2);
  }
  EXPECT_TRUE((cw.coboundary[1] * d0).isZero());
  EXPECT_TRUE((cw.coboundary[2] * cw.coboundary[1]).isZero());
  EXPECT_TRUE((d0 * cw.embedding).isZero());
  for (Eigen::Index t = 0; t < cw.coboundary[2].rows(); ++t) {
    EXPECT_EQ(cw.coboundary[2].row(t).cwiseAbs().sum(), 6);
  }
}

TEST(CochainComplex, RanksAndBettiNumbers)
{
  const Mesh cube = builtin("cube");
  const BettiVector bc = betti_numbers(cube, build_cochain_complex(cube));
  EXPECT_EQ(bc.ranks, (std::array<std::size_t, 3>{7, 5, 1}));
  EXPECT_EQ(bc.b, (std::array<long, 4>{1, 0, 0, 0}));

  const std::vector<std::tuple<std::string, std::vector<oracle::Cell>, std::array<long, 4>>> cases = {
      {"cube", oracle::cube_cells(), {1, 0, 0, 0}},
      {"ring", oracle::ring_cells(), {1, 1, 0, 0}},
      {"cavity", oracle::cavity_cells(), {1, 0, 1, 0}}};
  for (const auto &[name, cells, expected] : cases) {
    const Mesh mesh = builtin(name);
    const BettiVector b = betti_numbers(mesh, build_cochain_complex(mesh));
    const auto oracle_complex = oracle::cubical_complex(cells);
    EXPECT_EQ(b.b, oracle_complex.betti()) << name;
    EXPECT_EQ(b.b, expected) << name;
    const auto r = oracle_complex.ranks();
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(static_cast<long>(b.ranks[i]), r[i]) << name;
    }
    EXPECT_EQ(b.b[0] - b.b[1] + b.b[2] - b.b[3], mesh.euler_characteristic()) << name;
  }
}

TEST(CochainComplex, IntegerRankAgreesWithBigInt)
{
  const Mesh mesh = builtin("cavity");
  const CochainComplexInt cw = build_cochain_complex(mesh);
  for (const auto &d : cw.coboundary) {
    EXPECT_EQ(integer_rank(d), integer_rank_bigint(d));
  }
  // entries large enough that 64-bit fraction-free elimination overflows
  IntMatrix big(4, 4);
  const long long m = 3037000499LL; // about sqrt(2^63)
  big << m, m - 1, 7, 3,
         m - 2, m, 5, 11,
         13, 17, m, m - 3,
         19, 23, m - 5, m;
  EXPECT_EQ(integer_rank(big), 4u);
  EXPECT_EQ(integer_rank_bigint(big), 4u);
  IntMatrix dependent(3, 3);
  dependent << m, m - 1, 1,
               2 * (m / 2), 2 * ((m - 1) / 2), 2,
               m - 7, m - 8, 1;
  EXPECT_EQ(integer_rank(dependent), integer_rank_bigint(dependent));
  EXPECT_EQ(integer_rank(IntMatrix::Zero(3, 5)), 0u);
}

TEST(CochainComplex, GeneratorsAreCertifiedCocycles)
{
  for (const auto &[name, i] : std::vector<std::pair<std::string, int>>{{"ring", 1}, {"cavity", 2}}) {
    const Mesh mesh = builtin(name);
    const CochainComplexInt cw = build_cochain_complex(mesh);
    const RationalMatrix g = cohomology_generators(mesh, cw, i);
    ASSERT_EQ(g.cols(), 1u) << name;
    // closed
    EXPECT_TRUE((to_rational(cw.coboundary[static_cast<std::size_t>(i)]) * g).is_zero()) << name;
    // not exact: rank grows when appended to the image of the incoming coboundary
    const RationalMatrix image = to_rational(cw.coboundary[static_cast<std::size_t>(i - 1)]);
    EXPECT_EQ(exact_rank(hstack(image, g)), exact_rank(image) + 1) << name;
    // primitive integer
    EXPECT_EQ(primitive_integer_column(g), g) << name;
  }
  const Mesh cube = builtin("cube");
  EXPECT_EQ(cohomology_generators(cube, build_cochain_complex(cube), 1).cols(), 0u);
}

TEST(DeRham, ScalingByMeasures)
{
  const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin("cube"), 0.25);
  const DeRhamScaling s = de_rham_scaling(mesh);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(mesh.n_edges()));
  const Eigen::VectorXd e = de_rham_map(s, true, 1, ones);
  EXPECT_NEAR(e(0), 0.25, 1e-15);
  EXPECT_NEAR(de_rham_map(s, true, 2, Eigen::VectorXd::Ones(6))(0), 0.0625, 1e-15);
  EXPECT_NEAR(de_rham_map(s, true, 3, Eigen::VectorXd::Ones(1))(0), 0.015625, 1e-15);
  EXPECT_LT((de_rham_map(s, false, 1, e) - ones).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DeRham, DegreeZeroOperatorsCommuteWithCoboundaries)
{
  for (const std::string name : {"cube", "ring", "cavity"}) {
    const Mesh mesh = builtin(name);
    const OrientationTable table = compute_orientation(mesh);
    const DDRComplex ddr0(mesh, table, 0);
    const CochainComplexInt cw = build_cochain_complex(mesh);
    const DeRhamScaling s = de_rham_scaling(mesh);
    const SparseMatrix *ops[] = {&ddr0.gradient().matrix, &ddr0.curl().matrix, &ddr0.divergence().matrix};
    for (int i = 0; i < 3; ++i) {
      const Eigen::MatrixXd lhs = Eigen::MatrixXd(s.matrix(i + 1) * *ops[i]);
      const Eigen::MatrixXd rhs = cw.coboundary[static_cast<std::size_t>(i)].cast<double>() * Eigen::MatrixXd(s.matrix(i));
      EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13) << name << " " << i;
    }
  }
}
