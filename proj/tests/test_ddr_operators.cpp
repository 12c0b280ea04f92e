#include <gtest/gtest.h>

#include <ddr/ddr_operators.hpp>

#include "oracles.hpp"

using namespace ddr;

namespace {

struct Fixture {
  Mesh mesh;
  OrientationTable table;
  Fixture(const std::string &name) : mesh(build_voxel_mesh(VoxelPattern::builtin(name), 1.0)), table(compute_orientation(mesh)) {}
};

Eigen::VectorXd restrict(const Eigen::VectorXd &v, const std::vector<std::size_t> &dofs)
{
  Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(dofs[i]));
  }
  return out;
}

std::array<long, 4> counts(const Mesh &m)
{
  return {static_cast<long>(m.n_vertices()), static_cast<long>(m.n_edges()), static_cast<long>(m.n_faces()),
          static_cast<long>(m.n_elements())};
}

} // namespace

TEST(Layout, DimensionsMatchClosedForms)
{
  for (const std::string name : {"cube", "ring", "cavity"}) {
    const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin(name), 1.0);
    for (int k = 0; k <= 3; ++k) {
      const auto expected = oracle::ddr_dims(counts(mesh), k);
      for (Space s : {Space::Grad, Space::Curl, Space::Div, Space::L2}) {
        EXPECT_EQ(static_cast<long>(DofLayout(mesh, s, k).dimension()), expected[static_cast<std::size_t>(s)])
            << name << " k=" << k << " " << to_string(s);
      }
    }
  }
  const Mesh cube = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  EXPECT_EQ(DofLayout(cube, Space::Grad, 1).dimension(), 27u);
  EXPECT_EQ(DofLayout(cube, Space::Curl, 1).dimension(), 46u);
  EXPECT_EQ(DofLayout(cube, Space::Div, 1).dimension(), 24u);
  EXPECT_EQ(DofLayout(cube, Space::L2, 1).dimension(), 4u);
}

TEST(Operators, EdgeGradientAtDegreeZero)
{
  Fixture fx("cube");
  const DDRComplex ddr(fx.mesh, fx.table, 0);
  Eigen::Vector2d q(0, 1);
  EXPECT_NEAR((ddr.edge_operators(0).gradient * q)(0), 1.0, 1e-14);
}

TEST(Operators, ConstantsAndAffineFunctions)
{
  Fixture fx("cube");
  for (int k = 0; k <= 2; ++k) {
    const DDRComplex ddr(fx.mesh, fx.table, k);
    const Eigen::VectorXd c = ddr.interpolate_grad([](const Vector3 &) { return 2.5; });
    EXPECT_LT((ddr.gradient().matrix * c).cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t e = 0; e < fx.mesh.n_edges(); ++e) {
      const Eigen::VectorXd trace = ddr.edge_operators(e).trace * restrict(c, ddr.closure(Space::Grad, 1, e));
      EXPECT_NEAR(ddr.evaluate(1, e, k + 1, trace, fx.table.edges[e].midpoint), 2.5, 1e-12);
    }
    const auto affine = [](const Vector3 &x) { return 1.0 + 2.0 * x(0) - x(1) + 0.5 * x(2); };
    const Vector3 grad(2.0, -1.0, 0.5);
    const Eigen::VectorXd a = ddr.interpolate_grad(affine);
    for (std::size_t f = 0; f < fx.mesh.n_faces(); ++f) {
      const auto &ops = ddr.face_operators(f);
      const Eigen::VectorXd local = restrict(a, ddr.closure(Space::Grad, 2, f));
      const Vector3 &n = fx.table.faces[f].normal;
      const Vector3 x = fx.table.faces[f].center;
      EXPECT_LT((ddr.evaluate_vector(2, f, k, ops.gradient * local, x) - (grad - grad.dot(n) * n)).norm(), 1e-11);
      EXPECT_NEAR(ddr.evaluate(2, f, k + 1, ops.trace * local, x), affine(x), 1e-11);
    }
    const Eigen::VectorXd x1 = ddr.interpolate_grad([](const Vector3 &x) { return x(0); });
    const Eigen::VectorXd g = ddr.element_operators(0).gradient * restrict(x1, ddr.closure(Space::Grad, 3, 0));
    EXPECT_LT((ddr.evaluate_vector(3, 0, k, g, Vector3(0.3, 0.6, 0.2)) - Vector3::UnitX()).norm(), 1e-11);
  }
}

TEST(Operators, ElementGradientOfQuadratic)
{
  Fixture fx("cube");
  const DDRComplex ddr(fx.mesh, fx.table, 1);
  const Eigen::VectorXd q = ddr.interpolate_grad([](const Vector3 &x) { return x(0) * x(1); });
  const Eigen::VectorXd g = ddr.element_operators(0).gradient * restrict(q, ddr.closure(Space::Grad, 3, 0));
  for (const auto &qp : ddr.entity(3, 0).rule.points) {
    const Vector3 &x = qp.point;
    EXPECT_LT((ddr.evaluate_vector(3, 0, 1, g, x) - Vector3(x(1), x(0), 0)).norm(), 1e-10);
  }
}

TEST(Operators, InterpolateOfLinearOnUnitCube)
{
  Fixture fx("cube");
  const DDRComplex ddr(fx.mesh, fx.table, 1);
  const Eigen::VectorXd q = ddr.interpolate_grad([](const Vector3 &x) { return x(0); });
  const DofLayout &lg = ddr.layout(Space::Grad);
  for (std::size_t v = 0; v < fx.mesh.n_vertices(); ++v) {
    const double value = q(static_cast<Eigen::Index>(lg.offset(0, v)));
    EXPECT_TRUE(value == 0.0 || value == 1.0);
  }
  for (std::size_t e = 0; e < fx.mesh.n_edges(); ++e) {
    if (std::abs(fx.table.edges[e].tangent(0)) == 1.0) {
      EXPECT_NEAR(q(static_cast<Eigen::Index>(lg.offset(1, e))), 0.5, 1e-14);
    }
  }
}

TEST(Operators, FaceCurlAtDegreeZero)
{
  Fixture fx("cube");
  const DDRComplex ddr(fx.mesh, fx.table, 0);
  const Vector3 c(0.3, -1.2, 0.7);
  for (std::size_t f = 0; f < fx.mesh.n_faces(); ++f) {
    const auto &edges = fx.mesh.face(f).edges; // closure of a face at k = 0 is its sorted edge list
    const auto &cl = ddr.closure(Space::Curl, 2, f);
    Eigen::VectorXd constant(static_cast<Eigen::Index>(cl.size())), circulation(static_cast<Eigen::Index>(cl.size()));
    for (std::size_t i = 0; i < cl.size(); ++i) {
      constant(static_cast<Eigen::Index>(i)) = c.dot(fx.table.edges[cl[i]].tangent);
    }
    double oracle = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const int omega = fx.table.faces[f].edge_orientations[i];
      circulation(static_cast<Eigen::Index>(position_in(cl, edges[i]))) = omega;
      oracle -= omega * fx.table.edges[edges[i]].length * omega / fx.table.faces[f].area;
    }
    EXPECT_NEAR((ddr.face_operators(f).curl * constant)(0), 0.0, 1e-14);
    EXPECT_NEAR((ddr.face_operators(f).curl * circulation)(0), oracle, 1e-13);
    EXPECT_NEAR(std::abs(oracle), 4.0, 1e-14);
  }
}

TEST(Operators, ElementPotentialsAndDivergenceAtDegreeZero)
{
  Fixture fx("cube");
  const DDRComplex ddr(fx.mesh, fx.table, 0);
  const Vector3 c(0.3, -1.2, 0.7);
  const auto &clc = ddr.closure(Space::Curl, 3, 0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(clc.size()));
  for (std::size_t i = 0; i < clc.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = c.dot(fx.table.edges[clc[i]].tangent);
  }
  const auto &ops = ddr.element_operators(0);
  EXPECT_LT((ddr.evaluate_vector(3, 0, 0, ops.curl_potential * v, Vector3(0.5, 0.5, 0.5)) - c).norm(), 1e-11);
  EXPECT_LT((ops.curl * v).cwiseAbs().maxCoeff(), 1e-12);

  const auto &cld = ddr.closure(Space::Div, 3, 0);
  Eigen::VectorXd w(static_cast<Eigen::Index>(cld.size())), w3(static_cast<Eigen::Index>(cld.size()));
  for (std::size_t i = 0; i < cld.size(); ++i) {
    const auto &fg = fx.table.faces[cld[i]];
    w(static_cast<Eigen::Index>(i)) = c.dot(fg.normal);
    w3(static_cast<Eigen::Index>(i)) = fg.center.dot(fg.normal) / 3.0; // mean of (x/3).n_F
  }
  EXPECT_NEAR((ops.divergence * w)(0), 0.0, 1e-14);
  EXPECT_NEAR((ops.divergence * w3)(0), 1.0, 1e-14);
}

TEST(Operators, ComplexPropertyOnCube)
{
  Fixture fx("cube");
  for (int k = 0; k <= 3; ++k) {
    const DDRComplex ddr(fx.mesh, fx.table, k);
    const SparseMatrix &g = ddr.gradient().matrix, &c = ddr.curl().matrix, &d = ddr.divergence().matrix;
    EXPECT_LE(max_abs(SparseMatrix(c * g)), 1e-10 * max_abs(c) * max_abs(g)) << k;
    EXPECT_LE(max_abs(SparseMatrix(d * c)), 1e-10 * max_abs(d) * max_abs(c)) << k;
  }
}

TEST(Operators, ClosedFormsAtDegreeZero)
{
  for (const std::string name : {"cube", "ring"}) {
    Fixture fx(name);
    const DDRComplex ddr(fx.mesh, fx.table, 0);
    const ClosedForms cf = ddr0_closed_forms(fx.mesh, fx.table);
    EXPECT_LE(max_abs(SparseMatrix(ddr.gradient().matrix - cf.gradient)), 1e-12);
    EXPECT_LE(max_abs(SparseMatrix(ddr.curl().matrix - cf.curl)), 1e-12);
    EXPECT_LE(max_abs(SparseMatrix(ddr.divergence().matrix - cf.divergence)), 1e-12);
  }
  // cube: uG^0 is the signed incidence divided by |E| = 1
  Fixture fx("cube");
  const Eigen::MatrixXd g(DDRComplex(fx.mesh, fx.table, 0).gradient().matrix);
  ASSERT_EQ(g.rows(), 12);
  ASSERT_EQ(g.cols(), 8);
  for (Eigen::Index e = 0; e < 12; ++e) {
    const auto &v = fx.mesh.edge(static_cast<std::size_t>(e)).vertices;
    EXPECT_NEAR(g(e, static_cast<Eigen::Index>(v[0])), -1.0, 1e-14);
    EXPECT_NEAR(g(e, static_cast<Eigen::Index>(v[1])), 1.0, 1e-14);
    EXPECT_NEAR(g.row(e).cwiseAbs().sum(), 2.0, 1e-14);
  }
  // ring: |T| D^0 has entries +-1 on the faces of each element
  Fixture ring("ring");
  const Eigen::MatrixXd d(DDRComplex(ring.mesh, ring.table, 0).divergence().matrix);
  for (Eigen::Index t = 0; t < d.rows(); ++t) {
    EXPECT_NEAR(d.row(t).cwiseAbs().sum() * ring.table.elements[static_cast<std::size_t>(t)].volume, 6.0, 1e-13);
  }
}
