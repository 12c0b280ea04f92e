#include <gtest/gtest.h>

#include <cmath>

#include <ddr/poly.hpp>
#include <ddr/quadrature.hpp>

using namespace ddr;

namespace {

double integrate(const QuadratureRule &rule, const std::function<double(const Vector3 &)> &f)
{
  double s = 0;
  for (const auto &qp : rule.points) {
    s += qp.weight * f(qp.point);
  }
  return s;
}

double factorial(int n)
{
  return n <= 1 ? 1.0 : n * factorial(n - 1);
}

// face of the unit cube lying in the plane z = 0
std::size_t bottom_face(const Mesh &mesh)
{
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    bool flat = true;
    for (auto v : mesh.face(f).loop) {
      flat = flat && mesh.vertex(v)(2) == 0;
    }
    if (flat) {
      return f;
    }
  }
  return mesh.n_faces();
}

} // namespace

TEST(Quadrature, AnalyticIntegrals)
{
  const QuadratureRule seg = segment_quadrature(Vector3::Zero(), Vector3::UnitX(), 2);
  EXPECT_NEAR(integrate(seg, [](const Vector3 &x) { return x(0) * x(0); }), 1.0 / 3.0, 1e-15);

  const Mesh cube = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  const OrientationTable table = compute_orientation(cube);
  const std::size_t f = bottom_face(cube);
  ASSERT_LT(f, cube.n_faces());
  const QuadratureRule face = face_quadrature(cube, table, f, 2);
  EXPECT_NEAR(integrate(face, [](const Vector3 &x) { return x(0) * x(1); }), 0.25, 1e-15);

  const QuadratureRule cell = element_quadrature(cube, table, 0, 3);
  EXPECT_NEAR(integrate(cell, [](const Vector3 &x) { return x(0) * x(0) * x(1); }), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(cell.measure(), 1.0, 1e-14);
}

TEST(Quadrature, TetrahedronExactness)
{
  // int over the unit simplex of x^a y^b z^c = a! b! c! / (a + b + c + 3)!
  const QuadratureRule rule =
      tetrahedron_quadrature(Vector3::Zero(), Vector3::UnitX(), Vector3::UnitY(), Vector3::UnitZ(), 10);
  for (int a = 0; a <= 10; ++a) {
    for (int b = 0; a + b <= 10; ++b) {
      for (int c = 0; a + b + c <= 10; ++c) {
        const double exact = factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
        const double q = integrate(rule, [&](const Vector3 &x) {
          return std::pow(x(0), a) * std::pow(x(1), b) * std::pow(x(2), c);
        });
        EXPECT_NEAR(q, exact, 1e-15) << a << " " << b << " " << c;
      }
    }
  }
}

TEST(Quadrature, TriangleExactness)
{
  // int over the unit triangle of x^a y^b = a! b! / (a + b + 2)!
  const QuadratureRule rule = triangle_quadrature(Vector3::Zero(), Vector3::UnitX(), Vector3::UnitY(), 12);
  for (int a = 0; a <= 12; ++a) {
    for (int b = 0; a + b <= 12; ++b) {
      const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
      const double q = integrate(rule, [&](const Vector3 &x) { return std::pow(x(0), a) * std::pow(x(1), b); });
      EXPECT_NEAR(q, exact, 1e-15);
    }
  }
}

TEST(Poly, Dimensions)
{
  EXPECT_EQ(poly_dim(3, 2), 10u);
  EXPECT_EQ(poly_dim(2, -1), 0u);
  EXPECT_EQ(space_dim(SubspaceKind::P, 2, 1), 3u);
  EXPECT_EQ(space_dim(SubspaceKind::R, 0, 3), 3u);
  EXPECT_EQ(space_dim(SubspaceKind::Gc, 1, 3), 3u);
  for (int l = 0; l <= 4; ++l) {
    for (int d : {2, 3}) {
      EXPECT_EQ(build_subspace_basis(d, SubspaceKind::G, l).dimension() +
                    build_subspace_basis(d, SubspaceKind::Gc, l).dimension(),
                d * poly_dim(d, l));
      EXPECT_EQ(build_subspace_basis(d, SubspaceKind::R, l).dimension() +
                    build_subspace_basis(d, SubspaceKind::Rc, l).dimension(),
                d * poly_dim(d, l));
    }
  }
}

TEST(Poly, SubspaceBases)
{
  // constant gradients on an element
  const SubspaceBasis &g0 = build_subspace_basis(3, SubspaceKind::G, 0);
  EXPECT_EQ(g0.dimension(), 3u);
  EXPECT_EQ(exact_rank(g0.coefficients), 3u);

  // Rc^1(F) = span{x - x_F}: (xi_1, xi_2) has components at monomials 1 and 2 of P^1(F)
  const SubspaceBasis &rc = build_subspace_basis(2, SubspaceKind::Rc, 1);
  ASSERT_EQ(rc.dimension(), 1u);
  RationalMatrix x(6, 1);
  x(1, 0) = 1;
  x(3 + 2, 0) = 1;
  EXPECT_EQ(exact_rank(hstack(rc.coefficients, x)), 1u);

  const SubspaceBasis &r1 = build_subspace_basis(3, SubspaceKind::R, 1);
  const SubspaceBasis &rc1 = build_subspace_basis(3, SubspaceKind::Rc, 1);
  EXPECT_EQ(exact_rank(hstack(r1.coefficients, rc1.coefficients)), 12u);
}

TEST(Poly, Differentials)
{
  RationalMatrix xi1(4, 1);
  xi1(1, 0) = 1;
  const DifferentialResult grad = apply_differential(Differential::Grad, 1, xi1);
  EXPECT_EQ(grad.h_power, -1);
  EXPECT_EQ(grad.coefficients(0, 0), 1);
  EXPECT_EQ(grad.coefficients(1, 0), 0);
  EXPECT_EQ(grad.coefficients(2, 0), 0);

  RationalMatrix x(12, 1);
  x(1, 0) = 1;
  x(4 + 2, 0) = 1;
  x(8 + 3, 0) = 1;
  EXPECT_EQ(apply_differential(Differential::Div, 1, x).coefficients(0, 0), 3);

  RationalMatrix s1(3, 1);
  s1(1, 0) = 1;
  const RationalMatrix v = apply_differential(Differential::VrotF, 1, s1).coefficients;
  EXPECT_EQ(v(0, 0), 0);
  EXPECT_EQ(v(1, 0), -1);
}

TEST(Poly, ProjectionsAndGram)
{
  const Mesh cube = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  const OrientationTable table = compute_orientation(cube);

  // mean of s = x_0 on an edge along x starting at the origin
  std::size_t e = cube.n_edges();
  for (std::size_t i = 0; i < cube.n_edges(); ++i) {
    const Vector3 a = cube.vertex(cube.edge(i).vertices[0]), b = cube.vertex(cube.edge(i).vertices[1]);
    if (a.norm() == 0 && (b - Vector3::UnitX()).norm() == 0) {
      e = i;
    }
  }
  ASSERT_LT(e, cube.n_edges());
  const LocalFrame frame = edge_frame(table, e);
  const QuadratureRule rule = edge_quadrature(cube, e, 6);
  const Eigen::MatrixXd m = mass_matrix(frame, 3, rule);
  Eigen::VectorXd s(2);
  s << frame.center(0), frame.h * frame.axes(0, 0);
  const Eigen::MatrixXd p0 = projector(build_subspace_basis(1, SubspaceKind::P, 0), m, 1);
  EXPECT_NEAR((p0 * s)(0), 0.5, 1e-14);

  // projecting P^2 onto itself is the identity
  const Eigen::MatrixXd p2 = projector(build_subspace_basis(1, SubspaceKind::P, 2), m, 2);
  EXPECT_LT((p2 - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);

  const LocalFrame tf = element_frame(table, 0);
  const Eigen::MatrixXd gram = mass_matrix(tf, 2, element_quadrature(cube, table, 0, 4));
  EXPECT_LT((gram - gram.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff(), 0);
}
