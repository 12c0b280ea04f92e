#ifndef DDR_QUADRATURE_HPP
#define DDR_QUADRATURE_HPP

// Quadrature rules on mesh edges, faces and elements, exact for polynomials up
// to a requested total degree. Faces are split into triangles from x_F, and
// elements into tetrahedra from x_T; each simplex uses a collapsed
// Gauss-Legendre product rule.

#include <vector>

#include <ddr/mesh.hpp>

namespace ddr {

struct QuadraturePoint {
  Vector3 point;
  double weight;
};

struct QuadratureRule {
  std::vector<QuadraturePoint> points;
  int degree = 0; // certified exactness

  double measure() const;
};

/// Gauss-Legendre nodes and weights on [0,1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Highest exactness degree accepted by the rule builders.
constexpr int max_quadrature_degree = 60;

QuadratureRule segment_quadrature(const Vector3 &a, const Vector3 &b, int degree);
QuadratureRule triangle_quadrature(const Vector3 &a, const Vector3 &b, const Vector3 &c, int degree);
QuadratureRule tetrahedron_quadrature(const Vector3 &a, const Vector3 &b, const Vector3 &c, const Vector3 &d,
                                      int degree);

QuadratureRule edge_quadrature(const Mesh &mesh, std::size_t e, int degree);
QuadratureRule face_quadrature(const Mesh &mesh, const OrientationTable &table, std::size_t f, int degree);
QuadratureRule element_quadrature(const Mesh &mesh, const OrientationTable &table, std::size_t t, int degree);

} // namespace ddr

#endif
