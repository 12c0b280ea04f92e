#include <ddr/quadrature.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <ddr/errors.hpp>

namespace ddr {

double QuadratureRule::measure() const
{
  double s = 0;
  for (const auto &qp : points) {
    s += qp.weight;
  }
  return s;
}

GaussLegendre gauss_legendre(int n)
{
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) {
    return it->second;
  }

  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Chebyshev-like guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // recompute derivative at the converged node
    double p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    rule.nodes[i] = 0.5 * (1 - x);
    rule.weights[i] = 1.0 / ((1 - x * x) * dp * dp);
  }
  cache.emplace(n, rule);
  return rule;
}

namespace {

int points_for(int degree)
{
  return std::max(1, (degree + 2) / 2);
}

void check_degree(int degree)
{
  if (degree < 0 || degree > max_quadrature_degree) {
    throw CapabilityError("quadrature exactness " + std::to_string(degree) + " outside the supported range 0.." +
                          std::to_string(max_quadrature_degree));
  }
}

} // namespace

QuadratureRule segment_quadrature(const Vector3 &a, const Vector3 &b, int degree)
{
  check_degree(degree);
  const auto gl = gauss_legendre(points_for(degree));
  const double length = (b - a).norm();
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    rule.points.push_back({a + gl.nodes[i] * (b - a), gl.weights[i] * length});
  }
  return rule;
}

QuadratureRule triangle_quadrature(const Vector3 &a, const Vector3 &b, const Vector3 &c, int degree)
{
  check_degree(degree);
  // (u, v) in [0,1]^2 -> a + u (b - a) + (1 - u) v (c - a), Jacobian 2|T| (1 - u)
  const auto gu = gauss_legendre(points_for(degree + 1));
  const auto gv = gauss_legendre(points_for(degree));
  const double area2 = (b - a).cross(c - a).norm();
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
    const double u = gu.nodes[i];
    for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
      const double v = gv.nodes[j];
      rule.points.push_back({a + u * (b - a) + (1 - u) * v * (c - a), gu.weights[i] * gv.weights[j] * (1 - u) * area2});
    }
  }
  return rule;
}

QuadratureRule tetrahedron_quadrature(const Vector3 &a, const Vector3 &b, const Vector3 &c, const Vector3 &d,
                                      int degree)
{
  check_degree(degree);
  // (u, v, w) -> a + u (b-a) + (1-u) v (c-a) + (1-u)(1-v) w (d-a), Jacobian 6|T| (1-u)^2 (1-v)
  const auto gu = gauss_legendre(points_for(degree + 2));
  const auto gv = gauss_legendre(points_for(degree + 1));
  const auto gw = gauss_legendre(points_for(degree));
  const double volume6 = std::abs((b - a).dot((c - a).cross(d - a)));
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
    const double u = gu.nodes[i];
    for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
      const double v = gv.nodes[j];
      for (std::size_t l = 0; l < gw.nodes.size(); ++l) {
        const double w = gw.nodes[l];
        const Vector3 x = a + u * (b - a) + (1 - u) * v * (c - a) + (1 - u) * (1 - v) * w * (d - a);
        const double weight = gu.weights[i] * gv.weights[j] * gw.weights[l] * (1 - u) * (1 - u) * (1 - v) * volume6;
        rule.points.push_back({x, weight});
      }
    }
  }
  return rule;
}

QuadratureRule edge_quadrature(const Mesh &mesh, std::size_t e, int degree)
{
  const auto &ev = mesh.edge(e).vertices;
  return segment_quadrature(mesh.vertex(ev[0]), mesh.vertex(ev[1]), degree);
}

QuadratureRule face_quadrature(const Mesh &mesh, const OrientationTable &table, std::size_t f, int degree)
{
  const auto &loop = mesh.face(f).loop;
  const Vector3 &xf = table.faces[f].center;
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    auto sub = triangle_quadrature(xf, mesh.vertex(loop[i]), mesh.vertex(loop[(i + 1) % loop.size()]), degree);
    rule.points.insert(rule.points.end(), sub.points.begin(), sub.points.end());
  }
  return rule;
}

QuadratureRule element_quadrature(const Mesh &mesh, const OrientationTable &table, std::size_t t, int degree)
{
  const Vector3 &xt = table.elements[t].center;
  QuadratureRule rule;
  rule.degree = degree;
  for (auto f : mesh.element(t).faces) {
    const auto &loop = mesh.face(f).loop;
    const Vector3 &xf = table.faces[f].center;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      auto sub = tetrahedron_quadrature(xt, xf, mesh.vertex(loop[i]), mesh.vertex(loop[(i + 1) % loop.size()]),
                                        degree);
      rule.points.insert(rule.points.end(), sub.points.begin(), sub.points.end());
    }
  }
  return rule;
}

} // namespace ddr
