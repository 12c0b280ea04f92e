#include <ddr/cw_homology.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>

#include <ddr/errors.hpp>

namespace ddr {

namespace {

Vector3 newell_vector(const Mesh &mesh, std::size_t f)
{
  const auto &loop = mesh.face(f).loop;
  Vector3 n = Vector3::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    n += mesh.vertex(loop[i]).cross(mesh.vertex(loop[(i + 1) % loop.size()]));
  }
  return n;
}

// Outward signs of the faces of an element, and its volume.
std::pair<std::vector<int>, double> element_face_signs(const Mesh &mesh, std::size_t t)
{
  const auto &faces = mesh.element(t).faces;
  std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> edge_uses; // edge -> (local face, loop sign)
  for (std::size_t j = 0; j < faces.size(); ++j) {
    const MeshFace &face = mesh.face(faces[j]);
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      edge_uses[face.edges[i]].emplace_back(j, face.loop_signs[i]);
    }
  }
  std::vector<int> sign(faces.size(), 0);
  sign[0] = 1;
  std::queue<std::size_t> queue;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop();
    const MeshFace &face = mesh.face(faces[j]);
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      for (const auto &[other, other_sign] : edge_uses[face.edges[i]]) {
        if (other == j) {
          continue;
        }
        // neighbouring faces of a closed surface traverse their common edge in opposite directions
        const int wanted = -sign[j] * face.loop_signs[i] * other_sign;
        if (sign[other] == 0) {
          sign[other] = wanted;
          queue.push(other);
        } else if (sign[other] != wanted) {
          throw TopologyError("element " + std::to_string(t) + ": boundary is not orientable");
        }
      }
    }
  }
  double volume6 = 0;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    if (sign[j] == 0) {
      throw TopologyError("element " + std::to_string(t) + ": boundary is not connected");
    }
    const MeshFace &face = mesh.face(faces[j]);
    volume6 += sign[j] * mesh.vertex(face.loop[0]).dot(newell_vector(mesh, faces[j]));
  }
  if (volume6 < 0) {
    for (auto &s : sign) {
      s = -s;
    }
  }
  return {sign, std::abs(volume6) / 6.0};
}

} // namespace

CochainComplexInt build_cochain_complex(const Mesh &mesh)
{
  const auto nv = static_cast<Eigen::Index>(mesh.n_vertices());
  const auto ne = static_cast<Eigen::Index>(mesh.n_edges());
  const auto nf = static_cast<Eigen::Index>(mesh.n_faces());
  const auto nt = static_cast<Eigen::Index>(mesh.n_elements());
  CochainComplexInt c;
  c.coboundary[0] = IntMatrix::Zero(ne, nv);
  c.coboundary[1] = IntMatrix::Zero(nf, ne);
  c.coboundary[2] = IntMatrix::Zero(nt, nf);
  c.embedding = IntMatrix::Ones(nv, 1);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto &v = mesh.edge(static_cast<std::size_t>(e)).vertices;
    c.coboundary[0](e, static_cast<Eigen::Index>(v[0])) = -1;
    c.coboundary[0](e, static_cast<Eigen::Index>(v[1])) = 1;
  }
  for (Eigen::Index f = 0; f < nf; ++f) {
    const MeshFace &face = mesh.face(static_cast<std::size_t>(f));
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      c.coboundary[1](f, static_cast<Eigen::Index>(face.edges[i])) = face.loop_signs[i];
    }
  }
  for (Eigen::Index t = 0; t < nt; ++t) {
    const auto [sign, volume] = element_face_signs(mesh, static_cast<std::size_t>(t));
    const auto &faces = mesh.element(static_cast<std::size_t>(t)).faces;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      c.coboundary[2](t, static_cast<Eigen::Index>(faces[j])) = sign[j];
    }
  }
  if (!(c.coboundary[1] * c.coboundary[0]).isZero() || !(c.coboundary[2] * c.coboundary[1]).isZero()) {
    throw InternalError("cochain complex: composition of coboundaries is not zero");
  }
  return c;
}

Eigen::VectorXd DeRhamScaling::forward(int space, const Eigen::VectorXd &v) const
{
  const auto &m = measures.at(static_cast<std::size_t>(space));
  if (m.size() != v.size()) {
    throw DomainError("de Rham map: vector size does not match the number of entities");
  }
  return m.cwiseProduct(v);
}

Eigen::VectorXd DeRhamScaling::inverse(int space, const Eigen::VectorXd &c) const
{
  const auto &m = measures.at(static_cast<std::size_t>(space));
  if (m.size() != c.size()) {
    throw DomainError("de Rham map: vector size does not match the number of entities");
  }
  if ((m.array() <= 0).any()) {
    throw InternalError("de Rham map: zero entity measure");
  }
  return c.cwiseQuotient(m);
}

SparseMatrix DeRhamScaling::matrix(int space) const
{
  const auto &m = measures.at(static_cast<std::size_t>(space));
  SparseMatrix s(m.size(), m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    s.insert(i, i) = m(i);
  }
  return s;
}

DeRhamScaling de_rham_scaling(const Mesh &mesh)
{
  DeRhamScaling s;
  s.measures[0] = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(mesh.n_vertices()));
  s.measures[1].resize(static_cast<Eigen::Index>(mesh.n_edges()));
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const auto &v = mesh.edge(e).vertices;
    s.measures[1](static_cast<Eigen::Index>(e)) = (mesh.vertex(v[1]) - mesh.vertex(v[0])).norm();
  }
  s.measures[2].resize(static_cast<Eigen::Index>(mesh.n_faces()));
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    s.measures[2](static_cast<Eigen::Index>(f)) = 0.5 * newell_vector(mesh, f).norm();
  }
  s.measures[3].resize(static_cast<Eigen::Index>(mesh.n_elements()));
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    s.measures[3](static_cast<Eigen::Index>(t)) = element_face_signs(mesh, t).second;
  }
  return s;
}

Eigen::VectorXd de_rham_map(const DeRhamScaling &scaling, bool forward, int space, const Eigen::VectorXd &v)
{
  return forward ? scaling.forward(space, v) : scaling.inverse(space, v);
}

namespace {

// Fraction-free Gaussian elimination; returns std::nullopt on 64-bit overflow.
template <typename T, typename Step> std::optional<std::size_t> bareiss_rank(std::vector<std::vector<T>> a, Step step)
{
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  T previous = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        auto value = step(a[rank][col], a[i][j], a[i][col], a[rank][j], previous);
        if (!value) {
          return std::nullopt;
        }
        a[i][j] = *value;
      }
      a[i][col] = 0;
    }
    previous = a[rank][col];
    ++rank;
  }
  return rank;
}

template <typename T> std::vector<std::vector<T>> rows_of(const IntMatrix &m)
{
  std::vector<std::vector<T>> a(static_cast<std::size_t>(m.rows()), std::vector<T>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
  }
  return a;
}

} // namespace

std::size_t integer_rank_bigint(const IntMatrix &m)
{
  auto step = [](const BigInt &p, const BigInt &x, const BigInt &l, const BigInt &u,
                 const BigInt &prev) -> std::optional<BigInt> { return BigInt((p * x - l * u) / prev); };
  return *bareiss_rank<BigInt>(rows_of<BigInt>(m), step);
}

std::size_t integer_rank(const IntMatrix &m)
{
  auto step = [](long long p, long long x, long long l, long long u, long long prev) -> std::optional<long long> {
    long long a, b, d;
    if (__builtin_mul_overflow(p, x, &a) || __builtin_mul_overflow(l, u, &b) || __builtin_sub_overflow(a, b, &d)) {
      return std::nullopt;
    }
    return d / prev;
  };
  if (auto r = bareiss_rank<long long>(rows_of<long long>(m), step)) {
    return *r;
  }
  return integer_rank_bigint(m);
}

BettiVector betti_numbers(const Mesh &mesh, const CochainComplexInt &complex)
{
  BettiVector out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.ranks[i] = integer_rank(complex.coboundary[i]);
  }
  const long v = static_cast<long>(mesh.n_vertices()), e = static_cast<long>(mesh.n_edges()),
             f = static_cast<long>(mesh.n_faces()), t = static_cast<long>(mesh.n_elements());
  const long r0 = static_cast<long>(out.ranks[0]), r1 = static_cast<long>(out.ranks[1]),
             r2 = static_cast<long>(out.ranks[2]);
  out.b = {v - r0, (e - r1) - r0, (f - r2) - r1, t - r2};
  return out;
}

RationalMatrix to_rational(const IntMatrix &m)
{
  RationalMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    }
  }
  return r;
}

RationalMatrix cohomology_generators(const Mesh &mesh, const CochainComplexInt &complex, int i)
{
  if (i != 1 && i != 2) {
    throw DomainError("cohomology generators are computed for i = 1 or i = 2");
  }
  (void)mesh;
  const RationalMatrix outgoing = to_rational(complex.coboundary[static_cast<std::size_t>(i)]);
  const RationalMatrix incoming = to_rational(complex.coboundary[static_cast<std::size_t>(i - 1)]);
  const RationalMatrix kernel = kernel_basis(outgoing);

  // Kernel vectors that are independent of the image, picked by the pivots of [image | kernel]
  const auto pivots = independent_columns(hstack(incoming, kernel));
  const std::size_t image_rank = static_cast<std::size_t>(
      std::count_if(pivots.begin(), pivots.end(), [&](std::size_t p) { return p < incoming.cols(); }));
  std::vector<std::size_t> chosen;
  for (auto p : pivots) {
    if (p >= incoming.cols()) {
      chosen.push_back(p - incoming.cols());
    }
  }
  RationalMatrix generators(kernel.rows(), chosen.size());
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    const RationalMatrix g = primitive_integer_column(kernel.column(chosen[j]));
    for (std::size_t r = 0; r < g.rows(); ++r) {
      generators(r, j) = g(r, 0);
    }
  }

  // Certificate
  const std::size_t expected = kernel.cols() - image_rank;
  if (chosen.size() != expected || !(outgoing * generators).is_zero() ||
      exact_rank(hstack(incoming, generators)) != image_rank + chosen.size()) {
    throw InternalError("cohomology generators failed their certificate");
  }
  return generators;
}

} // namespace ddr
