#include <ddr/poly.hpp>

#include <map>
#include <mutex>
#include <tuple>

#include <ddr/errors.hpp>
#include <ddr/linalg.hpp>

namespace ddr {

std::size_t poly_dim(int d, int degree)
{
  if (degree < 0) {
    return 0;
  }
  std::size_t num = 1, den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= static_cast<std::size_t>(degree + i);
    den *= static_cast<std::size_t>(i);
  }
  return num / den;
}

namespace {

std::vector<std::array<int, 3>> build_exponents(int d)
{
  std::vector<std::array<int, 3>> out;
  for (int n = 0; n <= max_poly_degree; ++n) {
    if (d == 1) {
      out.push_back({n, 0, 0});
    } else if (d == 2) {
      for (int a = n; a >= 0; --a) {
        out.push_back({a, n - a, 0});
      }
    } else {
      for (int a = n; a >= 0; --a) {
        for (int b = n - a; b >= 0; --b) {
          out.push_back({a, b, n - a - b});
        }
      }
    }
  }
  return out;
}

void check_dim(int d)
{
  if (d < 1 || d > 3) {
    throw DomainError("intrinsic dimension must be 1, 2 or 3");
  }
}

void check_degree(int degree)
{
  if (degree > max_poly_degree) {
    throw CapabilityError("polynomial degree " + std::to_string(degree) + " exceeds the supported maximum " +
                          std::to_string(max_poly_degree));
  }
}

} // namespace

const std::vector<std::array<int, 3>> &monomial_exponents(int d, int degree)
{
  check_dim(d);
  check_degree(degree);
  static const std::array<std::vector<std::array<int, 3>>, 3> tables{build_exponents(1), build_exponents(2),
                                                                      build_exponents(3)};
  // Callers only read the leading poly_dim(d, degree) entries.
  (void)degree;
  return tables[static_cast<std::size_t>(d - 1)];
}

std::size_t monomial_index(int d, const std::array<int, 3> &alpha)
{
  check_dim(d);
  if (d == 1) {
    return static_cast<std::size_t>(alpha[0]);
  }
  if (d == 2) {
    const int n = alpha[0] + alpha[1];
    return poly_dim(2, n - 1) + static_cast<std::size_t>(n - alpha[0]);
  }
  const int n = alpha[0] + alpha[1] + alpha[2];
  const int m = n - alpha[0];
  return poly_dim(3, n - 1) + static_cast<std::size_t>(m * (m + 1) / 2 + (m - alpha[1]));
}

const char *to_string(SubspaceKind kind)
{
  switch (kind) {
  case SubspaceKind::P:
    return "P";
  case SubspaceKind::P0:
    return "P0";
  case SubspaceKind::vP:
    return "vP";
  case SubspaceKind::G:
    return "G";
  case SubspaceKind::Gc:
    return "Gc";
  case SubspaceKind::R:
    return "R";
  case SubspaceKind::Rc:
    return "Rc";
  }
  return "?";
}

std::size_t space_dim(SubspaceKind kind, int ell, int d)
{
  check_dim(d);
  const bool decomposition = kind == SubspaceKind::G || kind == SubspaceKind::Gc || kind == SubspaceKind::R ||
                             kind == SubspaceKind::Rc;
  if (decomposition && d == 1) {
    throw DomainError(std::string("subspace ") + to_string(kind) + " is only defined on faces and elements");
  }
  if (ell < 0) {
    return 0;
  }
  const std::size_t du = static_cast<std::size_t>(d);
  switch (kind) {
  case SubspaceKind::P:
    return poly_dim(d, ell);
  case SubspaceKind::P0:
    return poly_dim(d, ell) - 1;
  case SubspaceKind::vP:
    return du * poly_dim(d, ell);
  case SubspaceKind::G:
    return poly_dim(d, ell + 1) - 1;
  case SubspaceKind::Gc:
    return du * poly_dim(d, ell) - (poly_dim(d, ell + 1) - 1);
  case SubspaceKind::R:
    return d == 2 ? poly_dim(2, ell + 1) - 1 : 3 * poly_dim(3, ell) - poly_dim(3, ell - 1);
  case SubspaceKind::Rc:
    return poly_dim(d, ell - 1);
  }
  return 0;
}

//------------------------------------------------------------------------------
// Exact maps
//------------------------------------------------------------------------------

RationalMatrix derivative_map(int d, int degree, int axis)
{
  check_dim(d);
  check_degree(degree);
  const auto &exps = monomial_exponents(d, degree);
  RationalMatrix out(poly_dim(d, degree - 1), poly_dim(d, degree));
  for (std::size_t j = 0; j < out.cols(); ++j) {
    auto alpha = exps[j];
    if (alpha[static_cast<std::size_t>(axis)] == 0) {
      continue;
    }
    const int power = alpha[static_cast<std::size_t>(axis)]--;
    out(monomial_index(d, alpha), j) = power;
  }
  return out;
}

RationalMatrix multiplication_map(int d, int degree, int axis)
{
  check_dim(d);
  check_degree(degree + 1);
  const auto &exps = monomial_exponents(d, degree);
  RationalMatrix out(poly_dim(d, degree + 1), poly_dim(d, degree));
  for (std::size_t j = 0; j < out.cols(); ++j) {
    auto alpha = exps[j];
    ++alpha[static_cast<std::size_t>(axis)];
    out(monomial_index(d, alpha), j) = 1;
  }
  return out;
}

RationalMatrix embedding_map(int d, int from, int to)
{
  if (from > to) {
    throw DomainError("embedding_map: source degree exceeds target degree");
  }
  RationalMatrix out(poly_dim(d, to), poly_dim(d, from));
  for (std::size_t j = 0; j < out.cols(); ++j) {
    out(j, j) = 1;
  }
  return out;
}

namespace {

// Block matrix assembled from (row block, column block, sign, matrix) pieces.
struct BlockPiece {
  std::size_t row_block;
  std::size_t col_block;
  int sign;
  RationalMatrix m;
};

RationalMatrix assemble_blocks(std::size_t n_row_blocks, std::size_t row_size, std::size_t n_col_blocks,
                               std::size_t col_size, const std::vector<BlockPiece> &pieces)
{
  RationalMatrix out(n_row_blocks * row_size, n_col_blocks * col_size);
  for (const auto &p : pieces) {
    for (std::size_t i = 0; i < p.m.rows(); ++i) {
      for (std::size_t j = 0; j < p.m.cols(); ++j) {
        if (p.m(i, j) != 0) {
          out(p.row_block * row_size + i, p.col_block * col_size + j) += p.sign * p.m(i, j);
        }
      }
    }
  }
  return out;
}

} // namespace

RationalMatrix differential_map(Differential op, int n)
{
  switch (op) {
  case Differential::Grad:
  case Differential::GradF: {
    const int d = op == Differential::Grad ? 3 : 2;
    std::vector<BlockPiece> pieces;
    for (int c = 0; c < d; ++c) {
      pieces.push_back({static_cast<std::size_t>(c), 0, 1, derivative_map(d, n, c)});
    }
    return assemble_blocks(static_cast<std::size_t>(d), poly_dim(d, n - 1), 1, poly_dim(d, n), pieces);
  }
  case Differential::Div:
  case Differential::DivF: {
    const int d = op == Differential::Div ? 3 : 2;
    std::vector<BlockPiece> pieces;
    for (int c = 0; c < d; ++c) {
      pieces.push_back({0, static_cast<std::size_t>(c), 1, derivative_map(d, n, c)});
    }
    return assemble_blocks(1, poly_dim(d, n - 1), static_cast<std::size_t>(d), poly_dim(d, n), pieces);
  }
  case Differential::Curl: {
    const auto d0 = derivative_map(3, n, 0), d1 = derivative_map(3, n, 1), d2 = derivative_map(3, n, 2);
    return assemble_blocks(3, poly_dim(3, n - 1), 3, poly_dim(3, n),
                           {{0, 2, 1, d1}, {0, 1, -1, d2}, {1, 0, 1, d2}, {1, 2, -1, d0}, {2, 1, 1, d0}, {2, 0, -1, d1}});
  }
  case Differential::VrotF: {
    const auto d0 = derivative_map(2, n, 0), d1 = derivative_map(2, n, 1);
    return assemble_blocks(2, poly_dim(2, n - 1), 1, poly_dim(2, n), {{0, 0, 1, d1}, {1, 0, -1, d0}});
  }
  case Differential::RotF: {
    const auto d0 = derivative_map(2, n, 0), d1 = derivative_map(2, n, 1);
    return assemble_blocks(1, poly_dim(2, n - 1), 2, poly_dim(2, n), {{0, 1, 1, d0}, {0, 0, -1, d1}});
  }
  case Differential::Perp: {
    const auto id = RationalMatrix::identity(poly_dim(2, n));
    return assemble_blocks(2, poly_dim(2, n), 2, poly_dim(2, n), {{0, 1, 1, id}, {1, 0, -1, id}});
  }
  }
  throw DomainError("unknown differential operator");
}

DifferentialResult apply_differential(Differential op, int degree, const RationalMatrix &coefficients)
{
  const RationalMatrix m = differential_map(op, degree);
  if (m.cols() != coefficients.rows()) {
    throw DomainError("apply_differential: operand has " + std::to_string(coefficients.rows()) +
                      " coefficients, expected " + std::to_string(m.cols()));
  }
  return {m * coefficients, op == Differential::Perp ? 0 : -1};
}

//------------------------------------------------------------------------------
// Subspaces
//------------------------------------------------------------------------------

namespace {

// Columns spanning the subspace, before extraction of an independent set.
RationalMatrix spanning_set(int d, SubspaceKind kind, int ell)
{
  const std::size_t n = poly_dim(d, ell);
  const std::size_t nm = poly_dim(d, ell - 1);
  switch (kind) {
  case SubspaceKind::P:
    return RationalMatrix::identity(n);
  case SubspaceKind::P0: {
    RationalMatrix out(n, n > 0 ? n - 1 : 0);
    for (std::size_t j = 1; j < n; ++j) {
      out(j, j - 1) = 1;
    }
    return out;
  }
  case SubspaceKind::vP:
    return RationalMatrix::identity(static_cast<std::size_t>(d) * n);
  case SubspaceKind::G:
    return differential_map(d == 3 ? Differential::Grad : Differential::GradF, ell + 1);
  case SubspaceKind::R:
    if (d == 2) {
      return differential_map(Differential::VrotF, ell + 1);
    } else {
      return differential_map(Differential::Curl, ell + 1);
    }
  case SubspaceKind::Rc: {
    std::vector<BlockPiece> pieces;
    for (int c = 0; c < d; ++c) {
      pieces.push_back({static_cast<std::size_t>(c), 0, 1, multiplication_map(d, ell - 1, c)});
    }
    return assemble_blocks(static_cast<std::size_t>(d), n, 1, nm, pieces);
  }
  case SubspaceKind::Gc: {
    if (d == 2) {
      // (xi)^perp p = (xi_2 p, -xi_1 p)
      return assemble_blocks(2, n, 1, nm, {{0, 0, 1, multiplication_map(2, ell - 1, 1)},
                                           {1, 0, -1, multiplication_map(2, ell - 1, 0)}});
    }
    const auto m0 = multiplication_map(3, ell - 1, 0), m1 = multiplication_map(3, ell - 1, 1),
               m2 = multiplication_map(3, ell - 1, 2);
    // xi x v
    return assemble_blocks(3, n, 3, nm,
                           {{0, 2, 1, m1}, {0, 1, -1, m2}, {1, 0, 1, m2}, {1, 2, -1, m0}, {2, 1, 1, m0}, {2, 0, -1, m1}});
  }
  }
  throw DomainError("unknown subspace kind");
}

} // namespace

const SubspaceBasis &build_subspace_basis(int d, SubspaceKind kind, int ell)
{
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, SubspaceBasis> cache;

  const std::size_t expected = space_dim(kind, ell, d);
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(d, static_cast<int>(kind), ell);
  if (auto it = cache.find(key); it != cache.end()) {
    return it->second;
  }

  SubspaceBasis basis;
  basis.d = d;
  basis.kind = kind;
  basis.ell = ell;
  basis.ambient_degree = ell;
  basis.vector_valued = !(kind == SubspaceKind::P || kind == SubspaceKind::P0);
  const std::size_t ambient = (basis.vector_valued ? static_cast<std::size_t>(d) : 1) * poly_dim(d, ell);
  if (ell < 0) {
    basis.coefficients = RationalMatrix(ambient, 0);
  } else {
    const RationalMatrix span = spanning_set(d, kind, ell);
    const auto columns = independent_columns(span);
    basis.coefficients = span.select_columns(columns);
  }
  if (basis.coefficients.rows() != ambient || basis.coefficients.cols() != expected) {
    throw InternalError(std::string("subspace ") + to_string(kind) + " of degree " + std::to_string(ell) +
                        " in dimension " + std::to_string(d) + " has dimension " +
                        std::to_string(basis.coefficients.cols()) + ", expected " + std::to_string(expected));
  }
  basis.values = basis.coefficients.to_double();
  return cache.emplace(key, std::move(basis)).first->second;
}

//------------------------------------------------------------------------------
// Frames and L2 products
//------------------------------------------------------------------------------

Eigen::Vector3d LocalFrame::coordinates(const Vector3 &x) const
{
  Eigen::Vector3d xi = Eigen::Vector3d::Zero();
  for (int i = 0; i < dim; ++i) {
    xi(i) = axes.col(i).dot(x - center) / h;
  }
  return xi;
}

Vector3 LocalFrame::to_physical(const Eigen::Ref<const Eigen::VectorXd> &z) const
{
  Vector3 v = Vector3::Zero();
  for (int i = 0; i < dim; ++i) {
    v += z(i) * axes.col(i);
  }
  return v;
}

LocalFrame edge_frame(const OrientationTable &table, std::size_t e)
{
  LocalFrame frame;
  frame.dim = 1;
  frame.center = table.edges[e].midpoint;
  frame.h = table.edges[e].length;
  frame.axes.col(0) = table.edges[e].tangent;
  return frame;
}

LocalFrame face_frame(const OrientationTable &table, std::size_t f)
{
  LocalFrame frame;
  frame.dim = 2;
  frame.center = table.faces[f].center;
  frame.h = table.faces[f].diameter;
  frame.axes.col(0) = table.faces[f].tau1;
  frame.axes.col(1) = table.faces[f].tau2;
  frame.axes.col(2) = table.faces[f].normal;
  return frame;
}

LocalFrame element_frame(const OrientationTable &table, std::size_t t)
{
  LocalFrame frame;
  frame.dim = 3;
  frame.center = table.elements[t].center;
  frame.h = table.elements[t].diameter;
  return frame;
}

Eigen::VectorXd monomial_values(int d, int degree, const Eigen::Vector3d &xi)
{
  const std::size_t n = poly_dim(d, degree);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  if (n == 0) {
    return out;
  }
  Eigen::MatrixXd powers(3, degree + 1);
  for (int c = 0; c < 3; ++c) {
    powers(c, 0) = 1;
    for (int p = 1; p <= degree; ++p) {
      powers(c, p) = powers(c, p - 1) * xi(c);
    }
  }
  const auto &exps = monomial_exponents(d, degree);
  for (std::size_t j = 0; j < n; ++j) {
    const auto &a = exps[j];
    double v = powers(0, a[0]);
    if (d > 1) {
      v *= powers(1, a[1]);
    }
    if (d > 2) {
      v *= powers(2, a[2]);
    }
    out(static_cast<Eigen::Index>(j)) = v;
  }
  return out;
}

Eigen::VectorXd monomial_values(const LocalFrame &frame, int degree, const Vector3 &x)
{
  return monomial_values(frame.dim, degree, frame.coordinates(x));
}

Eigen::MatrixXd mass_matrix(const LocalFrame &frame, int degree, const QuadratureRule &rule)
{
  if (rule.degree < 2 * degree) {
    throw InternalError("mass_matrix: quadrature not exact enough");
  }
  const auto n = static_cast<Eigen::Index>(poly_dim(frame.dim, degree));
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rule.points.size()), n);
  Eigen::VectorXd weights(static_cast<Eigen::Index>(rule.points.size()));
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    values.row(static_cast<Eigen::Index>(q)) = monomial_values(frame, degree, rule.points[q].point);
    weights(static_cast<Eigen::Index>(q)) = rule.points[q].weight;
  }
  Eigen::MatrixXd m = values.transpose() * weights.asDiagonal() * values;
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd mass_block(const Eigen::MatrixXd &scalar_mass, int d, int a, int b)
{
  const auto na = static_cast<Eigen::Index>(poly_dim(d, a));
  const auto nb = static_cast<Eigen::Index>(poly_dim(d, b));
  if (na > scalar_mass.rows() || nb > scalar_mass.cols()) {
    throw InternalError("mass_block: scalar mass matrix does not cover the requested degrees");
  }
  return scalar_mass.topLeftCorner(na, nb);
}

Eigen::MatrixXd vector_mass(const Eigen::MatrixXd &scalar_mass, int d, int a, int b)
{
  const Eigen::MatrixXd block = mass_block(scalar_mass, d, a, b);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * block.rows(), d * block.cols());
  for (int c = 0; c < d; ++c) {
    out.block(c * block.rows(), c * block.cols(), block.rows(), block.cols()) = block;
  }
  return out;
}

Eigen::MatrixXd projector(const SubspaceBasis &target, const Eigen::MatrixXd &scalar_mass, int source_degree)
{
  const int a = target.ambient_degree;
  const Eigen::MatrixXd &b = target.values;
  const std::size_t source_dim =
      (target.vector_valued ? static_cast<std::size_t>(target.d) : 1) * poly_dim(target.d, source_degree);
  if (target.dimension() == 0) {
    return Eigen::MatrixXd::Zero(0, static_cast<Eigen::Index>(source_dim));
  }
  Eigen::MatrixXd maa, mas;
  if (target.vector_valued) {
    maa = vector_mass(scalar_mass, target.d, a, a);
    mas = vector_mass(scalar_mass, target.d, a, source_degree);
  } else {
    maa = mass_block(scalar_mass, target.d, a, a);
    mas = mass_block(scalar_mass, target.d, a, source_degree);
  }
  return solve_checked(b.transpose() * maa * b, b.transpose() * mas,
                       std::string("L2 projection onto ") + to_string(target.kind));
}

const Eigen::MatrixXd &differential_matrix(Differential op, int degree)
{
  static std::mutex mutex;
  static std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(static_cast<int>(op), degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, differential_map(op, degree).to_double()).first;
  }
  return it->second;
}

const Eigen::MatrixXd &derivative_matrix(int d, int degree, int axis)
{
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(d, degree, axis);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, derivative_map(d, degree, axis).to_double()).first;
  }
  return it->second;
}

} // namespace ddr
