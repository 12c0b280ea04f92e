#ifndef DDR_POLY_HPP
#define DDR_POLY_HPP

// Scaled monomial bases on mesh entities, exact differential maps between
// their coefficient vectors, and the polynomial subspaces P, G, Gc, R, Rc.
//
// A polynomial of degree <= l on an entity of intrinsic dimension d is stored
// as coefficients over the monomials xi^alpha, |alpha| <= l, with
// xi = A^T (x - x_P) / h_P (A = tangent axes of the entity). Monomials are
// ordered by total degree, so P^a is a leading block of P^b when a <= b.
// Vector-valued polynomials store their d components one after the other.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include <ddr/exact.hpp>
#include <ddr/mesh.hpp>
#include <ddr/quadrature.hpp>

namespace ddr {

/// Largest polynomial degree with precomputed monomial tables.
constexpr int max_poly_degree = 24;

/// C(degree + d, d), and 0 for degree < 0.
std::size_t poly_dim(int d, int degree);

/// Exponents of the monomials of degree <= `degree`, in storage order.
const std::vector<std::array<int, 3>> &monomial_exponents(int d, int degree);

std::size_t monomial_index(int d, const std::array<int, 3> &alpha);

enum class SubspaceKind { P, P0, vP, G, Gc, R, Rc };

const char *to_string(SubspaceKind kind);

std::size_t space_dim(SubspaceKind kind, int ell, int d);

//------------------------------------------------------------------------------
// Exact coefficient maps (scaled coordinates; the physical derivative carries
// an extra factor 1/h_P)
//------------------------------------------------------------------------------

RationalMatrix derivative_map(int d, int degree, int axis);     // P^degree -> P^(degree-1)
RationalMatrix multiplication_map(int d, int degree, int axis); // P^degree -> P^(degree+1)
RationalMatrix embedding_map(int d, int from, int to);          // P^from -> P^to, from <= to

enum class Differential {
  Grad,  // scalar, d=3 -> vector
  Div,   // vector, d=3 -> scalar
  Curl,  // vector, d=3 -> vector
  GradF, // scalar, d=2 -> vector
  DivF,  // vector, d=2 -> scalar
  VrotF, // scalar, d=2 -> vector, (grad_F r)^perp
  RotF,  // vector, d=2 -> scalar, div_F (z^perp)
  Perp   // vector, d=2 -> vector, rotation by -pi/2
};

/// Matrix of `op` acting on polynomials of degree `degree` (input ambient).
RationalMatrix differential_map(Differential op, int degree);

struct DifferentialResult {
  RationalMatrix coefficients;
  int h_power = 0; // multiply by h_P^h_power to obtain the physical result
};

DifferentialResult apply_differential(Differential op, int degree, const RationalMatrix &coefficients);

/// Cached double-precision copies of differential_map and derivative_map.
const Eigen::MatrixXd &differential_matrix(Differential op, int degree);
const Eigen::MatrixXd &derivative_matrix(int d, int degree, int axis);

//------------------------------------------------------------------------------
// Subspaces
//------------------------------------------------------------------------------

/// A polynomial subspace on an entity of dimension d as the span of the columns
/// of `coefficients` over the ambient space (P^ambient_degree or its vector version).
/// P0 is stored as the non-constant monomials, a complement of the constants:
/// the pairings in which it appears are insensitive to constants.
struct SubspaceBasis {
  int d = 3;
  SubspaceKind kind = SubspaceKind::P;
  int ell = 0;
  int ambient_degree = 0;
  bool vector_valued = false;
  RationalMatrix coefficients;
  Eigen::MatrixXd values; // coefficients converted to double

  std::size_t dimension() const { return coefficients.cols(); }
  std::size_t ambient_dimension() const { return coefficients.rows(); }
};

/// Cached per (d, kind, ell); G/Gc/R/Rc need d in {2,3}.
const SubspaceBasis &build_subspace_basis(int d, SubspaceKind kind, int ell);

//------------------------------------------------------------------------------
// Entity frames, evaluation and L2 products
//------------------------------------------------------------------------------

struct LocalFrame {
  int dim = 3;
  Vector3 center = Vector3::Zero();
  double h = 1;
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity(); // first `dim` columns are used

  Eigen::Vector3d coordinates(const Vector3 &x) const;
  /// Physical vector with components `z` along the axes.
  Vector3 to_physical(const Eigen::Ref<const Eigen::VectorXd> &z) const;
};

LocalFrame edge_frame(const OrientationTable &table, std::size_t e);
LocalFrame face_frame(const OrientationTable &table, std::size_t f);
LocalFrame element_frame(const OrientationTable &table, std::size_t t);

/// Values of the monomials of degree <= `degree` at scaled coordinates `xi`.
Eigen::VectorXd monomial_values(int d, int degree, const Eigen::Vector3d &xi);
Eigen::VectorXd monomial_values(const LocalFrame &frame, int degree, const Vector3 &x);

/// Gram matrix of the scalar monomials of degree <= `degree`.
Eigen::MatrixXd mass_matrix(const LocalFrame &frame, int degree, const QuadratureRule &rule);

/// Gram matrix between vector polynomials of degrees a (rows) and b (columns),
/// built from a scalar mass matrix covering both degrees.
Eigen::MatrixXd vector_mass(const Eigen::MatrixXd &scalar_mass, int d, int a, int b);

/// Leading block of a scalar mass matrix.
Eigen::MatrixXd mass_block(const Eigen::MatrixXd &scalar_mass, int d, int a, int b);

/// Matrix sending the coefficients of a polynomial of degree `source_degree`
/// (vector-valued iff the target is) to the coefficients of its L2-orthogonal
/// projection onto `target`.
Eigen::MatrixXd projector(const SubspaceBasis &target, const Eigen::MatrixXd &scalar_mass, int source_degree);

} // namespace ddr

#endif
