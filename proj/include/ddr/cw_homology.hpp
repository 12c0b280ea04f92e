#ifndef DDR_CW_HOMOLOGY_HPP
#define DDR_CW_HOMOLOGY_HPP

// Integer cochain complex of the mesh seen as a CW complex, exact Betti numbers
// and cohomology generators, and the de Rham maps identifying the degree-0
// discrete spaces with cochains.
//
// Everything here is computed from the mesh connectivity and vertex
// coordinates only, independently of OrientationTable, so that the comparison
// with the discrete operators is a genuine cross-check.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include <ddr/exact.hpp>
#include <ddr/linalg.hpp>
#include <ddr/mesh.hpp>

namespace ddr {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct CochainComplexInt {
  // coboundary[0]: E x V, coboundary[1]: F x E, coboundary[2]: T x F
  std::array<IntMatrix, 3> coboundary;
  IntMatrix embedding; // V x 1, all ones
};

/// d0[E, V2] = +1, d0[E, V1] = -1; d1[F, E] = +1 if the face loop runs along
/// E from its lower to its higher vertex, -1 otherwise; d2[T, F] = +1 if the
/// loop of F is counter-clockwise seen from outside T.
CochainComplexInt build_cochain_complex(const Mesh &mesh);

/// Entity measures used by the de Rham maps (1 for vertices).
struct DeRhamScaling {
  std::array<Eigen::VectorXd, 4> measures;

  Eigen::VectorXd forward(int space, const Eigen::VectorXd &v) const; // multiply by the measures
  Eigen::VectorXd inverse(int space, const Eigen::VectorXd &c) const;
  SparseMatrix matrix(int space) const;
};

DeRhamScaling de_rham_scaling(const Mesh &mesh);

/// de_rham_map(scaling, true, i, v) = kappa_i v; false applies the inverse.
Eigen::VectorXd de_rham_map(const DeRhamScaling &scaling, bool forward, int space, const Eigen::VectorXd &v);

/// Rank over the rationals by fraction-free elimination; switches to
/// arbitrary-precision integers when 64-bit arithmetic would overflow.
std::size_t integer_rank(const IntMatrix &m);

/// Same elimination carried out in arbitrary precision from the start.
std::size_t integer_rank_bigint(const IntMatrix &m);

struct BettiVector {
  std::array<long, 4> b{};
  std::array<std::size_t, 3> ranks{}; // ranks of the coboundaries
};

BettiVector betti_numbers(const Mesh &mesh, const CochainComplexInt &complex);

/// b_i primitive integer cochains (columns) spanning H^i, i in {1, 2}, certified
/// exactly: each is a cocycle, and they are independent modulo coboundaries.
RationalMatrix cohomology_generators(const Mesh &mesh, const CochainComplexInt &complex, int i);

RationalMatrix to_rational(const IntMatrix &m);

} // namespace ddr

#endif
