#ifndef DDR_LIFT_HPP
#define DDR_LIFT_HPP

// Reduction maps from the degree-k complex to the degree-0 complex, extension
// maps going back, the kernels of the reductions, and the lifting of integer
// cohomology generators to discrete fields of degree k.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include <ddr/cw_homology.hpp>
#include <ddr/ddr_operators.hpp>
#include <ddr/linalg.hpp>

namespace ddr {

/// One sparse matrix per space (Grad, Curl, Div, L2).
struct SpaceMaps {
  std::array<SparseMatrix, 4> maps;

  const SparseMatrix &operator[](Space s) const { return maps[static_cast<std::size_t>(s)]; }
  SparseMatrix &operator[](Space s) { return maps[static_cast<std::size_t>(s)]; }
};

/// Degree k -> degree 0: vertex values, and the averages over edges, faces and
/// elements of the lowest-order component.
SpaceMaps build_reductions(const DDRComplex &ddr);

/// Degree 0 -> degree k. Built entity by entity (edges, faces, elements) so
/// that the extension commutes with the discrete differentials and is a right
/// inverse of the reduction.
SpaceMaps build_extensions(const DDRComplex &ddr, const DDRComplex &ddr0);

/// Columns spanning the kernel of each reduction (dense, degree-k space).
SpaceMaps zero_reduction_bases(const DDRComplex &ddr);

struct LiftedGenerators {
  int index = 0;                        // cohomology degree (1 or 2)
  std::vector<Eigen::VectorXd> vectors; // degree-k discrete fields
  double kernel_residual = 0;           // max over generators of |d g|_inf / (max|d| |g|_inf)
  std::size_t image_rank = 0;           // rank of the incoming differential
  std::size_t combined_rank = 0;        // rank of [image | generators]
  double gap = 0;                       // spectral gap of the combined rank decision
  bool certified = false;
};

/// Lifts integer CW generators of H^i (i = 1, 2) through the inverse de Rham
/// map and the extension, and checks that the lifts are closed and independent
/// modulo the image of the incoming differential.
LiftedGenerators lift_generators(const DDRComplex &ddr, const SpaceMaps &extensions, const RationalMatrix &generators,
                                 const DeRhamScaling &scaling, int i, const RankOptions &options = {});

} // namespace ddr

#endif
