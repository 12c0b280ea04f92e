#ifndef DDR_LINALG_HPP
#define DDR_LINALG_HPP

// Floating-point linear algebra helpers: checked local solves, numerical rank
// with spectral-gap diagnostics, and residual norms.

#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ddr {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Solves A X = B with partial pivoting; throws ConditioningError when the
/// reciprocal condition estimate of A is below 1e-14.
Eigen::MatrixXd solve_checked(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b, const std::string &what);

struct RankOptions {
  double absolute_floor = 0; // threshold is max(max(m,n) eps sigma_max, absolute_floor)
  bool range_basis = false;  // also return an orthonormal basis of the column space
};

struct RankResult {
  std::size_t rank = 0;
  double sigma_max = 0;
  double threshold = 0;
  double sigma_kept = 0;    // smallest singular value counted in the rank
  double sigma_dropped = 0; // largest singular value below the threshold
  double gap = 0;           // sigma_kept / sigma_dropped, +inf when nothing was dropped or kept
  bool ambiguous = false;   // gap < 10
  Eigen::MatrixXd range;    // m x rank, when requested
};

RankResult numeric_rank(const Eigen::MatrixXd &m, const RankOptions &options = {});

double max_abs(const Eigen::MatrixXd &m);
double max_abs(const SparseMatrix &m);

/// max |a - b| / max(scale, tiny)
double relative_residual(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b, double scale);

} // namespace ddr

#endif
