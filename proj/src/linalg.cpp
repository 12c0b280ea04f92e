#include <ddr/linalg.hpp>

#include <cmath>
#include <limits>

#include <ddr/errors.hpp>

namespace ddr {

Eigen::MatrixXd solve_checked(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b, const std::string &what)
{
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw InternalError(what + ": incompatible system shapes");
  }
  if (a.rows() == 0) {
    return Eigen::MatrixXd::Zero(0, b.cols());
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-14)) {
    throw ConditioningError(what + ": local system is singular or ill-conditioned (rcond " + std::to_string(rcond) +
                            ")");
  }
  return lu.solve(b);
}

RankResult numeric_rank(const Eigen::MatrixXd &m, const RankOptions &options)
{
  RankResult result;
  const auto inf = std::numeric_limits<double>::infinity();
  if (m.size() == 0) {
    result.gap = inf;
    result.threshold = options.absolute_floor;
    if (options.range_basis) {
      result.range = Eigen::MatrixXd::Zero(m.rows(), 0);
    }
    return result;
  }
  unsigned int flags = options.range_basis ? Eigen::ComputeThinU : 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, flags);
  const Eigen::VectorXd &sigma = svd.singularValues();
  result.sigma_max = sigma.size() > 0 ? sigma(0) : 0;
  const double n = static_cast<double>(std::max(m.rows(), m.cols()));
  result.threshold = std::max(n * std::numeric_limits<double>::epsilon() * result.sigma_max, options.absolute_floor);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(sigma.size()) && sigma(static_cast<Eigen::Index>(r)) > result.threshold) {
    ++r;
  }
  result.rank = r;
  result.sigma_kept = r > 0 ? sigma(static_cast<Eigen::Index>(r - 1)) : 0;
  result.sigma_dropped = r < static_cast<std::size_t>(sigma.size()) ? sigma(static_cast<Eigen::Index>(r)) : 0;
  if (r == 0 || result.sigma_dropped == 0) {
    result.gap = inf;
  } else {
    result.gap = result.sigma_kept / result.sigma_dropped;
  }
  result.ambiguous = result.gap < 10;
  if (options.range_basis) {
    result.range = svd.matrixU().leftCols(static_cast<Eigen::Index>(r));
  }
  return result;
}

double max_abs(const Eigen::MatrixXd &m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrix &m)
{
  double v = 0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      v = std::max(v, std::abs(it.value()));
    }
  }
  return v;
}

double relative_residual(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b, double scale)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InternalError("relative_residual: shape mismatch");
  }
  const double diff = max_abs(Eigen::MatrixXd(a - b));
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

} // namespace ddr
