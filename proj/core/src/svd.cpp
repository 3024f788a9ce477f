#include "htmdoc/svd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "htmdoc/error.hpp"
#include "htmdoc/rng.hpp"

namespace htmdoc {

namespace {

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() *
         Eigen::MatrixXd::Identity(a.rows(), std::min(a.rows(), a.cols()));
}

}  // namespace

SvdResult truncated_svd(const SparseMatrixD& matrix, int k,
                        const SvdOptions& options) {
  const Eigen::Index m = matrix.rows();
  const Eigen::Index n = matrix.cols();
  if (k < 1 || k > std::min(m, n))
    throw ContractError("truncated_svd: k out of range");
  if (matrix.nonZeros() == 0 || matrix.norm() == 0.0)
    throw NumericError("truncated_svd: all-zero matrix");

  const Eigen::Index ell =
      std::min<Eigen::Index>(k + options.oversample, std::min(m, n));

  // Random range finder, then subspace iteration until the singular-value
  // estimates stop moving.
  Rng rng(options.seed);
  Eigen::MatrixXd gauss(n, ell);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < ell; ++j) gauss(i, j) = rng.gaussian();

  Eigen::MatrixXd basis = thin_q(matrix * gauss);
  Eigen::VectorXd prev_sigma;
  bool converged = false;
  double achieved = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations && !converged; ++iter) {
    Eigen::MatrixXd cobasis = thin_q(matrix.transpose() * basis);
    Eigen::MatrixXd range = matrix * cobasis;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(range);
    basis = qr.householderQ() * Eigen::MatrixXd::Identity(m, ell);
    Eigen::MatrixXd r_factor = qr.matrixQR()
                                   .topRows(ell)
                                   .template triangularView<Eigen::Upper>();
    // singular values of the R factor equal those of the projected matrix
    Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(r_factor)
                                .singularValues();
    if (prev_sigma.size() == sigma.size()) {
      achieved = 0.0;
      for (int i = 0; i < k; ++i) {
        const double denom = std::max(prev_sigma[i], 1e-300);
        achieved = std::max(achieved,
                            std::abs(sigma[i] - prev_sigma[i]) / denom);
      }
      if (achieved <= options.tol) converged = true;
    }
    prev_sigma = sigma;
  }
  if (!converged)
    throw NumericError(
        "truncated_svd: no convergence within iteration cap; achieved "
        "relative change " +
        std::to_string(achieved));

  Eigen::MatrixXd projected =
      (matrix.transpose() * basis).transpose();  // ell x n
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      projected, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SvdResult result;
  result.left = basis * svd.matrixU().leftCols(k);
  result.singular_values = svd.singularValues().head(k);
  result.right = svd.matrixV().leftCols(k);

  // sign convention: largest-magnitude entry of each left vector nonnegative
  for (int j = 0; j < k; ++j) {
    Eigen::Index idx;
    result.left.col(j).cwiseAbs().maxCoeff(&idx);
    if (result.left(idx, j) < 0.0) {
      result.left.col(j) *= -1.0;
      result.right.col(j) *= -1.0;
    }
  }
  return result;
}

}  // namespace htmdoc
