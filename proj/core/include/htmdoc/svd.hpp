#ifndef HTMDOC_SVD_HPP
#define HTMDOC_SVD_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>

namespace htmdoc {

using SparseMatrixD = Eigen::SparseMatrix<double>;

struct SvdOptions {
  int oversample = 10;      // extra subspace dimensions beyond k
  int max_iterations = 100;  // power-iteration cap
  double tol = 1e-7;         // relative change in singular values
  uint64_t seed = 0;        // seeds the random test matrix
};

struct SvdResult {
  Eigen::MatrixXd left;             // rows x k, orthonormal columns
  Eigen::VectorXd singular_values;  // descending, nonnegative
  Eigen::MatrixXd right;            // cols x k, orthonormal columns
};

// Top-k singular triplets of a sparse matrix via randomized subspace
// iteration. Never forms X^T X densely. Sign convention: each left
// singular vector's largest-magnitude entry is nonnegative, with the
// right partner flipped to match. Throws NumericError on an all-zero
// matrix or non-convergence within the iteration cap, and ContractError
// when k exceeds min(rows, cols).
SvdResult truncated_svd(const SparseMatrixD& matrix, int k,
                        const SvdOptions& options = {});

}  // namespace htmdoc

#endif
