#ifndef HTMDOC_TEST_HELPERS_HPP
#define HTMDOC_TEST_HELPERS_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "htmdoc/rng.hpp"
#include "htmdoc/svd.hpp"

namespace htmdoc::testing {

// Brute-force SVD oracle: dense eigendecomposition of X^T X. Singular
// values are the square roots of the eigenvalues, descending. Independent
// of the randomized implementation path.
inline Eigen::VectorXd oracle_singular_values(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd gram = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  Eigen::VectorXd ev = eig.eigenvalues();  // ascending
  Eigen::VectorXd sigma(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    sigma[i] = std::sqrt(std::max(0.0, ev[ev.size() - 1 - i]));
  return sigma;
}

// Optimal rank-k squared Frobenius reconstruction error per the oracle:
// the sum of the discarded eigenvalues of X^T X. Kept in squared units so
// the comparison is not degraded by the sqrt near small singular values.
inline double oracle_rank_k_error_sq(const Eigen::MatrixXd& x, int k) {
  Eigen::MatrixXd gram = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  Eigen::VectorXd ev = eig.eigenvalues();  // ascending
  double sq = 0.0;
  for (Eigen::Index i = 0; i + k < ev.size(); ++i) sq += std::max(0.0, ev[i]);
  return sq;
}

inline SparseMatrixD to_sparse(const Eigen::MatrixXd& dense) {
  SparseMatrixD sparse(dense.rows(), dense.cols());
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index r = 0; r < dense.rows(); ++r)
    for (Eigen::Index c = 0; c < dense.cols(); ++c)
      if (dense(r, c) != 0.0) triplets.emplace_back(r, c, dense(r, c));
  sparse.setFromTriplets(triplets.begin(), triplets.end());
  return sparse;
}

// Scratch directory that cleans up after itself.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("htmdoc_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

// Synthetic labeled corpus: each category draws most tokens from its own
// vocabulary pool plus a shared pool, so categories are separable but not
// trivially disjoint.
struct FixtureSpec {
  std::vector<std::string> categories = {"autos", "space", "sports"};
  int docs_per_category = 20;
  int tokens_per_doc = 100;
  int words_per_category = 40;
  int shared_words = 30;
  double shared_fraction = 0.2;
  uint64_t seed = 7;
};

inline void write_fixture_corpus(const std::filesystem::path& root,
                                 const FixtureSpec& spec = {}) {
  Rng rng(spec.seed);
  std::vector<std::string> shared;
  for (int i = 0; i < spec.shared_words; ++i)
    shared.push_back("common" + std::to_string(i));
  for (size_t c = 0; c < spec.categories.size(); ++c) {
    const auto dir = root / spec.categories[c];
    std::filesystem::create_directories(dir);
    std::vector<std::string> own;
    for (int i = 0; i < spec.words_per_category; ++i)
      own.push_back(spec.categories[c] + "word" + std::to_string(i));
    for (int d = 0; d < spec.docs_per_category; ++d) {
      std::ofstream out(dir / ("doc" + std::to_string(d) + ".txt"));
      for (int t = 0; t < spec.tokens_per_doc; ++t) {
        const bool use_shared = rng.uniform() < spec.shared_fraction;
        const auto& pool = use_shared ? shared : own;
        out << pool[rng.uniform_int(pool.size())] << ' ';
      }
      out << '\n';
    }
  }
}

}  // namespace htmdoc::testing

#endif
