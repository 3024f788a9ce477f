#ifndef HTMDOC_LSI_HPP
#define HTMDOC_LSI_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "htmdoc/bitvector.hpp"
#include "htmdoc/corpus.hpp"
#include "htmdoc/svd.hpp"

namespace htmdoc {

struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic; ids are positions
  std::unordered_map<std::string, uint32_t> term_to_id;
  std::vector<uint32_t> doc_frequency;  // n_t per term, 1 <= n_t <= N
  uint32_t num_docs = 0;                // N

  size_t size() const { return terms.size(); }
};

// Trained LSI encoder: vocabulary plus the term-concept factor and
// concept weights. The document-side factor is not retained.
struct LsiModel {
  Vocabulary vocabulary;
  Eigen::MatrixXd term_concept;      // |terms| x k, orthonormal columns
  Eigen::VectorXd singular_values;   // length k, descending
  uint32_t k = 0;
};

struct QueryVector {
  Eigen::VectorXd values;  // length k
  bool in_vocabulary = true;  // false when the doc had no in-vocab tokens
};

enum class BinarizeMode { kValue, kAbs };

// f_td * ln(N / n_t). Throws ContractError when n_t = 0 or n_t > N.
double tfidf_weight(double f_td, uint32_t total_docs, uint32_t doc_freq);

// Terms occurring in at least min_doc_freq documents, lexicographic order.
// Throws FitError when nothing survives the filter.
Vocabulary build_vocabulary(const std::vector<TokenStream>& train_docs,
                            uint32_t min_doc_freq);

// Sparse TF-IDF matrix: rows = term ids, columns = document indices.
SparseMatrixD build_weighted_matrix(const std::vector<TokenStream>& train_docs,
                                    const Vocabulary& vocab);

struct LsiFitOptions {
  uint32_t k = 400;
  uint32_t min_doc_freq = 2;
  SvdOptions svd;
  bool* k_was_clamped = nullptr;  // optional out-flag
};

// build_vocabulary -> build_weighted_matrix -> truncated_svd. k is clamped
// to min(|terms|, |docs|) when the corpus is too small.
LsiModel fit_lsi(const std::vector<TokenStream>& train_docs,
                 const LsiFitOptions& options);

// TF-IDF row for the document times term_concept times diag(sigma).
// Out-of-vocabulary tokens are ignored; a fully out-of-vocab doc gives
// the zero vector with in_vocabulary = false.
QueryVector project_query(const LsiModel& model, const TokenStream& doc);

// BitVector whose ones are the indices of the n largest entries of q
// (signed comparison by default, magnitudes with kAbs); ties go to the
// lower index. The zero vector gives zero ones.
BitVector binarize_top_n(const QueryVector& q, uint32_t width, uint32_t n,
                         BinarizeMode mode = BinarizeMode::kValue);

}  // namespace htmdoc

#endif
