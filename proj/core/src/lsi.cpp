#include "htmdoc/lsi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "htmdoc/error.hpp"

namespace htmdoc {

double tfidf_weight(double f_td, uint32_t total_docs, uint32_t doc_freq) {
  if (doc_freq == 0 || doc_freq > total_docs)
    throw ContractError("tfidf_weight: doc_freq must be in [1, N]");
  if (f_td == 0.0) return 0.0;
  return f_td * std::log(static_cast<double>(total_docs) /
                         static_cast<double>(doc_freq));
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& train_docs,
                            uint32_t min_doc_freq) {
  if (train_docs.empty())
    throw ContractError("build_vocabulary: no training documents");

  std::map<std::string, uint32_t> df;  // ordered -> lexicographic ids
  for (const auto& doc : train_docs) {
    std::set<std::string> seen(doc.begin(), doc.end());
    for (const auto& term : seen) ++df[term];
  }

  Vocabulary vocab;
  vocab.num_docs = static_cast<uint32_t>(train_docs.size());
  for (const auto& [term, count] : df) {
    if (count < min_doc_freq) continue;
    vocab.term_to_id.emplace(term, static_cast<uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(term);
    vocab.doc_frequency.push_back(count);
  }
  if (vocab.terms.empty())
    throw FitError("build_vocabulary: empty vocabulary after filtering");
  return vocab;
}

SparseMatrixD build_weighted_matrix(const std::vector<TokenStream>& train_docs,
                                    const Vocabulary& vocab) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (size_t d = 0; d < train_docs.size(); ++d) {
    std::map<uint32_t, uint32_t> counts;
    for (const auto& token : train_docs[d]) {
      auto it = vocab.term_to_id.find(token);
      if (it != vocab.term_to_id.end()) ++counts[it->second];
    }
    for (const auto& [term_id, count] : counts) {
      const double w = tfidf_weight(count, vocab.num_docs,
                                    vocab.doc_frequency[term_id]);
      if (w != 0.0)
        triplets.emplace_back(static_cast<int>(term_id), static_cast<int>(d),
                              w);
    }
  }
  SparseMatrixD matrix(static_cast<Eigen::Index>(vocab.size()),
                       static_cast<Eigen::Index>(train_docs.size()));
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  return matrix;
}

LsiModel fit_lsi(const std::vector<TokenStream>& train_docs,
                 const LsiFitOptions& options) {
  Vocabulary vocab = build_vocabulary(train_docs, options.min_doc_freq);
  SparseMatrixD matrix = build_weighted_matrix(train_docs, vocab);

  uint32_t k = options.k;
  const uint32_t max_k = static_cast<uint32_t>(
      std::min<size_t>(vocab.size(), train_docs.size()));
  bool clamped = false;
  if (k > max_k) {
    k = max_k;
    clamped = true;
  }
  if (options.k_was_clamped) *options.k_was_clamped = clamped;

  SvdResult svd = truncated_svd(matrix, static_cast<int>(k), options.svd);

  LsiModel model;
  model.vocabulary = std::move(vocab);
  model.term_concept = std::move(svd.left);
  model.singular_values = std::move(svd.singular_values);
  model.k = k;
  return model;
}

QueryVector project_query(const LsiModel& model, const TokenStream& doc) {
  std::map<uint32_t, uint32_t> counts;
  for (const auto& token : doc) {
    auto it = model.vocabulary.term_to_id.find(token);
    if (it != model.vocabulary.term_to_id.end()) ++counts[it->second];
  }
  QueryVector q;
  q.values = Eigen::VectorXd::Zero(model.k);
  if (counts.empty()) {
    q.in_vocabulary = false;
    return q;
  }
  // q = row . L_k . diag(sigma), accumulated over the sparse row
  for (const auto& [term_id, count] : counts) {
    const double w = tfidf_weight(count, model.vocabulary.num_docs,
                                  model.vocabulary.doc_frequency[term_id]);
    if (w != 0.0) q.values += w * model.term_concept.row(term_id).transpose();
  }
  q.values.array() *= model.singular_values.array();
  return q;
}

BitVector binarize_top_n(const QueryVector& q, uint32_t width, uint32_t n,
                         BinarizeMode mode) {
  if (q.values.size() != static_cast<Eigen::Index>(width))
    throw ContractError("binarize_top_n: width must equal query length");
  if (n > width)
    throw ContractError("binarize_top_n: n exceeds width");

  if (q.values.isZero(0.0)) return BitVector(width, {});

  std::vector<uint32_t> order(width);
  std::iota(order.begin(), order.end(), 0u);
  auto key = [&](uint32_t i) {
    const double v = q.values[i];
    return mode == BinarizeMode::kAbs ? std::abs(v) : v;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return key(a) > key(b); });
  order.resize(n);
  return BitVector(width, std::move(order));
}

}  // namespace htmdoc
