#ifndef HTMDOC_CORPUS_HPP
#define HTMDOC_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace htmdoc {

struct Document {
  std::string id;     // unique within a corpus
  std::string text;   // raw character data
  std::string label;  // category name
};

struct LabeledCorpus {
  std::vector<Document> documents;    // sorted by (label, filename)
  std::vector<std::string> categories;  // distinct, lexicographic

  size_t size() const { return documents.size(); }
};

using TokenStream = std::vector<std::string>;
using StopwordSet = std::unordered_set<std::string>;

// The stopword list shipped with the library (fixed English list).
const StopwordSet& default_stopwords();

// Load a stopword file: one lowercase term per line, UTF-8.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Load a corpus laid out as <root>/<category>/<docfile> plain text.
// Documents are ordered by (label, filename); categories lexicographic.
// Throws IngestError on missing directory, unreadable file or empty corpus.
LabeledCorpus load_corpus(const std::filesystem::path& root);

// Maximal alphanumeric runs, lowercased; stopwords and single-character
// tokens dropped. Empty text gives an empty stream.
TokenStream tokenize(const std::string& text, const StopwordSet& stopwords);

// Deterministic per-category stratified split. For each category the
// documents are shuffled with a generator seeded from (seed, category) and
// floor(test_fraction * count) go to test. Throws ContractError on a bad
// fraction and FitError if any category ends with zero training documents.
std::pair<LabeledCorpus, LabeledCorpus> split_train_test(
    const LabeledCorpus& corpus, double test_fraction, uint64_t seed);

}  // namespace htmdoc

#endif
