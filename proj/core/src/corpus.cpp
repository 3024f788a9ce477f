#include "htmdoc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "htmdoc/error.hpp"
#include "htmdoc/rng.hpp"

namespace fs = std::filesystem;

namespace htmdoc {

namespace {

// Read a file as bytes; invalid UTF-8 is left alone here and handled by the
// tokenizer, which only keeps ASCII alphanumerics.
std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read document file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IngestError("read failure on: " + path.string());
  return ss.str();
}

}  // namespace

LabeledCorpus load_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw IngestError("corpus root is not a directory: " + root.string());

  // map keeps categories and files in lexicographic order
  std::map<std::string, std::vector<fs::path>> by_category;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    auto& files = by_category[entry.path().filename().string()];
    for (const auto& doc : fs::directory_iterator(entry.path())) {
      if (doc.is_regular_file()) files.push_back(doc.path());
    }
    std::sort(files.begin(), files.end());
  }

  LabeledCorpus corpus;
  for (auto& [category, files] : by_category) {
    if (files.empty()) continue;
    corpus.categories.push_back(category);
    for (const auto& path : files) {
      Document doc;
      doc.id = category + "/" + path.filename().string();
      doc.label = category;
      doc.text = read_file(path);
      corpus.documents.push_back(std::move(doc));
    }
  }
  if (corpus.documents.empty())
    throw IngestError("empty corpus under: " + root.string());
  return corpus;
}

TokenStream tokenize(const std::string& text, const StopwordSet& stopwords) {
  TokenStream tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !stopwords.count(current))
      tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c))
      current.push_back(static_cast<char>(std::tolower(c)));
    else
      flush();
  }
  flush();
  return tokens;
}

std::pair<LabeledCorpus, LabeledCorpus> split_train_test(
    const LabeledCorpus& corpus, double test_fraction, uint64_t seed) {
  if (corpus.documents.empty())
    throw ContractError("split_train_test: empty corpus");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ContractError("split_train_test: test_fraction must be in (0,1)");

  std::map<std::string, std::vector<const Document*>> by_category;
  for (const auto& doc : corpus.documents)
    by_category[doc.label].push_back(&doc);

  LabeledCorpus train, test;
  train.categories = corpus.categories;
  test.categories = corpus.categories;
  for (auto& [category, docs] : by_category) {
    Rng rng(Rng::derive(seed, category));
    std::vector<const Document*> shuffled = docs;
    rng.shuffle(shuffled);
    const size_t n_test =
        static_cast<size_t>(test_fraction * static_cast<double>(docs.size()));
    if (shuffled.size() - n_test == 0)
      throw FitError("split leaves no training documents for category: " +
                     category);
    std::vector<const Document*> test_part(shuffled.begin(),
                                           shuffled.begin() + n_test);
    std::vector<const Document*> train_part(shuffled.begin() + n_test,
                                            shuffled.end());
    // restore deterministic (label, filename) order inside each side
    auto by_id = [](const Document* a, const Document* b) {
      return a->id < b->id;
    };
    std::sort(test_part.begin(), test_part.end(), by_id);
    std::sort(train_part.begin(), train_part.end(), by_id);
    for (const Document* d : train_part) train.documents.push_back(*d);
    for (const Document* d : test_part) test.documents.push_back(*d);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace htmdoc
