#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "htmdoc/corpus.hpp"
#include "htmdoc/error.hpp"
#include "test_helpers.hpp"

using namespace htmdoc;
using htmdoc::testing::TempDir;

namespace {

void write_doc(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("load_corpus: category-dirs layout, lexicographic order") {
  TempDir dir("corpus");
  write_doc(dir.path() / "pos" / "b.txt", "good movie");
  write_doc(dir.path() / "pos" / "a.txt", "great film");
  write_doc(dir.path() / "neg" / "x.txt", "bad movie");
  write_doc(dir.path() / "neg" / "y.txt", "awful film");

  LabeledCorpus corpus = load_corpus(dir.path());
  CHECK(corpus.size() == 4);
  CHECK(corpus.categories == std::vector<std::string>{"neg", "pos"});
  // sorted by (label, filename)
  CHECK(corpus.documents[0].id == "neg/x.txt");
  CHECK(corpus.documents[1].id == "neg/y.txt");
  CHECK(corpus.documents[2].id == "pos/a.txt");
  CHECK(corpus.documents[3].id == "pos/b.txt");
  CHECK(corpus.documents[2].text == "great film");
  for (const auto& doc : corpus.documents) CHECK(doc.label == doc.id.substr(0, 3));
}

TEST_CASE("load_corpus: missing or empty directory errors") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/htmdoc"), IngestError);
  TempDir dir("empty");
  CHECK_THROWS_AS(load_corpus(dir.path()), IngestError);
}

TEST_CASE("tokenize basics") {
  const StopwordSet stop{"the"};
  CHECK(tokenize("The cat sat", stop) == TokenStream{"cat", "sat"});
  CHECK(tokenize("", stop).empty());
  CHECK(tokenize("HTM is a theory", StopwordSet{"is", "a"}) ==
        TokenStream{"htm", "theory"});
}

TEST_CASE("tokenize: alphanumeric runs, single chars dropped") {
  const StopwordSet stop;
  CHECK(tokenize("foo-bar baz2 x 42", stop) ==
        TokenStream{"foo", "bar", "baz2", "42"});
  CHECK(tokenize("  !!??  ", stop).empty());
  // non-ASCII bytes act as separators
  CHECK(tokenize("caf\xc3\xa9 bar", stop) == TokenStream{"caf", "bar"});
}

TEST_CASE("tokenize: idempotent on its own space-joined output") {
  const StopwordSet stop{"the", "of"};
  TokenStream once = tokenize("The Speed of Light, measured twice!", stop);
  std::string joined;
  for (const auto& t : once) joined += t + " ";
  CHECK(tokenize(joined, stop) == once);
}

TEST_CASE("split_train_test: 9:1 on 100 docs") {
  LabeledCorpus corpus;
  corpus.categories = {"only"};
  for (int i = 0; i < 100; ++i)
    corpus.documents.push_back(
        {"only/doc" + std::to_string(i), "text", "only"});
  auto [train, test] = split_train_test(corpus, 0.1, 42);
  CHECK(train.size() == 90);
  CHECK(test.size() == 10);
}

TEST_CASE("split_train_test: floor semantics keeps small categories whole") {
  LabeledCorpus corpus;
  corpus.categories = {"tiny"};
  for (int i = 0; i < 5; ++i)
    corpus.documents.push_back({"tiny/d" + std::to_string(i), "t", "tiny"});
  auto [train, test] = split_train_test(corpus, 0.1, 1);
  CHECK(train.size() == 5);
  CHECK(test.size() == 0);
}

TEST_CASE("split_train_test: partition property and determinism") {
  LabeledCorpus corpus;
  corpus.categories = {"a", "b"};
  for (int i = 0; i < 23; ++i)
    corpus.documents.push_back({"a/d" + std::to_string(i), "t", "a"});
  for (int i = 0; i < 17; ++i)
    corpus.documents.push_back({"b/d" + std::to_string(i), "t", "b"});

  auto [train1, test1] = split_train_test(corpus, 0.25, 99);
  auto [train2, test2] = split_train_test(corpus, 0.25, 99);

  auto ids = [](const LabeledCorpus& c) {
    std::set<std::string> s;
    for (const auto& d : c.documents) s.insert(d.id);
    return s;
  };
  std::set<std::string> all = ids(corpus);
  std::set<std::string> tr = ids(train1), te = ids(test1);
  std::set<std::string> both;
  both.insert(tr.begin(), tr.end());
  both.insert(te.begin(), te.end());
  CHECK(both == all);
  CHECK(tr.size() + te.size() == all.size());  // disjoint
  CHECK(tr == ids(train2));                    // identical partition
  CHECK(te == ids(test2));

  auto [train3, test3] = split_train_test(corpus, 0.25, 100);
  CHECK(ids(test3) != te);  // a different seed moves the split
}

TEST_CASE("split_train_test: contract errors") {
  LabeledCorpus corpus;
  corpus.categories = {"a"};
  corpus.documents.push_back({"a/d0", "t", "a"});
  CHECK_THROWS_AS(split_train_test(corpus, 0.0, 1), ContractError);
  CHECK_THROWS_AS(split_train_test(corpus, 1.0, 1), ContractError);
  CHECK_THROWS_AS(split_train_test(LabeledCorpus{}, 0.1, 1), ContractError);
}

TEST_CASE("split_train_test: stratified, every category keeps train docs") {
  LabeledCorpus corpus;
  corpus.categories = {"big", "small"};
  for (int i = 0; i < 40; ++i)
    corpus.documents.push_back({"big/d" + std::to_string(i), "t", "big"});
  corpus.documents.push_back({"small/d0", "t", "small"});
  corpus.documents.push_back({"small/d1", "t", "small"});
  auto [train, test] = split_train_test(corpus, 0.25, 5);
  int small_train = 0;
  for (const auto& d : train.documents)
    if (d.label == "small") ++small_train;
  CHECK(small_train >= 1);
}

TEST_CASE("stopword file loading") {
  TempDir dir("stop");
  write_doc(dir.path() / "stop.txt", "alpha\nbeta\n\ngamma\n");
  StopwordSet set = load_stopwords(dir.path() / "stop.txt");
  CHECK(set == StopwordSet{"alpha", "beta", "gamma"});
  CHECK_THROWS_AS(load_stopwords(dir.path() / "missing.txt"), IngestError);
  CHECK(default_stopwords().count("the") == 1);
  CHECK(default_stopwords().count("cat") == 0);
}
