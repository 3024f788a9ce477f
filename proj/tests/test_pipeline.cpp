#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "htmdoc/error.hpp"
#include "htmdoc/pipeline.hpp"
#include "test_helpers.hpp"

using namespace htmdoc;
using namespace htmdoc::testing;

namespace {

// small pipeline sized for a fixture corpus
PipelineConfig fixture_config() {
  PipelineConfig config;
  config.lsi.k = 24;
  config.lsi.top_n = 8;
  config.lsi.min_doc_freq = 1;
  config.pooler.input_dimensions = 24;
  config.pooler.column_dimensions = 512;
  config.pooler.potential_radius = 24;
  config.pooler.num_active_columns = 16;
  config.classifier.epochs = 10;
  config.split.test_fraction = 0.25;
  config.split.seed = 11;
  config.pooler.seed = 11;
  return config;
}

std::vector<uint8_t> file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("config: text round-trip and verbatim pooler keys") {
  PipelineConfig config = fixture_config();
  config.lsi.binarize_mode = BinarizeMode::kAbs;
  config.joint_training = true;
  const std::string text = config_to_text(config);
  for (const char* key :
       {"inputDimensions", "columnDimensions", "potentialRadius",
        "numActiveColumnsPerInhArea", "synPermActiveInc",
        "synPermInactiveDec"})
    CHECK(text.find(key) != std::string::npos);

  PipelineConfig parsed = parse_config(text);
  CHECK(config_to_text(parsed) == text);
  CHECK(parsed.lsi.binarize_mode == BinarizeMode::kAbs);
  CHECK(parsed.joint_training);
  CHECK(parsed.pooler.num_active_columns == 16);
}

TEST_CASE("config: comments, unknown keys, validation") {
  PipelineConfig parsed = parse_config(
      "# comment\n\nk = 16\ntopN = 4  # trailing comment\nseed = 3\n"
      "inputDimensions = 16\n");
  CHECK(parsed.lsi.k == 16);
  CHECK(parsed.lsi.top_n == 4);
  CHECK(parsed.split.seed == 3);
  CHECK(parsed.pooler.seed == 3);

  CHECK_THROWS_AS(parse_config("bogusKey = 1\n"), ContractError);
  CHECK_THROWS_AS(parse_config("k\n"), ContractError);
  CHECK_THROWS_AS(parse_config("k = banana\n"), ContractError);

  PipelineConfig bad = fixture_config();
  bad.lsi.top_n = bad.lsi.k + 1;
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = fixture_config();
  bad.pooler.input_dimensions = bad.lsi.k + 1;
  CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("train + evaluate on the fixture corpus") {
  TempDir dir("pipeline");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());

  CHECK(bundle.categories ==
        std::vector<std::string>{"autos", "space", "sports"});
  CHECK(bundle.lsi_model.k == 24);
  CHECK(bundle.classifier.num_inputs() == 512);
  CHECK(bundle.classifier.num_categories() == 3);

  auto [train_corpus, test_corpus] = resplit(bundle.config, dir.path());
  CHECK(train_corpus.size() == 45);  // 20 docs/category, fraction 0.25
  CHECK(test_corpus.size() == 15);

  EvalReport report = evaluate(bundle, test_corpus);
  CHECK(report.num_documents == 15);
  CHECK(report.confusion.sum() == 15);
  // report consistency: accuracy = trace / total, tp = diagonal / row sum
  int trace = 0;
  for (int i = 0; i < 3; ++i) trace += report.confusion(i, i);
  CHECK(report.accuracy ==
        doctest::Approx(static_cast<double>(trace) / 15).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) {
    const int row = report.confusion.row(i).sum();
    CHECK(report.tp_rate[i] ==
          doctest::Approx(static_cast<double>(report.confusion(i, i)) / row));
  }
  // the fixture categories are near-disjoint; the pipeline should separate
  // them essentially perfectly
  CHECK(report.accuracy >= 0.8);
}

TEST_CASE("train: k clamped on a tiny corpus") {
  TempDir dir("tiny");
  FixtureSpec spec;
  spec.docs_per_category = 3;
  write_fixture_corpus(dir.path(), spec);
  PipelineConfig config = fixture_config();
  config.split.test_fraction = 0.34;
  std::ostringstream log;
  ModelBundle bundle = train(config, dir.path(), default_stopwords(), &log);
  CHECK(bundle.lsi_model.k <= 6);  // 2 train docs/category after the split
  CHECK(log.str().find("clamped") != std::string::npos);
  CHECK(bundle.config.pooler.input_dimensions == bundle.lsi_model.k);
}

TEST_CASE("determinism: identical runs give byte-identical bundles") {
  TempDir dir("determinism");
  write_fixture_corpus(dir.path());
  ModelBundle a = train(fixture_config(), dir.path());
  ModelBundle b = train(fixture_config(), dir.path());
  save_model(a, dir.path() / "a.model");
  save_model(b, dir.path() / "b.model");
  CHECK(file_bytes(dir.path() / "a.model") ==
        file_bytes(dir.path() / "b.model"));

  PipelineConfig other = fixture_config();
  other.split.seed = 12;
  other.pooler.seed = 12;
  ModelBundle c = train(other, dir.path());
  save_model(c, dir.path() / "c.model");
  CHECK(file_bytes(dir.path() / "a.model") !=
        file_bytes(dir.path() / "c.model"));
}

TEST_CASE("save/load round-trip preserves the evaluation") {
  TempDir dir("roundtrip");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());
  auto [train_corpus, test_corpus] = resplit(bundle.config, dir.path());
  EvalReport before = evaluate(bundle, test_corpus);

  const auto path = dir.path() / "model.bin";
  save_model(bundle, path);
  ModelBundle loaded = load_model(path);

  CHECK(loaded.categories == bundle.categories);
  CHECK(loaded.lsi_model.k == bundle.lsi_model.k);
  CHECK(loaded.lsi_model.vocabulary.terms ==
        bundle.lsi_model.vocabulary.terms);
  CHECK(loaded.lsi_model.term_concept == bundle.lsi_model.term_concept);
  CHECK(loaded.pooler == bundle.pooler);
  CHECK(loaded.classifier.weights() == bundle.classifier.weights());

  EvalReport after = evaluate(loaded, test_corpus);
  CHECK(after.confusion == before.confusion);
  CHECK(after.accuracy == before.accuracy);

  // saving the loaded bundle reproduces the file exactly
  save_model(loaded, dir.path() / "model2.bin");
  CHECK(file_bytes(path) == file_bytes(dir.path() / "model2.bin"));
}

TEST_CASE("model bundle: corruption and version errors are distinct") {
  TempDir dir("corrupt");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());
  const auto path = dir.path() / "model.bin";
  save_model(bundle, path);

  SUBCASE("flipped byte in a section payload fails its checksum") {
    auto bytes = file_bytes(path);
    bytes[bytes.size() - 10] ^= 0xFF;  // inside the categories section
    std::ofstream(dir.path() / "bad.bin", std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    CHECK_THROWS_WITH_AS(load_model(dir.path() / "bad.bin"),
                         doctest::Contains("categories"), ChecksumError);
  }
  SUBCASE("future format version is rejected") {
    auto bytes = file_bytes(path);
    bytes[8] = static_cast<uint8_t>(kModelFormatVersion + 1);  // version field
    std::ofstream(dir.path() / "vnext.bin", std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    CHECK_THROWS_AS(load_model(dir.path() / "vnext.bin"), VersionError);
  }
  SUBCASE("truncated file is reported as truncated") {
    auto bytes = file_bytes(path);
    bytes.resize(bytes.size() / 2);
    std::ofstream(dir.path() / "trunc.bin", std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    CHECK_THROWS_AS(load_model(dir.path() / "trunc.bin"), TruncatedError);
  }
}

TEST_CASE("predict_text") {
  TempDir dir("predict");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());

  SUBCASE("training document text maps to its own label") {
    auto [train_corpus, test_corpus] = resplit(bundle.config, dir.path());
    int correct = 0;
    for (const auto& doc : train_corpus.documents)
      if (predict_text(bundle, doc.text).label == doc.label) ++correct;
    CHECK(static_cast<double>(correct) / train_corpus.size() >= 0.9);
  }
  SUBCASE("empty and stopword-only inputs are flagged, still predicted") {
    Prediction empty = predict_text(bundle, "");
    CHECK(empty.low_confidence);
    CHECK(!empty.label.empty());
    Prediction stopwords_only = predict_text(bundle, "the and of is a");
    CHECK(stopwords_only.low_confidence);
    CHECK(stopwords_only.label == empty.label);
  }
}

TEST_CASE("evaluate: unknown label lists the offending documents") {
  TempDir dir("unknown");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());
  LabeledCorpus bogus;
  bogus.categories = {"mystery"};
  bogus.documents.push_back({"mystery/d0.txt", "some text", "mystery"});
  CHECK_THROWS_WITH_AS(evaluate(bundle, bogus),
                       doctest::Contains("mystery/d0.txt"), ContractError);
}

TEST_CASE("evaluation leaves the bundle unchanged") {
  TempDir dir("pure");
  write_fixture_corpus(dir.path());
  ModelBundle bundle = train(fixture_config(), dir.path());
  auto [train_corpus, test_corpus] = resplit(bundle.config, dir.path());

  save_model(bundle, dir.path() / "before.bin");
  evaluate(bundle, test_corpus);
  predict_text(bundle, "sportsword1 sportsword2");
  save_model(bundle, dir.path() / "after.bin");
  CHECK(file_bytes(dir.path() / "before.bin") ==
        file_bytes(dir.path() / "after.bin"));
}

TEST_CASE("report serialization") {
  EvalReport report;
  report.categories = {"a", "b"};
  report.confusion = Eigen::MatrixXi::Zero(2, 2);
  report.confusion << 3, 1, 0, 4;
  report.tp_rate = {0.75, 1.0};
  report.accuracy = 7.0 / 8.0;
  report.num_documents = 8;
  const std::string json = report_to_json(report);
  CHECK(json.find("\"accuracy\"") != std::string::npos);
  CHECK(json.find("0.875") != std::string::npos);
  const std::string table = report_to_table(report);
  CHECK(table.find("87.50%") != std::string::npos);
  CHECK(table.find("a") != std::string::npos);
}
