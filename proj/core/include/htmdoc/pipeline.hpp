#ifndef HTMDOC_PIPELINE_HPP
#define HTMDOC_PIPELINE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "htmdoc/classifier.hpp"
#include "htmdoc/corpus.hpp"
#include "htmdoc/lsi.hpp"
#include "htmdoc/spatial_pooler.hpp"

namespace htmdoc {

inline constexpr uint32_t kModelFormatVersion = 1;

struct LsiConfig {
  uint32_t k = 400;
  uint32_t top_n = 40;
  uint32_t min_doc_freq = 2;
  BinarizeMode binarize_mode = BinarizeMode::kValue;
};

struct ClassifierConfig {
  double alpha = 0.01;
  uint32_t epochs = 10;
};

struct SplitConfig {
  double test_fraction = 0.1;
  uint64_t seed = 42;
};

struct PipelineConfig {
  LsiConfig lsi;
  SpatialPoolerParams pooler;  // Table-style defaults
  ClassifierConfig classifier;
  SplitConfig split;
  uint32_t sp_learning_epochs = 1;
  bool joint_training = false;  // single pass with pooler learning on

  void validate() const;
};

// Flat key=value config text. Pooler keys use the published parameter
// names (inputDimensions, columnDimensions, potentialRadius,
// numActiveColumnsPerInhArea, synPermActiveInc, synPermInactiveDec, ...).
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config_file(const std::filesystem::path& path);
std::string config_to_text(const PipelineConfig& config);

struct ModelBundle {
  PipelineConfig config;
  LsiModel lsi_model;
  SpatialPooler pooler;
  SdrClassifier classifier;
  std::vector<std::string> categories;
  uint32_t format_version = kModelFormatVersion;
};

struct StageTimings {
  double load_s = 0, fit_lsi_s = 0, encode_s = 0, pool_s = 0, classify_s = 0;
};

struct EvalReport {
  std::vector<std::string> categories;
  Eigen::MatrixXi confusion;       // rows = true category, cols = predicted
  std::vector<double> tp_rate;     // diagonal / row sum
  double accuracy = 0;             // trace / total
  size_t num_documents = 0;
  StageTimings timings;
};

struct Prediction {
  std::string label;
  CategoryDistribution distribution;
  bool low_confidence = false;  // zero-projection input
};

// Full training pass over the corpus directory: load + split, fit the LSI
// encoder on the train side, run the pooler learning epochs, then the
// classifier epochs on frozen-pooler SDRs (or jointly when configured).
// Stage progress goes to `log` when given.
ModelBundle train(const PipelineConfig& config,
                  const std::filesystem::path& corpus_dir,
                  const StopwordSet& stopwords = default_stopwords(),
                  std::ostream* log = nullptr);

// Train on an already-loaded training corpus (no splitting).
ModelBundle train_on_corpus(const PipelineConfig& config,
                            const LabeledCorpus& train_corpus,
                            const StopwordSet& stopwords = default_stopwords(),
                            std::ostream* log = nullptr);

// Re-derive the deterministic train/test split a bundle was trained with.
std::pair<LabeledCorpus, LabeledCorpus> resplit(
    const PipelineConfig& config, const std::filesystem::path& corpus_dir);

// Pure evaluation: tokenize, project, binarize, pool (learning off),
// predict. Throws ContractError when a test label is not in the bundle.
EvalReport evaluate(const ModelBundle& bundle, const LabeledCorpus& test,
                    const StopwordSet& stopwords = default_stopwords());

// Single-document inference on raw text.
Prediction predict_text(const ModelBundle& bundle, const std::string& text,
                        const StopwordSet& stopwords = default_stopwords());

// Encoder front half on one document: tokenize -> project -> binarize.
BitVector encode_document(const ModelBundle& bundle, const std::string& text,
                          const StopwordSet& stopwords = default_stopwords());

void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace htmdoc

#endif
