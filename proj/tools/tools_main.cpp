// Command-line front end for the document categorization pipeline:
// train, eval, predict and inspect subcommands over model bundles.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "htmdoc/error.hpp"
#include "htmdoc/pipeline.hpp"

using namespace htmdoc;

namespace {

StopwordSet resolve_stopwords(const std::string& path) {
  if (path.empty()) return default_stopwords();
  return load_stopwords(path);
}

int run_train(const std::string& data_dir, const std::string& config_path,
              uint64_t seed, bool seed_given, const std::string& model_path,
              const std::string& stopword_path, const std::string& eval_out,
              bool joint) {
  PipelineConfig config =
      config_path.empty() ? PipelineConfig{} : load_config_file(config_path);
  if (seed_given) {
    config.split.seed = seed;
    config.pooler.seed = seed;
  }
  if (joint) config.joint_training = true;

  const StopwordSet stopwords = resolve_stopwords(stopword_path);
  ModelBundle bundle = train(config, data_dir, stopwords, &std::cerr);
  save_model(bundle, model_path);
  std::cerr << "[train] model written to " << model_path << "\n";

  if (!eval_out.empty()) {
    auto [train_corpus, test_corpus] = resplit(config, data_dir);
    EvalReport report = evaluate(bundle, test_corpus, stopwords);
    std::ofstream out(eval_out);
    out << report_to_json(report);
    std::cout << report_to_table(report);
  }
  return 0;
}

int run_eval(const std::string& model_path, const std::string& data_dir,
             const std::string& out_path, const std::string& stopword_path,
             bool holdout) {
  ModelBundle bundle = load_model(model_path);
  const StopwordSet stopwords = resolve_stopwords(stopword_path);
  LabeledCorpus test;
  if (holdout) {
    // evaluate only the held-out side of the bundle's own split
    auto [train_corpus, test_corpus] = resplit(bundle.config, data_dir);
    test = std::move(test_corpus);
  } else {
    test = load_corpus(data_dir);
  }
  EvalReport report = evaluate(bundle, test, stopwords);
  std::cout << report_to_table(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report_to_json(report);
  }
  return 0;
}

int run_predict(const std::string& model_path, const std::string& text,
                const std::string& file, const std::string& stopword_path) {
  ModelBundle bundle = load_model(model_path);
  std::string input = text;
  if (!file.empty()) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IngestError("cannot read input file: " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    input = ss.str();
  }
  Prediction p = predict_text(bundle, input, resolve_stopwords(stopword_path));
  std::cout << p.label;
  if (p.low_confidence) std::cout << " (low confidence)";
  std::cout << "\n";
  for (size_t i = 0; i < bundle.categories.size(); ++i)
    std::cout << "  " << bundle.categories[i] << ": "
              << p.distribution.probabilities[static_cast<Eigen::Index>(i)]
              << "\n";
  return 0;
}

int run_inspect(const std::string& model_path) {
  ModelBundle bundle = load_model(model_path);
  const auto& p = bundle.pooler.params();
  std::cout << "format version : " << bundle.format_version << "\n"
            << "vocabulary     : " << bundle.lsi_model.vocabulary.size()
            << " terms over " << bundle.lsi_model.vocabulary.num_docs
            << " training docs\n"
            << "concepts (k)   : " << bundle.lsi_model.k << "\n"
            << "encoder bits   : top " << bundle.config.lsi.top_n << " of "
            << bundle.config.lsi.k << "\n"
            << "categories     : " << bundle.categories.size() << "\n"
            << "sdr sparsity   : " << p.num_active_columns << " / "
            << p.column_dimensions << " ("
            << 100.0 * p.num_active_columns / p.column_dimensions << "%)\n\n"
            << "pooler parameters:\n"
            << "  inputDimensions            = " << p.input_dimensions << "\n"
            << "  columnDimensions           = " << p.column_dimensions << "\n"
            << "  potentialRadius            = " << p.potential_radius << "\n"
            << "  potentialPct               = " << p.potential_pct << "\n"
            << "  numActiveColumnsPerInhArea = " << p.num_active_columns
            << "\n"
            << "  synPermActiveInc           = " << p.syn_perm_active_inc
            << "\n"
            << "  synPermInactiveDec         = " << p.syn_perm_inactive_dec
            << "\n"
            << "  synPermConnected           = " << p.syn_perm_connected
            << "\n"
            << "  stimulusThreshold          = " << p.stimulus_threshold
            << "\n"
            << "  seed                       = " << p.seed << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HTM document categorization pipeline"};
  app.require_subcommand(1);

  std::string data_dir, config_path, model_path, stopword_path;
  std::string out_path, text, file, eval_out;
  uint64_t seed = 0;
  bool joint = false, holdout = false;

  auto* train_cmd = app.add_subcommand("train", "Fit the full pipeline");
  train_cmd->add_option("--data", data_dir, "Corpus root directory")
      ->required();
  train_cmd->add_option("--config", config_path, "Pipeline config file");
  auto* seed_opt = train_cmd->add_option("--seed", seed, "Run seed");
  train_cmd->add_option("--model", model_path, "Output model bundle")
      ->required();
  train_cmd->add_option("--stopwords", stopword_path, "Stopword file");
  train_cmd->add_option("--eval-out", eval_out,
                        "Evaluate the held-out split and write a JSON report");
  train_cmd->add_flag("--joint", joint,
                      "Train pooler and classifier in one joint pass");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a corpus");
  eval_cmd->add_option("--model", model_path, "Model bundle")->required();
  eval_cmd->add_option("--data", data_dir, "Corpus root directory")
      ->required();
  eval_cmd->add_option("--out", out_path, "JSON report output path");
  eval_cmd->add_option("--stopwords", stopword_path, "Stopword file");
  eval_cmd->add_flag("--holdout", holdout,
                     "Evaluate only the bundle's held-out test split");

  auto* predict_cmd =
      app.add_subcommand("predict", "Classify a single text");
  predict_cmd->add_option("--model", model_path, "Model bundle")->required();
  auto* text_opt = predict_cmd->add_option("--text", text, "Raw input text");
  auto* file_opt =
      predict_cmd->add_option("--file", file, "Read input from a file");
  text_opt->excludes(file_opt);
  predict_cmd->add_option("--stopwords", stopword_path, "Stopword file");

  auto* inspect_cmd =
      app.add_subcommand("inspect", "Print model shapes and parameters");
  inspect_cmd->add_option("--model", model_path, "Model bundle")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(train_cmd))
      return run_train(data_dir, config_path, seed, seed_opt->count() > 0,
                       model_path, stopword_path, eval_out, joint);
    if (app.got_subcommand(eval_cmd))
      return run_eval(model_path, data_dir, out_path, stopword_path, holdout);
    if (app.got_subcommand(predict_cmd))
      return run_predict(model_path, text, file, stopword_path);
    if (app.got_subcommand(inspect_cmd)) return run_inspect(model_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
