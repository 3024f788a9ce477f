#include "htmdoc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "htmdoc/error.hpp"
#include "htmdoc/rng.hpp"
#include "htmdoc/serialize.hpp"

namespace htmdoc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

BitVector encode_tokens(const ModelBundle& bundle, const TokenStream& tokens,
                        bool* low_confidence = nullptr) {
  QueryVector q = project_query(bundle.lsi_model, tokens);
  if (low_confidence) *low_confidence = !q.in_vocabulary;
  return binarize_top_n(q, bundle.lsi_model.k, bundle.config.lsi.top_n,
                        bundle.config.lsi.binarize_mode);
}

// Inference-only pooler pass, usable on a const pooler.
SDR pool_inference(const SpatialPooler& pooler, const BitVector& input) {
  const auto overlaps = pooler.compute_overlaps(input);
  return SpatialPooler::inhibit(overlaps, pooler.params().num_active_columns,
                                pooler.params().stimulus_threshold);
}

}  // namespace

void PipelineConfig::validate() const {
  pooler.validate();
  if (lsi.k == 0) throw ContractError("config: k must be >= 1");
  if (lsi.top_n > lsi.k) throw ContractError("config: topN exceeds k");
  if (pooler.input_dimensions != lsi.k)
    throw ContractError("config: inputDimensions must equal k");
  if (!(classifier.alpha > 0.0))
    throw ContractError("config: alpha must be > 0");
  if (classifier.epochs == 0)
    throw ContractError("config: epochs must be >= 1");
  if (!(split.test_fraction > 0.0 && split.test_fraction < 1.0))
    throw ContractError("config: testFraction must be in (0,1)");
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ContractError("config line " + std::to_string(lineno) +
                          ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "k")
        config.lsi.k = static_cast<uint32_t>(std::stoul(value));
      else if (key == "topN")
        config.lsi.top_n = static_cast<uint32_t>(std::stoul(value));
      else if (key == "minDocFreq")
        config.lsi.min_doc_freq = static_cast<uint32_t>(std::stoul(value));
      else if (key == "binarizeBy") {
        if (value == "value")
          config.lsi.binarize_mode = BinarizeMode::kValue;
        else if (value == "abs")
          config.lsi.binarize_mode = BinarizeMode::kAbs;
        else
          throw ContractError("binarizeBy must be value or abs");
      } else if (key == "inputDimensions")
        config.pooler.input_dimensions =
            static_cast<uint32_t>(std::stoul(value));
      else if (key == "columnDimensions")
        config.pooler.column_dimensions =
            static_cast<uint32_t>(std::stoul(value));
      else if (key == "potentialRadius")
        config.pooler.potential_radius =
            static_cast<uint32_t>(std::stoul(value));
      else if (key == "potentialPct")
        config.pooler.potential_pct = std::stod(value);
      else if (key == "numActiveColumnsPerInhArea")
        config.pooler.num_active_columns =
            static_cast<uint32_t>(std::stoul(value));
      else if (key == "synPermActiveInc")
        config.pooler.syn_perm_active_inc = std::stof(value);
      else if (key == "synPermInactiveDec")
        config.pooler.syn_perm_inactive_dec = std::stof(value);
      else if (key == "synPermConnected")
        config.pooler.syn_perm_connected = std::stof(value);
      else if (key == "stimulusThreshold")
        config.pooler.stimulus_threshold =
            static_cast<uint32_t>(std::stoul(value));
      else if (key == "alpha")
        config.classifier.alpha = std::stod(value);
      else if (key == "epochs")
        config.classifier.epochs = static_cast<uint32_t>(std::stoul(value));
      else if (key == "testFraction")
        config.split.test_fraction = std::stod(value);
      else if (key == "seed") {
        config.split.seed = std::stoull(value);
        config.pooler.seed = config.split.seed;
      } else if (key == "spLearningEpochs")
        config.sp_learning_epochs = static_cast<uint32_t>(std::stoul(value));
      else if (key == "jointTraining")
        config.joint_training = (value == "true" || value == "1");
      else
        throw ContractError("config line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ContractError("config line " + std::to_string(lineno) +
                          ": bad value for '" + key + "'");
    }
  }
  return config;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_text(const PipelineConfig& c) {
  std::ostringstream out;
  out << "k = " << c.lsi.k << "\n"
      << "topN = " << c.lsi.top_n << "\n"
      << "minDocFreq = " << c.lsi.min_doc_freq << "\n"
      << "binarizeBy = "
      << (c.lsi.binarize_mode == BinarizeMode::kAbs ? "abs" : "value") << "\n"
      << "inputDimensions = " << c.pooler.input_dimensions << "\n"
      << "columnDimensions = " << c.pooler.column_dimensions << "\n"
      << "potentialRadius = " << c.pooler.potential_radius << "\n"
      << std::setprecision(17) << "potentialPct = " << c.pooler.potential_pct
      << "\n"
      << "numActiveColumnsPerInhArea = " << c.pooler.num_active_columns << "\n"
      << "synPermActiveInc = " << c.pooler.syn_perm_active_inc << "\n"
      << "synPermInactiveDec = " << c.pooler.syn_perm_inactive_dec << "\n"
      << "synPermConnected = " << c.pooler.syn_perm_connected << "\n"
      << "stimulusThreshold = " << c.pooler.stimulus_threshold << "\n"
      << "alpha = " << c.classifier.alpha << "\n"
      << "epochs = " << c.classifier.epochs << "\n"
      << "testFraction = " << c.split.test_fraction << "\n"
      << "seed = " << c.split.seed << "\n"
      << "spLearningEpochs = " << c.sp_learning_epochs << "\n"
      << "jointTraining = " << (c.joint_training ? "true" : "false") << "\n";
  return out.str();
}

std::pair<LabeledCorpus, LabeledCorpus> resplit(
    const PipelineConfig& config, const std::filesystem::path& corpus_dir) {
  LabeledCorpus corpus = load_corpus(corpus_dir);
  return split_train_test(corpus, config.split.test_fraction,
                          config.split.seed);
}

ModelBundle train_on_corpus(const PipelineConfig& config,
                            const LabeledCorpus& train_corpus,
                            const StopwordSet& stopwords, std::ostream* log) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<TokenStream> token_streams;
  token_streams.reserve(train_corpus.size());
  std::vector<uint32_t> labels;
  std::map<std::string, uint32_t> category_index;
  for (uint32_t i = 0; i < train_corpus.categories.size(); ++i)
    category_index[train_corpus.categories[i]] = i;
  for (const auto& doc : train_corpus.documents) {
    token_streams.push_back(tokenize(doc.text, stopwords));
    labels.push_back(category_index.at(doc.label));
  }
  if (log)
    *log << "[train] tokenized " << token_streams.size() << " documents in "
         << seconds_since(t0) << "s\n";

  ModelBundle bundle;
  bundle.config = config;
  bundle.categories = train_corpus.categories;

  const auto t1 = std::chrono::steady_clock::now();
  LsiFitOptions fit_options;
  fit_options.k = config.lsi.k;
  fit_options.min_doc_freq = config.lsi.min_doc_freq;
  fit_options.svd.seed = config.split.seed;
  bool clamped = false;
  fit_options.k_was_clamped = &clamped;
  bundle.lsi_model = fit_lsi(token_streams, fit_options);
  if (clamped && log)
    *log << "[train] warning: k clamped to " << bundle.lsi_model.k
         << " (corpus too small for k=" << config.lsi.k << ")\n";
  if (log)
    *log << "[train] LSI fit: " << bundle.lsi_model.vocabulary.size()
         << " terms, k=" << bundle.lsi_model.k << ", "
         << seconds_since(t1) << "s\n";

  // keep downstream shapes consistent when k was clamped
  bundle.config.lsi.k = bundle.lsi_model.k;
  bundle.config.lsi.top_n = std::min(config.lsi.top_n, bundle.lsi_model.k);
  bundle.config.pooler.input_dimensions = bundle.lsi_model.k;

  const auto t2 = std::chrono::steady_clock::now();
  std::vector<BitVector> encoded;
  encoded.reserve(token_streams.size());
  for (const auto& tokens : token_streams)
    encoded.push_back(encode_tokens(bundle, tokens));
  if (log)
    *log << "[train] encoded " << encoded.size() << " documents in "
         << seconds_since(t2) << "s\n";

  const auto t3 = std::chrono::steady_clock::now();
  bundle.pooler = SpatialPooler(bundle.config.pooler);
  if (!config.joint_training) {
    for (uint32_t epoch = 0; epoch < config.sp_learning_epochs; ++epoch)
      for (const auto& bits : encoded) bundle.pooler.compute(bits, true);
  }
  if (log)
    *log << "[train] pooler learning (" << config.sp_learning_epochs
         << " epochs) in " << seconds_since(t3) << "s\n";

  const auto t4 = std::chrono::steady_clock::now();
  bundle.classifier = SdrClassifier(
      bundle.config.pooler.column_dimensions,
      static_cast<uint32_t>(bundle.categories.size()), config.classifier.alpha);

  std::vector<SDR> sdrs;
  if (!config.joint_training) {
    sdrs.reserve(encoded.size());
    for (const auto& bits : encoded)
      sdrs.push_back(pool_inference(bundle.pooler, bits));
  }
  std::vector<size_t> order(encoded.size());
  for (uint32_t epoch = 0; epoch < config.classifier.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(Rng::derive(config.split.seed,
                        "classifier_epoch_" + std::to_string(epoch)));
    rng.shuffle(order);
    for (size_t idx : order) {
      const SDR sdr = config.joint_training
                          ? bundle.pooler.compute(encoded[idx], true)
                          : sdrs[idx];
      bundle.classifier.learn(sdr, labels[idx]);
    }
  }
  if (log)
    *log << "[train] classifier (" << config.classifier.epochs
         << " epochs) in " << seconds_since(t4) << "s\n";

  // the serialized bundle stores weights at single precision; make the
  // in-memory model identical to its round-tripped form
  bundle.classifier.mutable_weights() =
      bundle.classifier.weights().cast<float>().cast<double>();
  return bundle;
}

ModelBundle train(const PipelineConfig& config,
                  const std::filesystem::path& corpus_dir,
                  const StopwordSet& stopwords, std::ostream* log) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto [train_corpus, test_corpus] = resplit(config, corpus_dir);
  if (log)
    *log << "[train] loaded " << train_corpus.size() << " train / "
         << test_corpus.size() << " test documents ("
         << train_corpus.categories.size() << " categories) in "
         << seconds_since(t0) << "s\n";
  return train_on_corpus(config, train_corpus, stopwords, log);
}

BitVector encode_document(const ModelBundle& bundle, const std::string& text,
                          const StopwordSet& stopwords) {
  return encode_tokens(bundle, tokenize(text, stopwords));
}

EvalReport evaluate(const ModelBundle& bundle, const LabeledCorpus& test,
                    const StopwordSet& stopwords) {
  std::map<std::string, uint32_t> category_index;
  for (uint32_t i = 0; i < bundle.categories.size(); ++i)
    category_index[bundle.categories[i]] = i;
  std::vector<std::string> unknown;
  for (const auto& doc : test.documents)
    if (!category_index.count(doc.label)) unknown.push_back(doc.id);
  if (!unknown.empty()) {
    std::string msg = "evaluate: unknown labels on documents:";
    for (const auto& id : unknown) msg += " " + id;
    throw ContractError(msg);
  }

  const uint32_t k = static_cast<uint32_t>(bundle.categories.size());
  EvalReport report;
  report.categories = bundle.categories;
  report.confusion = Eigen::MatrixXi::Zero(k, k);
  report.num_documents = test.size();

  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& doc : test.documents) {
    const auto te = std::chrono::steady_clock::now();
    const BitVector bits = encode_document(bundle, doc.text, stopwords);
    report.timings.encode_s += seconds_since(te);
    const auto tp = std::chrono::steady_clock::now();
    const SDR sdr = pool_inference(bundle.pooler, bits);
    report.timings.pool_s += seconds_since(tp);
    const uint32_t predicted = bundle.classifier.predict(sdr);
    report.confusion(category_index.at(doc.label),
                     static_cast<int>(predicted)) += 1;
  }
  report.timings.classify_s =
      seconds_since(t0) - report.timings.encode_s - report.timings.pool_s;

  report.tp_rate.assign(k, 0.0);
  int correct = 0;
  for (uint32_t i = 0; i < k; ++i) {
    const int row_total = report.confusion.row(i).sum();
    if (row_total > 0)
      report.tp_rate[i] =
          static_cast<double>(report.confusion(i, i)) / row_total;
    correct += report.confusion(i, i);
  }
  report.accuracy = test.size() == 0
                        ? 0.0
                        : static_cast<double>(correct) / test.size();
  return report;
}

Prediction predict_text(const ModelBundle& bundle, const std::string& text,
                        const StopwordSet& stopwords) {
  bool low_confidence = false;
  const TokenStream tokens = tokenize(text, stopwords);
  QueryVector q = project_query(bundle.lsi_model, tokens);
  low_confidence = !q.in_vocabulary;
  const BitVector bits =
      binarize_top_n(q, bundle.lsi_model.k, bundle.config.lsi.top_n,
                     bundle.config.lsi.binarize_mode);
  const SDR sdr = pool_inference(bundle.pooler, bits);
  Prediction prediction;
  prediction.distribution = bundle.classifier.infer(sdr);
  prediction.low_confidence = low_confidence;
  uint32_t best = 0;
  for (uint32_t j = 1; j < prediction.distribution.probabilities.size(); ++j)
    if (prediction.distribution.probabilities[j] >
        prediction.distribution.probabilities[best])
      best = j;
  prediction.label = bundle.categories[best];
  return prediction;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["accuracy"] = report.accuracy;
  j["num_documents"] = report.num_documents;
  j["categories"] = report.categories;
  j["tp_rate"] = report.tp_rate;
  std::vector<std::vector<int>> confusion;
  for (int i = 0; i < report.confusion.rows(); ++i) {
    std::vector<int> row;
    for (int c = 0; c < report.confusion.cols(); ++c)
      row.push_back(report.confusion(i, c));
    confusion.push_back(std::move(row));
  }
  j["confusion"] = confusion;
  j["timings"] = {{"encode_s", report.timings.encode_s},
                  {"pool_s", report.timings.pool_s},
                  {"classify_s", report.timings.classify_s}};
  return j.dump(2);
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream out;
  size_t name_width = 8;
  for (const auto& c : report.categories)
    name_width = std::max(name_width, c.size());
  out << std::left << std::setw(static_cast<int>(name_width) + 2)
      << "category" << std::right << std::setw(8) << "docs" << std::setw(12)
      << "tp_rate" << "\n";
  for (size_t i = 0; i < report.categories.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(name_width) + 2)
        << report.categories[i] << std::right << std::setw(8)
        << report.confusion.row(static_cast<int>(i)).sum() << std::setw(11)
        << std::fixed << std::setprecision(2) << 100.0 * report.tp_rate[i]
        << "%\n";
  }
  out << "\noverall accuracy: " << std::fixed << std::setprecision(2)
      << 100.0 * report.accuracy << "% (" << report.num_documents
      << " documents)\n";
  return out.str();
}

// --- model bundle serialization -------------------------------------------

void save_model(const ModelBundle& bundle,
                const std::filesystem::path& path) {
  using detail::ByteWriter;
  using detail::Section;
  std::vector<Section> sections;

  {
    ByteWriter w;
    w.str(config_to_text(bundle.config));
    sections.push_back({"config", w.data()});
  }
  {
    const LsiModel& m = bundle.lsi_model;
    ByteWriter w;
    w.u32(m.k);
    w.u32(m.vocabulary.num_docs);
    w.u32(static_cast<uint32_t>(m.vocabulary.size()));
    for (size_t i = 0; i < m.vocabulary.size(); ++i) {
      w.str(m.vocabulary.terms[i]);
      w.u32(m.vocabulary.doc_frequency[i]);
    }
    w.u64(static_cast<uint64_t>(m.term_concept.rows()));
    w.u64(static_cast<uint64_t>(m.term_concept.cols()));
    for (Eigen::Index r = 0; r < m.term_concept.rows(); ++r)
      for (Eigen::Index c = 0; c < m.term_concept.cols(); ++c)
        w.f64(m.term_concept(r, c));
    for (Eigen::Index i = 0; i < m.singular_values.size(); ++i)
      w.f64(m.singular_values[i]);
    sections.push_back({"lsi", w.data()});
  }
  {
    const SpatialPooler& sp = bundle.pooler;
    const SpatialPoolerParams& p = sp.params();
    ByteWriter w;
    w.u32(p.input_dimensions);
    w.u32(p.column_dimensions);
    w.u32(p.potential_radius);
    w.f64(p.potential_pct);
    w.u32(p.num_active_columns);
    w.f32(p.syn_perm_active_inc);
    w.f32(p.syn_perm_inactive_dec);
    w.f32(p.syn_perm_connected);
    w.u32(p.stimulus_threshold);
    w.u64(p.seed);
    for (uint32_t c = 0; c < p.column_dimensions; ++c) {
      const auto& pool = sp.pool(c);
      w.u32(static_cast<uint32_t>(pool.size()));
      uint32_t prev = 0;  // delta-encoded sorted indices
      for (uint32_t idx : pool) {
        w.u32(idx - prev);
        prev = idx;
      }
      for (float perm : sp.permanences(c)) w.f32(perm);
    }
    sections.push_back({"pooler", w.data()});
  }
  {
    const SdrClassifier& clf = bundle.classifier;
    ByteWriter w;
    w.u32(clf.num_inputs());
    w.u32(clf.num_categories());
    w.f64(clf.alpha());
    for (uint32_t r = 0; r < clf.num_inputs(); ++r)
      for (uint32_t c = 0; c < clf.num_categories(); ++c)
        w.f32(static_cast<float>(clf.weights()(r, c)));
    sections.push_back({"classifier", w.data()});
  }
  {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(bundle.categories.size()));
    for (const auto& c : bundle.categories) w.str(c);
    sections.push_back({"categories", w.data()});
  }
  detail::write_bundle_file(path.string(), bundle.format_version, sections);
}

ModelBundle load_model(const std::filesystem::path& path) {
  using detail::ByteReader;
  auto sections = detail::read_bundle_file(path.string(), kModelFormatVersion);
  auto find = [&](const std::string& name) -> const detail::Section& {
    for (const auto& s : sections)
      if (s.name == name) return s;
    throw SerializeError("model bundle missing section: " + name);
  };

  ModelBundle bundle;
  bundle.format_version = kModelFormatVersion;
  {
    const auto& s = find("config");
    ByteReader r(s.payload.data(), s.payload.size());
    bundle.config = parse_config(r.str());
  }
  {
    const auto& s = find("lsi");
    ByteReader r(s.payload.data(), s.payload.size());
    LsiModel m;
    m.k = r.u32();
    m.vocabulary.num_docs = r.u32();
    const uint32_t n_terms = r.u32();
    m.vocabulary.terms.reserve(n_terms);
    m.vocabulary.doc_frequency.reserve(n_terms);
    for (uint32_t i = 0; i < n_terms; ++i) {
      m.vocabulary.terms.push_back(r.str());
      m.vocabulary.doc_frequency.push_back(r.u32());
      m.vocabulary.term_to_id.emplace(m.vocabulary.terms.back(), i);
    }
    const uint64_t rows = r.u64();
    const uint64_t cols = r.u64();
    m.term_concept.resize(static_cast<Eigen::Index>(rows),
                          static_cast<Eigen::Index>(cols));
    for (uint64_t rr = 0; rr < rows; ++rr)
      for (uint64_t cc = 0; cc < cols; ++cc)
        m.term_concept(static_cast<Eigen::Index>(rr),
                       static_cast<Eigen::Index>(cc)) = r.f64();
    m.singular_values.resize(static_cast<Eigen::Index>(m.k));
    for (uint32_t i = 0; i < m.k; ++i) m.singular_values[i] = r.f64();
    bundle.lsi_model = std::move(m);
  }
  {
    const auto& s = find("pooler");
    ByteReader r(s.payload.data(), s.payload.size());
    SpatialPoolerParams p;
    p.input_dimensions = r.u32();
    p.column_dimensions = r.u32();
    p.potential_radius = r.u32();
    p.potential_pct = r.f64();
    p.num_active_columns = r.u32();
    p.syn_perm_active_inc = r.f32();
    p.syn_perm_inactive_dec = r.f32();
    p.syn_perm_connected = r.f32();
    p.stimulus_threshold = r.u32();
    p.seed = r.u64();
    std::vector<std::vector<uint32_t>> pools(p.column_dimensions);
    std::vector<std::vector<float>> perms(p.column_dimensions);
    for (uint32_t c = 0; c < p.column_dimensions; ++c) {
      const uint32_t size = r.u32();
      pools[c].reserve(size);
      uint32_t prev = 0;
      for (uint32_t i = 0; i < size; ++i) {
        prev += r.u32();
        pools[c].push_back(prev);
      }
      perms[c].reserve(size);
      for (uint32_t i = 0; i < size; ++i) perms[c].push_back(r.f32());
    }
    bundle.pooler = SpatialPooler::restore(p, std::move(pools),
                                           std::move(perms));
  }
  {
    const auto& s = find("classifier");
    ByteReader r(s.payload.data(), s.payload.size());
    const uint32_t rows = r.u32();
    const uint32_t cols = r.u32();
    const double alpha = r.f64();
    Eigen::MatrixXd weights(rows, cols);
    for (uint32_t rr = 0; rr < rows; ++rr)
      for (uint32_t cc = 0; cc < cols; ++cc) weights(rr, cc) = r.f32();
    bundle.classifier = SdrClassifier::restore(std::move(weights), alpha);
  }
  {
    const auto& s = find("categories");
    ByteReader r(s.payload.data(), s.payload.size());
    const uint32_t count = r.u32();
    for (uint32_t i = 0; i < count; ++i)
      bundle.categories.push_back(r.str());
  }
  return bundle;
}

}  // namespace htmdoc
