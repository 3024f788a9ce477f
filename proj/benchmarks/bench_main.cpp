// Microbenchmarks for the pipeline hot paths: tokenization, SVD fitting,
// query encoding and the pooler's overlap/inhibition pass.

#include <benchmark/benchmark.h>

#include <sstream>

#include "htmdoc/corpus.hpp"
#include "htmdoc/lsi.hpp"
#include "htmdoc/rng.hpp"
#include "htmdoc/spatial_pooler.hpp"

using namespace htmdoc;

namespace {

std::string synthetic_text(size_t words, uint64_t seed) {
  Rng rng(seed);
  std::ostringstream out;
  for (size_t i = 0; i < words; ++i)
    out << "word" << rng.uniform_int(5000) << ' ';
  return out.str();
}

std::vector<TokenStream> synthetic_streams(size_t docs, size_t words,
                                           uint64_t seed) {
  Rng rng(seed);
  std::vector<TokenStream> streams;
  for (size_t d = 0; d < docs; ++d) {
    TokenStream s;
    for (size_t i = 0; i < words; ++i)
      s.push_back("term" + std::to_string(rng.uniform_int(800)));
    streams.push_back(std::move(s));
  }
  return streams;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = synthetic_text(2000, 1);
  const StopwordSet& stop = default_stopwords();
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(text, stop));
}
BENCHMARK(BM_Tokenize);

void BM_FitLsi(benchmark::State& state) {
  const auto streams =
      synthetic_streams(static_cast<size_t>(state.range(0)), 80, 2);
  LsiFitOptions options;
  options.k = 32;
  options.min_doc_freq = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fit_lsi(streams, options));
}
BENCHMARK(BM_FitLsi)->Arg(100)->Arg(400);

void BM_ProjectAndBinarize(benchmark::State& state) {
  const auto streams = synthetic_streams(200, 80, 3);
  LsiFitOptions options;
  options.k = 64;
  options.min_doc_freq = 1;
  const LsiModel model = fit_lsi(streams, options);
  for (auto _ : state) {
    QueryVector q = project_query(model, streams[17]);
    benchmark::DoNotOptimize(binarize_top_n(q, model.k, 8));
  }
}
BENCHMARK(BM_ProjectAndBinarize);

void BM_PoolerCompute(benchmark::State& state) {
  SpatialPoolerParams params;  // published scale: 400 -> 20000
  params.seed = 4;
  SpatialPooler sp(params);
  Rng rng(5);
  BitVector input(400, rng.sample_without_replacement(400, 40));
  for (auto _ : state) benchmark::DoNotOptimize(sp.compute(input, false));
}
BENCHMARK(BM_PoolerCompute);

void BM_PoolerLearn(benchmark::State& state) {
  SpatialPoolerParams params;
  params.seed = 6;
  SpatialPooler sp(params);
  Rng rng(7);
  BitVector input(400, rng.sample_without_replacement(400, 40));
  for (auto _ : state) sp.compute(input, true);
}
BENCHMARK(BM_PoolerLearn);

}  // namespace

BENCHMARK_MAIN();
