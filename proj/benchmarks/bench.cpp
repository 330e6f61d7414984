// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/bm25.hpp"
#include "backrank/corpus/synthetic.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/metrics/metrics.hpp"
#include "backrank/model/backpack.hpp"
#include "backrank/num/ops.hpp"
#include "backrank/num/random.hpp"
#include "backrank/ranker/ranker.hpp"

namespace {

using namespace backrank;

struct World {
  corpus::Collection collection;
  corpus::Vocab vocab;
  World() : collection(corpus::generate_synthetic(corpus::SynthConfig{})) {
    std::vector<std::vector<std::string>> texts;
    for (const auto& d : collection.documents()) texts.push_back(d.tokens);
    for (const auto& q : collection.queries()) texts.push_back(q.tokens);
    vocab = corpus::Vocab::build(texts);
  }
};

const World& world() {
  static const World w;
  return w;
}

model::Backpack default_model() {
  model::BackpackConfig c;
  c.vocab_size = world().vocab.size();
  return model::Backpack(c, 1);
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  num::Rng rng(1);
  std::vector<double> v(n * n);
  for (double& x : v) x = rng.normal();
  const num::Tensor a({n, n}, v), b({n, n}, v);
  for (auto _ : state) benchmark::DoNotOptimize(num::matmul(a, b));
}
BENCHMARK(BM_Matmul)->Arg(16)->Arg(32)->Arg(64);

void BM_RelevanceLogit(benchmark::State& state) {
  const auto m = default_model();
  const auto table = m.sense_table();
  const auto& doc = world().collection.documents().front();
  const auto& query = world().collection.queries().front();
  const auto packed = m.pack(world().vocab.encode(query.tokens), world().vocab.encode(doc.tokens));
  const bool use_table = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(m.relevance_logit(packed, nullptr, use_table ? &table : nullptr));
}
BENCHMARK(BM_RelevanceLogit)->Arg(0)->Arg(1);

void BM_TrainStep(benchmark::State& state) {
  auto m = default_model();
  ranker::TrainConfig cfg;
  cfg.epochs = 1;
  cfg.learning_rate = 0.01;
  auto examples = ranker::build_training_examples(world().collection, world().vocab, cfg);
  examples.resize(cfg.batch_size);
  for (auto _ : state) ranker::train(m, examples, cfg);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.batch_size));
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_Bm25Retrieve(benchmark::State& state) {
  const corpus::Bm25Index index(world().collection.documents());
  const auto& queries = world().collection.queries();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.retrieve(queries[i++ % queries.size()], 100));
}
BENCHMARK(BM_Bm25Retrieve);

void BM_Arab(benchmark::State& state) {
  num::Rng rng(2);
  std::vector<double> balances(static_cast<std::size_t>(state.range(0)));
  for (double& b : balances) b = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(metrics::arab(balances, balances.size()));
}
BENCHMARK(BM_Arab)->Arg(10)->Arg(100);

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::err);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
