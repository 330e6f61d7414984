// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/trec.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/metrics/metrics.hpp"
#include "backrank/model/backpack.hpp"
#include "backrank/senses/senses.hpp"

namespace backrank::ranker {

inline constexpr std::size_t kEffectivenessCutoff = 10;

struct SweepConfig {
  std::vector<double> lambdas{1.0, 0.7, 0.5};
  std::vector<std::size_t> cutoffs{10, 20, 30, 40};
  std::size_t top_senses = 2;
  metrics::GenderLexicon lexicon;
  metrics::MagnitudeOptions magnitude;
};

/// MRR@10 and NDCG@10 plus bias at `cutoff`, for one lambda.
struct SweepRow {
  double lambda = 1.0;
  std::size_t cutoff = 10;
  double mrr = 0.0;
  double ndcg = 0.0;
  double rab_tf = 0.0;
  double arab_tf = 0.0;
  double rab_bool = 0.0;
  double arab_bool = 0.0;
};

/// One evaluated ranking condition: effectiveness over all candidate queries, bias
/// over the queries free of lexicon terms.
std::vector<SweepRow> evaluate_run(std::span<const corpus::RankedList> run, const corpus::Collection& collection,
                                   double lambda, const SweepConfig& config);

struct SweepResult {
  senses::AttributeScores scores;
  std::vector<senses::SenseMap> maps;  // one per lambda
  std::vector<SweepRow> rows;          // lambda-major, then cutoff
};

/// For each lambda, suppresses the config.top_senses most sensitive senses with
/// weight lambda, re-ranks the candidates and evaluates the run.
SweepResult sweep_lambda(const model::Backpack& model, const corpus::Vocab& vocab,
                         const corpus::Collection& collection, std::span<const corpus::RankedList> candidates,
                         std::span<const senses::PolarityPair> pairs, const SweepConfig& config);

/// Header `lambda,mrr@10,ndcg@10,rab_tf,arab_tf,rab_bool,arab_bool,cutoff`; `footer`
/// is written as a trailing `# ...` comment line.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const std::string& footer);

}  // namespace backrank::ranker
