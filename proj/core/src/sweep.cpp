// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/ranker/sweep.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/error.hpp"
#include "backrank/ranker/ranker.hpp"

namespace backrank::ranker {

std::vector<SweepRow> evaluate_run(std::span<const corpus::RankedList> run, const corpus::Collection& collection,
                                   double lambda, const SweepConfig& config) {
  const std::size_t eff_cutoff = kEffectivenessCutoff;
  const auto effectiveness =
      metrics::evaluate_effectiveness(run, collection.qrels(), std::span<const std::size_t>(&eff_cutoff, 1));

  const auto neutral = metrics::filter_gendered_queries(collection.queries(), config.lexicon);
  std::vector<corpus::RankedList> neutral_run;
  for (const auto& list : run) {
    const bool keep = std::any_of(neutral.kept.begin(), neutral.kept.end(),
                                  [&](const corpus::Query& q) { return q.id == list.query_id; });
    if (keep) neutral_run.push_back(list);
  }
  const metrics::Magnitude variants[] = {metrics::Magnitude::tf, metrics::Magnitude::boolean};
  const auto bias =
      metrics::evaluate_bias(neutral_run, collection, config.lexicon, config.cutoffs, variants, config.magnitude);

  std::vector<SweepRow> rows;
  for (std::size_t cutoff : config.cutoffs) {
    const auto& tf = bias.at(metrics::Magnitude::tf, cutoff);
    const auto& boolean = bias.at(metrics::Magnitude::boolean, cutoff);
    rows.push_back({lambda, cutoff, effectiveness.front().mrr, effectiveness.front().ndcg, tf.rab, tf.arab,
                    boolean.rab, boolean.arab});
  }
  return rows;
}

SweepResult sweep_lambda(const model::Backpack& model, const corpus::Vocab& vocab,
                         const corpus::Collection& collection, std::span<const corpus::RankedList> candidates,
                         std::span<const senses::PolarityPair> pairs, const SweepConfig& config) {
  if (config.lambdas.empty()) throw DomainError("sweep: no lambda values");
  if (config.cutoffs.empty()) throw DomainError("sweep: no cutoffs");
  SweepResult result;
  result.scores = senses::attribute_scores(model, pairs);
  for (double lambda : config.lambdas) {
    result.maps.push_back(senses::build_sense_map(result.scores, lambda, config.top_senses));
  }
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    const auto run = rerank(model, vocab, collection, candidates, &result.maps[i]);
    auto rows = evaluate_run(run, collection, config.lambdas[i], config);
    spdlog::info("lambda {}: ndcg@{} {:.4f}, arab_tf@{} {:.4f}", config.lambdas[i], kEffectivenessCutoff,
                 rows.front().ndcg, rows.front().cutoff, rows.front().arab_tf);
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const std::string& footer) {
  out << "lambda,mrr@10,ndcg@10,rab_tf,arab_tf,rab_bool,arab_bool,cutoff\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", r.lambda, r.mrr, r.ndcg, r.rab_tf,
                       r.arab_tf, r.rab_bool, r.arab_bool, r.cutoff);
  }
  out << "# " << footer << '\n';
}

}  // namespace backrank::ranker
