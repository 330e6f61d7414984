// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/trec.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/model/backpack.hpp"
#include "backrank/num/tensor.hpp"

namespace backrank::ranker {

using corpus::RankedList;
using model::TokenIds;

/// -sum_j y_j log softmax(scores)_j over one candidate list. `labels` is a constant.
/// Throws ShapeError on a length mismatch and DomainError on a negative or all-zero y.
num::Tensor listwise_loss(const num::Tensor& labels, const num::Tensor& scores);
double listwise_loss(std::span<const double> labels, std::span<const double> scores);

enum class NegativeSource { bm25, random };

struct TrainConfig {
  std::size_t epochs = 4;
  double learning_rate = 1e-5;
  std::size_t batch_size = 8;  // lists per SGD step; the step loss is their mean
  std::uint64_t seed = 1;
  std::size_t negatives = 7;
  NegativeSource negative_source = NegativeSource::bm25;
  std::size_t bm25_depth = 100;  // candidate pool depth for BM25 negatives
  std::string optimizer = "sgd";

  /// Throws DomainError naming the offending field.
  void validate() const;
};

/// Sets a field from text; false for an unknown key, DomainError for a bad value.
bool apply_train_key(TrainConfig& config, std::string_view key, std::string_view value);
std::vector<std::pair<std::string, std::string>> train_config_entries(const TrainConfig& config);

struct TrainExample {
  std::string query_id;
  TokenIds query;
  std::vector<std::string> doc_ids;
  std::vector<TokenIds> docs;
  std::vector<double> labels;
};

/// One list per (query, judged-relevant document): the positive followed by up to
/// `negatives` non-relevant documents drawn from the query's BM25 pool (or uniformly
/// from the collection). Deterministic under config.seed.
std::vector<TrainExample> build_training_examples(const corpus::Collection& collection, const corpus::Vocab& vocab,
                                                  const TrainConfig& config);

struct TrainHistory {
  std::vector<double> step_losses;   // mean list loss of each batch, before its update
  std::vector<double> epoch_losses;  // mean of the epoch's step losses
  std::size_t epochs_done = 0;
};

/// Called after every epoch with the epoch index and the history so far.
using EpochCallback = std::function<void(std::size_t epoch, const TrainHistory& history)>;

/// Plain SGD on the listwise loss over relevance logits. Epoch e shuffles the
/// examples with the generator stream (seed, e), so stopping after an epoch and
/// resuming with start_epoch = e + 1 reproduces an uninterrupted run.
TrainHistory train(model::Backpack& model, std::span<const TrainExample> examples, const TrainConfig& config,
                   std::size_t start_epoch = 0, const EpochCallback& on_epoch = {});

/// Mean list loss over `examples` without updating anything.
double evaluate_loss(const model::Backpack& model, std::span<const TrainExample> examples);

struct Candidate {
  std::string id;
  TokenIds tokens;
};

/// Orders ids by score descending, ties by id ascending. Throws DomainError when empty
/// or on duplicate ids.
RankedList rank_by_scores(std::string query_id, std::span<const std::string> ids, std::span<const double> scores);

/// Scores are relevance logits; their order equals the order of relevance_score.
/// `table`, when given, must cover the query and every candidate.
RankedList rank(const model::Backpack& model, std::string query_id, std::span<const std::size_t> query,
                std::span<const Candidate> candidates, const senses::SenseMap* map = nullptr,
                const model::SenseTable* table = nullptr);

/// BM25 top `depth` for every query of the collection, in collection order.
std::vector<RankedList> bm25_candidates(const corpus::Collection& collection, std::size_t depth = 100);

/// Re-scores every candidate list with the model. Documents missing from the
/// collection are skipped with a warning; an unknown query id is a DomainError.
std::vector<RankedList> rerank(const model::Backpack& model, const corpus::Vocab& vocab,
                               const corpus::Collection& collection, std::span<const RankedList> candidates,
                               const senses::SenseMap* map = nullptr);

}  // namespace backrank::ranker
