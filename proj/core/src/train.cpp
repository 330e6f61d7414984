// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/bm25.hpp"
#include "backrank/corpus/keyvalue.hpp"
#include "backrank/error.hpp"
#include "backrank/num/ops.hpp"
#include "backrank/num/random.hpp"
#include "backrank/ranker/ranker.hpp"

namespace backrank::ranker {

void TrainConfig::validate() const {
  if (epochs == 0) throw DomainError("epochs: must be at least 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("learning_rate: must be a finite non-negative number");
  }
  if (batch_size == 0) throw DomainError("batch_size: must be at least 1");
  if (negatives == 0) throw DomainError("negatives: must be at least 1");
  if (bm25_depth == 0) throw DomainError("bm25_depth: must be at least 1");
  if (optimizer != "sgd") throw DomainError(fmt::format("optimizer: only 'sgd' is supported, got '{}'", optimizer));
}

bool apply_train_key(TrainConfig& c, std::string_view key, std::string_view value) {
  using corpus::parse_number;
  if (key == "epochs") c.epochs = parse_number<std::size_t>(key, value);
  else if (key == "learning_rate") c.learning_rate = parse_number<double>(key, value);
  else if (key == "batch_size") c.batch_size = parse_number<std::size_t>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "negatives") c.negatives = parse_number<std::size_t>(key, value);
  else if (key == "bm25_depth") c.bm25_depth = parse_number<std::size_t>(key, value);
  else if (key == "optimizer") c.optimizer = std::string(value);
  else if (key == "negative_source") {
    if (value == "bm25") c.negative_source = NegativeSource::bm25;
    else if (value == "random") c.negative_source = NegativeSource::random;
    else throw DomainError(fmt::format("{}: expected 'bm25' or 'random', got '{}'", key, value));
  } else {
    return false;
  }
  return true;
}

std::vector<std::pair<std::string, std::string>> train_config_entries(const TrainConfig& c) {
  return {
      {"epochs", std::to_string(c.epochs)},
      {"learning_rate", fmt::format("{}", c.learning_rate)},
      {"batch_size", std::to_string(c.batch_size)},
      {"seed", std::to_string(c.seed)},
      {"negatives", std::to_string(c.negatives)},
      {"negative_source", c.negative_source == NegativeSource::bm25 ? "bm25" : "random"},
      {"bm25_depth", std::to_string(c.bm25_depth)},
      {"optimizer", c.optimizer},
  };
}

std::vector<TrainExample> build_training_examples(const corpus::Collection& collection, const corpus::Vocab& vocab,
                                                  const TrainConfig& config) {
  config.validate();
  const auto& docs = collection.documents();
  if (docs.empty()) throw DomainError("training collection has no documents");
  std::unique_ptr<corpus::Bm25Index> index;
  if (config.negative_source == NegativeSource::bm25) index = std::make_unique<corpus::Bm25Index>(docs);

  num::Rng rng = num::Rng::stream(config.seed, 1);
  const auto& qrels = collection.qrels();
  std::vector<TrainExample> examples;
  for (const auto& query : collection.queries()) {
    if (!qrels.has_query(query.id)) continue;
    std::vector<std::size_t> positives;
    std::set<std::size_t> judged_relevant;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (qrels.grade(query.id, docs[i].id) > 0) {
        positives.push_back(i);
        judged_relevant.insert(i);
      }
    }
    if (positives.empty()) continue;

    std::vector<std::size_t> pool;
    if (index) {
      for (const auto& d : index->retrieve(query, config.bm25_depth).docs) {
        const std::size_t i = *collection.document_index(d.doc_id);
        if (!judged_relevant.count(i)) pool.push_back(i);
      }
    }
    const TokenIds q_tokens = vocab.encode(query.tokens);
    for (std::size_t pos : positives) {
      std::vector<std::size_t> negatives;
      if (pool.size() >= config.negatives) {
        std::vector<std::size_t> shuffled = pool;
        rng.shuffle(std::span<std::size_t>(shuffled));
        negatives.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(config.negatives));
      } else {
        negatives = pool;
        // Top up from the whole collection; bounded so a tiny collection cannot loop forever.
        for (std::size_t tries = 0; negatives.size() < config.negatives && tries < 64 * config.negatives; ++tries) {
          const std::size_t i = rng.below(docs.size());
          if (judged_relevant.count(i) || std::find(negatives.begin(), negatives.end(), i) != negatives.end()) continue;
          negatives.push_back(i);
        }
      }
      TrainExample ex;
      ex.query_id = query.id;
      ex.query = q_tokens;
      ex.doc_ids.push_back(docs[pos].id);
      ex.docs.push_back(vocab.encode(docs[pos].tokens));
      ex.labels.push_back(static_cast<double>(qrels.grade(query.id, docs[pos].id)));
      for (std::size_t n : negatives) {
        ex.doc_ids.push_back(docs[n].id);
        ex.docs.push_back(vocab.encode(docs[n].tokens));
        ex.labels.push_back(0.0);
      }
      examples.push_back(std::move(ex));
    }
  }
  if (examples.empty()) throw DomainError("no query has a judged relevant document; nothing to train on");
  return examples;
}

namespace {

num::Tensor list_loss(const model::Backpack& model, const TrainExample& ex, const model::SenseTable* table) {
  if (ex.docs.size() != ex.labels.size()) throw ShapeError("training example: docs and labels differ in length");
  std::vector<num::Tensor> logits;
  logits.reserve(ex.docs.size());
  for (const auto& doc : ex.docs) {
    logits.push_back(num::reshape(model.relevance_logit(model.pack(ex.query, doc), nullptr, table), {1, 1}));
  }
  const num::Tensor scores = num::reshape(num::concat_rows(logits), {ex.docs.size()});
  return listwise_loss(num::Tensor({ex.labels.size()}, ex.labels), scores);
}

}  // namespace

TrainHistory train(model::Backpack& model, std::span<const TrainExample> examples, const TrainConfig& config,
                   std::size_t start_epoch, const EpochCallback& on_epoch) {
  config.validate();
  if (examples.empty()) throw DomainError("train: empty dataset");
  std::vector<num::Tensor> params;
  for (const auto& p : model.parameters()) {
    params.push_back(p.value);
    params.back().set_requires_grad(true);
  }

  TrainHistory history;
  history.epochs_done = start_epoch;
  std::vector<std::size_t> order(examples.size());
  for (std::size_t epoch = start_epoch; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    num::Rng rng = num::Rng::stream(config.seed, 1000 + epoch);
    rng.shuffle(std::span<std::size_t>(order));

    double epoch_total = 0.0;
    std::size_t steps = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      for (auto& p : params) p.zero_grad();
      num::Tape tape;
      double step_loss = 0.0;
      {
        num::TapeScope scope(tape);
        // One sense projection per distinct token of the batch.
        std::vector<std::size_t> batch_tokens;
        for (std::size_t b = start; b < end; ++b) {
          const auto& ex = examples[order[b]];
          batch_tokens.insert(batch_tokens.end(), ex.query.begin(), ex.query.end());
          for (const auto& doc : ex.docs) batch_tokens.insert(batch_tokens.end(), doc.begin(), doc.end());
        }
        batch_tokens.push_back(model.config().sep_token);
        const model::SenseTable table = model.sense_table(batch_tokens);
        num::Tensor total;
        for (std::size_t b = start; b < end; ++b) {
          const num::Tensor loss = list_loss(model, examples[order[b]], &table);
          total = total.defined() ? num::add(total, loss) : loss;
        }
        const num::Tensor mean_loss = num::scale(total, 1.0 / static_cast<double>(end - start));
        step_loss = mean_loss.item();
        tape.backward(mean_loss);
      }
      for (auto& p : params) {
        if (!p.has_grad()) continue;
        auto values = p.mutable_data();
        auto grad = p.grad();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= config.learning_rate * grad[i];
      }
      history.step_losses.push_back(step_loss);
      epoch_total += step_loss;
      ++steps;
    }
    history.epoch_losses.push_back(epoch_total / static_cast<double>(steps));
    history.epochs_done = epoch + 1;
    spdlog::info("epoch {}/{}: mean loss {:.6f}", epoch + 1, config.epochs, history.epoch_losses.back());
    if (on_epoch) on_epoch(epoch, history);
  }
  for (auto& p : params) p.zero_grad();
  return history;
}

double evaluate_loss(const model::Backpack& model, std::span<const TrainExample> examples) {
  if (examples.empty()) throw DomainError("evaluate_loss: empty dataset");
  const model::SenseTable table = model.sense_table();
  double total = 0.0;
  for (const auto& ex : examples) total += list_loss(model, ex, &table).item();
  return total / static_cast<double>(examples.size());
}

}  // namespace backrank::ranker
