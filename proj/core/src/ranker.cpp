// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/ranker/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/bm25.hpp"
#include "backrank/error.hpp"
#include "backrank/num/ops.hpp"

namespace backrank::ranker {

namespace {

void check_labels(std::span<const double> labels) {
  bool any = false;
  for (double y : labels) {
    if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError(fmt::format("relevance label {} is not >= 0", y));
    any = any || y > 0.0;
  }
  if (!any) throw DomainError("listwise loss needs at least one positive relevance label");
}

}  // namespace

num::Tensor listwise_loss(const num::Tensor& labels, const num::Tensor& scores) {
  if (labels.rank() != 1 || scores.rank() != 1 || labels.size() != scores.size()) {
    throw ShapeError(fmt::format("listwise_loss: labels {} vs scores {}", num::shape_string(labels.shape()),
                                 num::shape_string(scores.shape())));
  }
  check_labels(labels.data());
  return num::scale(num::sum(num::mul(labels, num::log_softmax(scores, 0))), -1.0);
}

double listwise_loss(std::span<const double> labels, std::span<const double> scores) {
  return listwise_loss(num::Tensor({labels.size()}, {labels.begin(), labels.end()}),
                       num::Tensor({scores.size()}, {scores.begin(), scores.end()}))
      .item();
}

RankedList rank_by_scores(std::string query_id, std::span<const std::string> ids, std::span<const double> scores) {
  if (ids.empty()) throw DomainError(fmt::format("query '{}': no candidates to rank", query_id));
  if (ids.size() != scores.size()) throw ShapeError("rank_by_scores: ids and scores differ in length");
  std::set<std::string_view> seen;
  RankedList list{std::move(query_id), {}};
  list.docs.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen.insert(ids[i]).second) throw DomainError(fmt::format("duplicate candidate '{}'", ids[i]));
    list.docs.push_back({ids[i], scores[i]});
  }
  corpus::sort_ranked(list.docs);
  return list;
}

RankedList rank(const model::Backpack& model, std::string query_id, std::span<const std::size_t> query,
                std::span<const Candidate> candidates, const senses::SenseMap* map,
                const model::SenseTable* table) {
  if (candidates.empty()) throw DomainError(fmt::format("query '{}': no candidates to rank", query_id));
  std::vector<std::string> ids;
  std::vector<double> scores;
  ids.reserve(candidates.size());
  scores.reserve(candidates.size());
  for (const auto& c : candidates) {
    ids.push_back(c.id);
    scores.push_back(model.relevance_logit(model.pack(query, c.tokens), map, table).item());
  }
  return rank_by_scores(std::move(query_id), ids, scores);
}

std::vector<RankedList> bm25_candidates(const corpus::Collection& collection, std::size_t depth) {
  const corpus::Bm25Index index(collection.documents());
  std::vector<RankedList> out;
  out.reserve(collection.queries().size());
  for (const auto& q : collection.queries()) out.push_back(index.retrieve(q, depth));
  return out;
}

std::vector<RankedList> rerank(const model::Backpack& model, const corpus::Vocab& vocab,
                               const corpus::Collection& collection, std::span<const RankedList> candidates,
                               const senses::SenseMap* map) {
  const model::SenseTable table = model.sense_table();
  std::vector<RankedList> out;
  out.reserve(candidates.size());
  std::size_t missing = 0;
  for (const auto& list : candidates) {
    const auto* query = collection.find_query(list.query_id);
    if (query == nullptr) throw DomainError(fmt::format("run query '{}' is not in the collection", list.query_id));
    std::vector<Candidate> cands;
    cands.reserve(list.docs.size());
    for (const auto& d : list.docs) {
      const auto* doc = collection.find_document(d.doc_id);
      if (doc == nullptr) {
        ++missing;
        continue;
      }
      cands.push_back({doc->id, vocab.encode(doc->tokens)});
    }
    if (cands.empty()) {
      out.push_back({list.query_id, {}});
      continue;
    }
    out.push_back(rank(model, list.query_id, vocab.encode(query->tokens), cands, map, &table));
  }
  if (missing > 0) spdlog::warn("{} candidate document(s) not found in the collection were skipped", missing);
  return out;
}

}  // namespace backrank::ranker
