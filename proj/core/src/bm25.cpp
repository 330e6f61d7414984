// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/corpus/bm25.hpp"

#include <algorithm>
#include <cmath>

namespace backrank::corpus {

namespace {

std::map<std::string_view, std::size_t> term_counts(std::span<const std::string> tokens) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

double term_weight(double idf, double tf, double len, double avg_len, const Bm25Params& p) {
  const double norm = p.k1 * (1.0 - p.b + p.b * len / avg_len);
  return idf * tf * (p.k1 + 1.0) / (tf + norm);
}

}  // namespace

Bm25Index::Bm25Index(std::span<const Document> docs) {
  std::size_t total = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    doc_ids_.push_back(docs[d].id);
    doc_len_.push_back(docs[d].tokens.size());
    total += docs[d].tokens.size();
    for (const auto& [term, tf] : term_counts(docs[d].tokens)) {
      auto it = postings_.find(term);
      if (it == postings_.end()) it = postings_.emplace(std::string(term), std::vector<Posting>{}).first;
      it->second.push_back(Posting{d, tf});
    }
  }
  avg_len_ = docs.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs.size());
}

double Bm25Index::idf(std::string_view term) const {
  auto it = postings_.find(term);
  const double df = it == postings_.end() ? 0.0 : static_cast<double>(it->second.size());
  const double n = static_cast<double>(doc_ids_.size());
  return std::max(0.0, std::log((n - df + 0.5) / (df + 0.5)));
}

double Bm25Index::score(std::span<const std::string> query, std::size_t doc_index, const Bm25Params& params) const {
  double s = 0.0;
  for (const auto& [term, qtf] : term_counts(query)) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    auto p = std::lower_bound(it->second.begin(), it->second.end(), doc_index,
                              [](const Posting& post, std::size_t d) { return post.doc < d; });
    if (p == it->second.end() || p->doc != doc_index) continue;
    s += static_cast<double>(qtf) * term_weight(idf(term), static_cast<double>(p->tf),
                                                static_cast<double>(doc_len_[doc_index]), avg_len_, params);
  }
  return s;
}

RankedList Bm25Index::retrieve(const Query& query, std::size_t top_n, const Bm25Params& params) const {
  std::vector<double> acc(doc_ids_.size(), 0.0);
  std::vector<char> seen(doc_ids_.size(), 0);
  std::vector<std::size_t> touched;
  for (const auto& [term, qtf] : term_counts(query.tokens)) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double w = idf(term);
    for (const auto& post : it->second) {
      if (!seen[post.doc]) {
        seen[post.doc] = 1;
        touched.push_back(post.doc);
      }
      acc[post.doc] += static_cast<double>(qtf) * term_weight(w, static_cast<double>(post.tf),
                                                              static_cast<double>(doc_len_[post.doc]), avg_len_, params);
    }
  }
  RankedList out{query.id, {}};
  for (std::size_t d : touched) {
    if (acc[d] > 0.0) out.docs.push_back(ScoredDoc{doc_ids_[d], acc[d]});
  }
  sort_ranked(out.docs);
  if (out.docs.size() > top_n) out.docs.resize(top_n);
  return out;
}

}  // namespace backrank::corpus
