// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/trec.hpp"

namespace backrank::corpus {

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

/// Okapi BM25 over an in-memory postings index.
///
///   score(q, d) = sum_t qtf(t) * idf(t) * tf(t,d) (k1 + 1) / (tf(t,d) + k1 (1 - b + b |d| / avgdl))
///   idf(t)      = max(0, ln((N - df(t) + 0.5) / (df(t) + 0.5)))
///
/// qtf counts repeated query terms. The IDF floor keeps every term's contribution
/// non-negative, so adding an occurrence of a query term never lowers a score.
class Bm25Index {
 public:
  explicit Bm25Index(std::span<const Document> docs);

  double idf(std::string_view term) const;
  double score(std::span<const std::string> query, std::size_t doc_index, const Bm25Params& params = {}) const;

  /// Top `top_n` documents with a positive score, descending, ties by doc id.
  /// A query with no indexed term yields an empty list.
  RankedList retrieve(const Query& query, std::size_t top_n = 100, const Bm25Params& params = {}) const;

  std::size_t num_documents() const noexcept { return doc_ids_.size(); }
  double average_length() const noexcept { return avg_len_; }

 private:
  struct Posting {
    std::size_t doc;
    std::size_t tf;
  };
  std::vector<std::string> doc_ids_;
  std::vector<std::size_t> doc_len_;
  double avg_len_ = 0.0;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
};

}  // namespace backrank::corpus
