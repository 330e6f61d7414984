// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/trec.hpp"

namespace backrank::metrics {

/// Female and male term sets used for document gender magnitudes.
struct GenderLexicon {
  std::set<std::string, std::less<>> female{"she", "woman", "her"};
  std::set<std::string, std::less<>> male{"he", "man", "him"};

  /// Throws DomainError if a set is empty or the sets overlap.
  void validate() const;
  bool contains(std::string_view token) const;
  /// Same lexicon with the roles of the two sets exchanged.
  GenderLexicon swapped() const;
};

enum class Magnitude { tf, boolean };

struct MagnitudeOptions {
  /// Base of the logarithm in the TF magnitude. Natural log by default.
  double log_base = std::numbers::e;
  /// Use log(1 + count) instead of log(count) for present terms.
  bool tf_log_one_plus = false;
};

/// Sum over terms present in the document of log(count(term)).
double mag_tf(std::span<const std::string> doc, const std::set<std::string, std::less<>>& terms,
              const MagnitudeOptions& opts = {});
/// 1 if any term occurs in the document, else 0.
double mag_bool(std::span<const std::string> doc, const std::set<std::string, std::less<>>& terms);

/// mag_f(doc) - mag_m(doc) under the chosen variant.
double gender_balance(std::span<const std::string> doc, const GenderLexicon& lexicon, Magnitude variant,
                      const MagnitudeOptions& opts = {});

/// RaB_t: mean of the first t per-document balances. A list shorter than t is
/// evaluated over what is there (with a warning); an empty list gives 0.
double rab(std::span<const double> balances, std::size_t t);
/// ARaB_t: mean of RaB_1 .. RaB_t.
double arab(std::span<const double> balances, std::size_t t);

/// Per-document balances of a ranked list of token sequences.
std::vector<double> balances(std::span<const std::vector<std::string>> ranked_docs, const GenderLexicon& lexicon,
                             Magnitude variant, const MagnitudeOptions& opts = {});

double rab(std::span<const std::vector<std::string>> ranked_docs, std::size_t t, const GenderLexicon& lexicon,
           Magnitude variant, const MagnitudeOptions& opts = {});
double arab(std::span<const std::vector<std::string>> ranked_docs, std::size_t t, const GenderLexicon& lexicon,
            Magnitude variant, const MagnitudeOptions& opts = {});

/// Reciprocal rank of the first relevant (grade > 0) document within the top k.
/// A query without judgements scores 0 and logs a warning.
double mrr_at_k(std::span<const std::string> ranked_ids, const corpus::Qrels& qrels, std::string_view query_id,
                std::size_t k = 10);
/// DCG@k / IDCG@k with gain 2^rel - 1 and discount log2(rank + 1). 0 without relevant documents.
double ndcg_at_k(std::span<const std::string> ranked_ids, const corpus::Qrels& qrels, std::string_view query_id,
                 std::size_t k = 10);

struct QueryFilterResult {
  std::vector<corpus::Query> kept;
  std::size_t dropped = 0;
};

/// Drops every query that contains a female or male lexicon term.
QueryFilterResult filter_gendered_queries(std::span<const corpus::Query> queries, const GenderLexicon& lexicon);

struct EffectivenessRow {
  std::size_t cutoff = 10;
  double mrr = 0.0;
  double ndcg = 0.0;
  std::size_t queries = 0;
};

/// Mean MRR@c and NDCG@c over the run's queries, summed in ascending query id order.
std::vector<EffectivenessRow> evaluate_effectiveness(std::span<const corpus::RankedList> run,
                                                     const corpus::Qrels& qrels, std::span<const std::size_t> cutoffs);

struct BiasRow {
  Magnitude variant = Magnitude::tf;
  std::size_t cutoff = 10;
  double rab = 0.0;
  double arab = 0.0;
  std::size_t queries = 0;
};

/// Mean RaB_t / ARaB_t per variant and cutoff over the evaluated queries.
struct BiasReport {
  std::vector<BiasRow> rows;

  const BiasRow& at(Magnitude variant, std::size_t cutoff) const;
};

/// Resolves each ranked document through `collection`; unknown ids count as
/// gender-free. Queries are aggregated in ascending id order.
BiasReport evaluate_bias(std::span<const corpus::RankedList> run, const corpus::Collection& collection,
                         const GenderLexicon& lexicon, std::span<const std::size_t> cutoffs,
                         std::span<const Magnitude> variants, const MagnitudeOptions& opts = {});

const char* variant_name(Magnitude variant);

}  // namespace backrank::metrics
