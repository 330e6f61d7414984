// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/metrics/metrics.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/error.hpp"

namespace backrank::metrics {

void GenderLexicon::validate() const {
  if (female.empty() || male.empty()) throw DomainError("gender lexicon: both term sets must be non-empty");
  for (const auto& t : female) {
    if (male.count(t)) throw DomainError(fmt::format("gender lexicon: '{}' is listed as female and male", t));
  }
}

bool GenderLexicon::contains(std::string_view token) const {
  return female.find(token) != female.end() || male.find(token) != male.end();
}

GenderLexicon GenderLexicon::swapped() const { return GenderLexicon{male, female}; }

namespace {

std::map<std::string_view, std::size_t> lexicon_counts(std::span<const std::string> doc,
                                                       const std::set<std::string, std::less<>>& terms) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto& tok : doc) {
    if (terms.find(tok) != terms.end()) ++counts[tok];
  }
  return counts;
}

}  // namespace

double mag_tf(std::span<const std::string> doc, const std::set<std::string, std::less<>>& terms,
              const MagnitudeOptions& opts) {
  if (!(opts.log_base > 0.0) || opts.log_base == 1.0) throw DomainError("mag_tf: log base must be positive and != 1");
  const double log_base = std::log(opts.log_base);
  double total = 0.0;
  for (const auto& [term, count] : lexicon_counts(doc, terms)) {
    const double c = static_cast<double>(count);
    total += std::log(opts.tf_log_one_plus ? 1.0 + c : c) / log_base;
  }
  return total;
}

double mag_bool(std::span<const std::string> doc, const std::set<std::string, std::less<>>& terms) {
  return std::any_of(doc.begin(), doc.end(), [&](const std::string& t) { return terms.find(t) != terms.end(); })
             ? 1.0
             : 0.0;
}

double gender_balance(std::span<const std::string> doc, const GenderLexicon& lexicon, Magnitude variant,
                      const MagnitudeOptions& opts) {
  if (variant == Magnitude::tf) return mag_tf(doc, lexicon.female, opts) - mag_tf(doc, lexicon.male, opts);
  return mag_bool(doc, lexicon.female) - mag_bool(doc, lexicon.male);
}

namespace {

std::size_t effective_cutoff(std::size_t available, std::size_t t) {
  if (t == 0) throw DomainError("rank cutoff must be at least 1");
  if (available < t) {
    spdlog::warn("ranked list has {} documents, cutoff {}; using the available prefix", available, t);
    return available;
  }
  return t;
}

}  // namespace

double rab(std::span<const double> balances, std::size_t t) {
  const std::size_t n = effective_cutoff(balances.size(), t);
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += balances[i];
  return total / static_cast<double>(n);
}

double arab(std::span<const double> balances, std::size_t t) {
  const std::size_t n = effective_cutoff(balances.size(), t);
  if (n == 0) return 0.0;
  double prefix = 0.0;
  double total = 0.0;
  for (std::size_t x = 1; x <= n; ++x) {
    prefix += balances[x - 1];
    total += prefix / static_cast<double>(x);
  }
  return total / static_cast<double>(n);
}

std::vector<double> balances(std::span<const std::vector<std::string>> ranked_docs, const GenderLexicon& lexicon,
                             Magnitude variant, const MagnitudeOptions& opts) {
  std::vector<double> out;
  out.reserve(ranked_docs.size());
  for (const auto& doc : ranked_docs) out.push_back(gender_balance(doc, lexicon, variant, opts));
  return out;
}

double rab(std::span<const std::vector<std::string>> ranked_docs, std::size_t t, const GenderLexicon& lexicon,
           Magnitude variant, const MagnitudeOptions& opts) {
  return rab(balances(ranked_docs, lexicon, variant, opts), t);
}

double arab(std::span<const std::vector<std::string>> ranked_docs, std::size_t t, const GenderLexicon& lexicon,
            Magnitude variant, const MagnitudeOptions& opts) {
  return arab(balances(ranked_docs, lexicon, variant, opts), t);
}

double mrr_at_k(std::span<const std::string> ranked_ids, const corpus::Qrels& qrels, std::string_view query_id,
                std::size_t k) {
  if (k == 0) throw DomainError("mrr_at_k: k must be at least 1");
  if (!qrels.has_query(query_id)) {
    spdlog::warn("query '{}' has no relevance judgements; scoring it 0", query_id);
    return 0.0;
  }
  const std::size_t n = std::min(k, ranked_ids.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (qrels.grade(query_id, ranked_ids[i]) > 0) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double ndcg_at_k(std::span<const std::string> ranked_ids, const corpus::Qrels& qrels, std::string_view query_id,
                 std::size_t k) {
  if (k == 0) throw DomainError("ndcg_at_k: k must be at least 1");
  if (!qrels.has_query(query_id)) {
    spdlog::warn("query '{}' has no relevance judgements; scoring it 0", query_id);
    return 0.0;
  }
  auto gain = [](int grade) { return std::exp2(static_cast<double>(grade)) - 1.0; };
  auto discount = [](std::size_t rank) { return std::log2(static_cast<double>(rank) + 1.0); };

  std::vector<int> ideal = qrels.grades_for(query_id);
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  double idcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ideal.size()); ++i) idcg += gain(ideal[i]) / discount(i + 1);
  if (idcg == 0.0) return 0.0;

  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ranked_ids.size()); ++i) {
    dcg += gain(qrels.grade(query_id, ranked_ids[i])) / discount(i + 1);
  }
  return dcg / idcg;
}

QueryFilterResult filter_gendered_queries(std::span<const corpus::Query> queries, const GenderLexicon& lexicon) {
  QueryFilterResult result;
  for (const auto& q : queries) {
    const bool gendered =
        std::any_of(q.tokens.begin(), q.tokens.end(), [&](const std::string& t) { return lexicon.contains(t); });
    if (gendered) {
      ++result.dropped;
    } else {
      result.kept.push_back(q);
    }
  }
  return result;
}

namespace {

std::vector<const corpus::RankedList*> by_query_id(std::span<const corpus::RankedList> run) {
  std::vector<const corpus::RankedList*> order;
  for (const auto& list : run) order.push_back(&list);
  std::sort(order.begin(), order.end(),
            [](const corpus::RankedList* a, const corpus::RankedList* b) { return a->query_id < b->query_id; });
  return order;
}

}  // namespace

std::vector<EffectivenessRow> evaluate_effectiveness(std::span<const corpus::RankedList> run,
                                                     const corpus::Qrels& qrels, std::span<const std::size_t> cutoffs) {
  const auto order = by_query_id(run);
  std::vector<EffectivenessRow> rows;
  for (std::size_t cutoff : cutoffs) {
    EffectivenessRow row{cutoff, 0.0, 0.0, order.size()};
    for (const auto* list : order) {
      const auto ids = list->doc_ids();
      row.mrr += mrr_at_k(ids, qrels, list->query_id, cutoff);
      row.ndcg += ndcg_at_k(ids, qrels, list->query_id, cutoff);
    }
    if (!order.empty()) {
      row.mrr /= static_cast<double>(order.size());
      row.ndcg /= static_cast<double>(order.size());
    }
    rows.push_back(row);
  }
  return rows;
}

const BiasRow& BiasReport::at(Magnitude variant, std::size_t cutoff) const {
  for (const auto& r : rows) {
    if (r.variant == variant && r.cutoff == cutoff) return r;
  }
  throw DomainError(fmt::format("bias report has no row for {} @ {}", variant_name(variant), cutoff));
}

BiasReport evaluate_bias(std::span<const corpus::RankedList> run, const corpus::Collection& collection,
                         const GenderLexicon& lexicon, std::span<const std::size_t> cutoffs,
                         std::span<const Magnitude> variants, const MagnitudeOptions& opts) {
  lexicon.validate();
  const auto order = by_query_id(run);
  BiasReport report;
  for (Magnitude variant : variants) {
    std::vector<std::vector<double>> per_query;
    per_query.reserve(order.size());
    for (const auto* list : order) {
      std::vector<double> b;
      b.reserve(list->docs.size());
      for (const auto& d : list->docs) {
        const auto* doc = collection.find_document(d.doc_id);
        b.push_back(doc ? gender_balance(doc->tokens, lexicon, variant, opts) : 0.0);
      }
      per_query.push_back(std::move(b));
    }
    for (std::size_t cutoff : cutoffs) {
      BiasRow row{variant, cutoff, 0.0, 0.0, order.size()};
      for (const auto& b : per_query) {
        row.rab += rab(b, cutoff);
        row.arab += arab(b, cutoff);
      }
      if (!per_query.empty()) {
        row.rab /= static_cast<double>(per_query.size());
        row.arab /= static_cast<double>(per_query.size());
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

const char* variant_name(Magnitude variant) { return variant == Magnitude::tf ? "tf" : "bool"; }

}  // namespace backrank::metrics
