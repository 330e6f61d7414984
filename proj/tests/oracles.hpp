// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

// Direct-definition evaluators used to cross-check the metrics library. Written
// independently of metrics.cpp; only the summation order is shared so that the
// bias values can be compared bit for bit.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "backrank/num/random.hpp"

namespace backrank::testing {

using Doc = std::vector<std::string>;
using TermSet = std::set<std::string, std::less<>>;

inline double oracle_mag(const Doc& doc, const TermSet& terms, bool boolean) {
  double total = 0.0;
  bool any = false;
  for (const auto& w : terms) {
    const auto c = std::count(doc.begin(), doc.end(), w);
    if (c > 0) {
      any = true;
      total += std::log(static_cast<double>(c));
    }
  }
  return boolean ? (any ? 1.0 : 0.0) : total;
}

inline double oracle_balance(const Doc& doc, const TermSet& female, const TermSet& male, bool boolean) {
  return oracle_mag(doc, female, boolean) - oracle_mag(doc, male, boolean);
}

// RaB_t(q) = (1/t) sum_{i<=t} (mag_f(d_i) - mag_m(d_i)), over the available prefix.
inline double oracle_rab(const std::vector<Doc>& ranked, std::size_t t, const TermSet& f, const TermSet& m,
                         bool boolean) {
  const std::size_t n = std::min(t, ranked.size());
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += oracle_balance(ranked[i], f, m, boolean);
  return sum / static_cast<double>(n);
}

// ARaB_t(q) = (1/t) sum_{x<=t} RaB_x(q).
inline double oracle_arab(const std::vector<Doc>& ranked, std::size_t t, const TermSet& f, const TermSet& m,
                          bool boolean) {
  const std::size_t n = std::min(t, ranked.size());
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t x = 1; x <= n; ++x) sum += oracle_rab(ranked, x, f, m, boolean);
  return sum / static_cast<double>(n);
}

// grades: the judged grade of each ranked document, 0 when unjudged.
inline double oracle_mrr(const std::vector<int>& grades, std::size_t k) {
  for (std::size_t i = 0; i < grades.size() && i < k; ++i) {
    if (grades[i] > 0) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

inline double oracle_ndcg(const std::vector<int>& grades, std::vector<int> judged, std::size_t k) {
  auto dcg = [k](const std::vector<int>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size() && i < k; ++i) {
      s += (std::pow(2.0, g[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
    }
    return s;
  };
  std::sort(judged.begin(), judged.end(), std::greater<>());
  const double ideal = dcg(judged);
  return ideal == 0.0 ? 0.0 : dcg(grades) / ideal;
}

// Random ranked list of short documents mixing lexicon terms and filler.
inline std::vector<Doc> random_ranked_docs(num::Rng& rng, std::size_t n) {
  static const std::vector<std::string> words{"she", "woman", "her", "he", "man", "him", "the", "river", "bank",
                                              "road", "code", "hers"};
  std::vector<Doc> docs(n);
  for (auto& d : docs) {
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) d.push_back(words[rng.below(words.size())]);
  }
  return docs;
}

}  // namespace backrank::testing
