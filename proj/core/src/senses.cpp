// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/senses/senses.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/error.hpp"
#include "backrank/num/ops.hpp"

namespace backrank::senses {

std::vector<std::size_t> AttributeScores::ranking() const {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) { return s[a] < s[b]; });
  return order;
}

namespace {

std::vector<double> sense_column(const num::Tensor& senses, std::size_t sense) {
  const std::size_t d = senses.rows();
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = senses(i, sense);
  return v;
}

double column_similarity(const num::Tensor& a, const num::Tensor& b, std::size_t sense, std::size_t x,
                         std::size_t x_prime) {
  const auto u = sense_column(a, sense);
  const auto v = sense_column(b, sense);
  auto is_zero = [](const std::vector<double>& w) {
    return std::all_of(w.begin(), w.end(), [](double e) { return e == 0.0; });
  };
  if (is_zero(u) || is_zero(v)) {
    spdlog::warn("sense {} of token {} or {} is the zero vector; similarity taken as 0", sense, x, x_prime);
    return 0.0;
  }
  return num::cosine_similarity(u, v);
}

}  // namespace

double sense_similarity(const model::Backpack& model, std::size_t x, std::size_t x_prime, std::size_t sense) {
  if (sense >= model.num_senses()) {
    throw DomainError(fmt::format("sense index {} outside [0, {})", sense, model.num_senses()));
  }
  return column_similarity(model.sense_vectors(x), model.sense_vectors(x_prime), sense, x, x_prime);
}

AttributeScores attribute_scores(const model::Backpack& model, std::span<const PolarityPair> pairs) {
  if (pairs.empty()) throw DomainError("attribute_scores: no polarity pairs");
  const std::size_t k = model.num_senses();
  AttributeScores scores{std::vector<double>(k, 0.0)};
  for (const auto& pair : pairs) {
    const num::Tensor neg = model.sense_vectors(pair.negative_id);
    const num::Tensor pos = model.sense_vectors(pair.positive_id);
    for (std::size_t l = 0; l < k; ++l) {
      scores.s[l] += column_similarity(neg, pos, l, pair.negative_id, pair.positive_id);
    }
  }
  for (double& v : scores.s) v /= static_cast<double>(pairs.size());
  return scores;
}

SenseMap build_sense_map(const AttributeScores& scores, double lambda, std::size_t m) {
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw DomainError(fmt::format("lambda must be in (0, 1], got {}", lambda));
  }
  if (m > scores.size()) {
    throw DomainError(fmt::format("cannot suppress {} senses of {}", m, scores.size()));
  }
  SenseMap map = SenseMap::identity(scores.size());
  map.lambda = lambda;
  const auto order = scores.ranking();
  map.suppressed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(map.suppressed.begin(), map.suppressed.end());
  for (std::size_t l : map.suppressed) map.weights[l] = lambda;
  return map;
}

PolarityLexicon parse_polarity_lexicon(std::istream& in, const std::string& source, const corpus::Vocab& vocab) {
  PolarityLexicon lexicon;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> terms;
    for (std::string t; fields >> t;) terms.push_back(std::move(t));
    if (terms.empty()) continue;
    if (terms.size() != 2) {
      throw ParseError(source, line_no, fmt::format("expected 'negative positive', got {} fields", terms.size()));
    }
    if (terms[0] == terms[1]) throw ParseError(source, line_no, "pair terms must differ");
    if (!seen.emplace(terms[0], terms[1]).second) {
      ++lexicon.duplicates;
      spdlog::warn("{}:{}: duplicate pair '{} {}' ignored", source, line_no, terms[0], terms[1]);
      continue;
    }
    const auto neg = vocab.find(terms[0]);
    const auto pos = vocab.find(terms[1]);
    if (!neg || !pos) {
      ++lexicon.dropped;
      spdlog::debug("{}:{}: pair '{} {}' has a token outside the vocabulary; dropped", source, line_no, terms[0],
                   terms[1]);
      continue;
    }
    lexicon.pairs.push_back({terms[0], terms[1], *neg, *pos});
  }
  if (lexicon.dropped > 0) spdlog::warn("{}: {} polarity pair(s) dropped as out of vocabulary", source, lexicon.dropped);
  return lexicon;
}

PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path, const corpus::Vocab& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}' for reading", path.string()));
  return parse_polarity_lexicon(in, path.string(), vocab);
}

std::string_view default_polarity_text() {
  return "he she\n"
         "man woman\n"
         "him her\n"
         "his hers\n"
         "boy girl\n"
         "father mother\n"
         "son daughter\n"
         "king queen\n";
}

PolarityLexicon default_polarity_lexicon(const corpus::Vocab& vocab) {
  std::istringstream in{std::string(default_polarity_text())};
  return parse_polarity_lexicon(in, "<built-in lexicon>", vocab);
}

}  // namespace backrank::senses
