// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "backrank/corpus/vocab.hpp"
#include "backrank/model/backpack.hpp"
#include "backrank/senses/sense_map.hpp"

namespace backrank::senses {

/// Opposite-attribute word pair resolved against a vocabulary.
struct PolarityPair {
  std::string negative_term;
  std::string positive_term;
  std::size_t negative_id = 0;
  std::size_t positive_id = 0;

  bool operator==(const PolarityPair&) const = default;
};

/// Mean per-sense cosine similarity across polarity pairs. More negative means
/// more sensitive to the attribute.
struct AttributeScores {
  std::vector<double> s;

  std::size_t size() const noexcept { return s.size(); }
  /// Sense indices ordered by ascending score; ties keep the lower index first.
  std::vector<std::size_t> ranking() const;
};

/// cos(C(x)_l, C(x')_l), sense index 0-based. A zero sense vector yields 0 and a warning.
double sense_similarity(const model::Backpack& model, std::size_t x, std::size_t x_prime, std::size_t sense);

/// Throws DomainError on an empty pair list.
AttributeScores attribute_scores(const model::Backpack& model, std::span<const PolarityPair> pairs);

/// Suppresses the m senses with the smallest scores (ties: lower index) with weight lambda.
SenseMap build_sense_map(const AttributeScores& scores, double lambda, std::size_t m = 2);

struct PolarityLexicon {
  std::vector<PolarityPair> pairs;
  std::size_t duplicates = 0;
  std::size_t dropped = 0;  // pairs with a token outside the vocabulary
};

/// One `negative positive` pair per line, `#` comments. Pairs are kept in file order;
/// repeats and pairs with out-of-vocabulary tokens are skipped with a warning.
/// A line without exactly two distinct terms raises ParseError with its line number.
PolarityLexicon parse_polarity_lexicon(std::istream& in, const std::string& source, const corpus::Vocab& vocab);
PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path, const corpus::Vocab& vocab);
/// Built-in English pair list (he/she, man/woman, him/her, his/hers, boy/girl,
/// father/mother, son/daughter, king/queen), filtered the same way.
PolarityLexicon default_polarity_lexicon(const corpus::Vocab& vocab);
std::string_view default_polarity_text();

}  // namespace backrank::senses
