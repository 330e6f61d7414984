// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "backrank/corpus/collection.hpp"

namespace backrank::corpus {

enum class Gender { female, male };

/// Parameters of the gender-skewed synthetic retrieval collection.
///
/// Queries are drawn from topics (round robin, so each topic gets
/// num_queries / num_topics of them). For every query the generator writes
/// docs_per_query documents: `relevant_per_query` topic-dense documents and the
/// rest distractors that share one query word plus a few topic words but are
/// mostly background vocabulary. A document is relevant to every query of its
/// topic, so relevance is topical.
///
/// Gender terms are injected independently of content: with probability
/// `gender_rate` a document gets `gender_repeats_min..max` copies of one gender
/// term. A relevant document gets the favored gender's term with probability
/// `skew`, a non-relevant one gets the other gender's term with probability
/// `skew`. skew = 0.5 therefore carries no gender/relevance correlation.
struct SynthConfig {
  std::size_t num_queries = 500;
  std::size_t docs_per_query = 20;
  std::size_t relevant_per_query = 1;
  std::size_t num_topics = 125;
  std::size_t topic_words = 8;
  std::size_t background_words = 400;
  std::size_t query_length = 3;
  std::size_t doc_length = 20;
  double topic_density = 0.5;        // share of a relevant document's tokens drawn from its topic
  std::size_t distractor_topic_max = 3;  // topic tokens in a distractor: 1..max, the first a query word
  std::size_t noise_topic_tokens = 2;    // tokens of random other topics in a distractor
  double skew = 0.9;
  double gender_rate = 1.0;
  Gender favored_gender = Gender::male;
  std::size_t gender_repeats_min = 2;
  std::size_t gender_repeats_max = 3;
  std::vector<std::string> female_terms{"she", "woman", "her"};
  std::vector<std::string> male_terms{"he", "man", "him"};
  std::uint64_t seed = 1;

  /// Throws DomainError whose message starts with the offending field name.
  void validate() const;
};

/// Flat `key = value` file, `#` comments. Unknown keys and bad values raise
/// DomainError naming the key; a missing file raises std::runtime_error.
SynthConfig read_synth_config(const std::filesystem::path& path);
void write_synth_config(const std::filesystem::path& path, const SynthConfig& cfg);

/// Deterministic under cfg.seed.
Collection generate_synthetic(const SynthConfig& cfg);

}  // namespace backrank::corpus
