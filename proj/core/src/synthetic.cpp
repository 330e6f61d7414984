// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/corpus/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "backrank/corpus/keyvalue.hpp"
#include "backrank/error.hpp"
#include "backrank/num/random.hpp"

namespace backrank::corpus {

namespace fs = std::filesystem;

void SynthConfig::validate() const {
  auto fail = [](const char* field, const std::string& why) { throw DomainError(fmt::format("{}: {}", field, why)); };
  if (num_queries == 0) fail("num_queries", "must be positive");
  if (docs_per_query == 0) fail("docs_per_query", "must be positive");
  if (relevant_per_query == 0 || relevant_per_query > docs_per_query) {
    fail("relevant_per_query", "must be in [1, docs_per_query]");
  }
  if (num_topics == 0 || num_topics > num_queries) fail("num_topics", "must be in [1, num_queries]");
  if (topic_words == 0) fail("topic_words", "must be positive");
  if (background_words == 0) fail("background_words", "must be positive");
  if (query_length == 0 || query_length > topic_words) fail("query_length", "must be in [1, topic_words]");
  if (doc_length == 0) fail("doc_length", "must be positive");
  if (!(topic_density >= 0.0 && topic_density <= 1.0)) fail("topic_density", "must be in [0, 1]");
  if (distractor_topic_max == 0 || distractor_topic_max > doc_length) {
    fail("distractor_topic_max", "must be in [1, doc_length]");
  }
  if (distractor_topic_max + noise_topic_tokens > doc_length) {
    fail("noise_topic_tokens", "distractor_topic_max + noise_topic_tokens exceeds doc_length");
  }
  if (!(skew >= 0.0 && skew <= 1.0)) fail("skew", "must be in [0, 1]");
  if (!(gender_rate >= 0.0 && gender_rate <= 1.0)) fail("gender_rate", "must be in [0, 1]");
  if (gender_repeats_min == 0 || gender_repeats_min > gender_repeats_max) {
    fail("gender_repeats_min", "must be in [1, gender_repeats_max]");
  }
  if (female_terms.empty()) fail("female_terms", "must not be empty");
  if (male_terms.empty()) fail("male_terms", "must not be empty");
}


SynthConfig read_synth_config(const fs::path& path) {
  SynthConfig cfg;
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
      {"num_queries", [&](auto& k, auto& v) { cfg.num_queries = parse_number<std::size_t>(k, v); }},
      {"docs_per_query", [&](auto& k, auto& v) { cfg.docs_per_query = parse_number<std::size_t>(k, v); }},
      {"relevant_per_query", [&](auto& k, auto& v) { cfg.relevant_per_query = parse_number<std::size_t>(k, v); }},
      {"num_topics", [&](auto& k, auto& v) { cfg.num_topics = parse_number<std::size_t>(k, v); }},
      {"topic_words", [&](auto& k, auto& v) { cfg.topic_words = parse_number<std::size_t>(k, v); }},
      {"background_words", [&](auto& k, auto& v) { cfg.background_words = parse_number<std::size_t>(k, v); }},
      {"query_length", [&](auto& k, auto& v) { cfg.query_length = parse_number<std::size_t>(k, v); }},
      {"doc_length", [&](auto& k, auto& v) { cfg.doc_length = parse_number<std::size_t>(k, v); }},
      {"topic_density", [&](auto& k, auto& v) { cfg.topic_density = parse_number<double>(k, v); }},
      {"distractor_topic_max", [&](auto& k, auto& v) { cfg.distractor_topic_max = parse_number<std::size_t>(k, v); }},
      {"noise_topic_tokens", [&](auto& k, auto& v) { cfg.noise_topic_tokens = parse_number<std::size_t>(k, v); }},
      {"skew", [&](auto& k, auto& v) { cfg.skew = parse_number<double>(k, v); }},
      {"gender_rate", [&](auto& k, auto& v) { cfg.gender_rate = parse_number<double>(k, v); }},
      {"favored_gender",
       [&](auto& k, auto& v) {
         if (v == "male") cfg.favored_gender = Gender::male;
         else if (v == "female") cfg.favored_gender = Gender::female;
         else throw DomainError(fmt::format("{}: expected 'male' or 'female', got '{}'", k, v));
       }},
      {"gender_repeats_min", [&](auto& k, auto& v) { cfg.gender_repeats_min = parse_number<std::size_t>(k, v); }},
      {"gender_repeats_max", [&](auto& k, auto& v) { cfg.gender_repeats_max = parse_number<std::size_t>(k, v); }},
      {"female_terms", [&](auto&, auto& v) { cfg.female_terms = split_list(v); }},
      {"male_terms", [&](auto&, auto& v) { cfg.male_terms = split_list(v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = parse_number<std::uint64_t>(k, v); }},
  };
  for (const auto& kv : read_key_values(path)) {
    auto it = setters.find(kv.key);
    if (it == setters.end()) throw DomainError(fmt::format("{}: unknown configuration key", kv.key));
    it->second(kv.key, kv.value);
  }
  cfg.validate();
  return cfg;
}

void write_synth_config(const fs::path& path, const SynthConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  out << "num_queries = " << cfg.num_queries << '\n'
      << "docs_per_query = " << cfg.docs_per_query << '\n'
      << "relevant_per_query = " << cfg.relevant_per_query << '\n'
      << "num_topics = " << cfg.num_topics << '\n'
      << "topic_words = " << cfg.topic_words << '\n'
      << "background_words = " << cfg.background_words << '\n'
      << "query_length = " << cfg.query_length << '\n'
      << "doc_length = " << cfg.doc_length << '\n'
      << fmt::format("topic_density = {}\n", cfg.topic_density)
      << "distractor_topic_max = " << cfg.distractor_topic_max << '\n'
      << "noise_topic_tokens = " << cfg.noise_topic_tokens << '\n'
      << fmt::format("skew = {}\n", cfg.skew) << fmt::format("gender_rate = {}\n", cfg.gender_rate)
      << "favored_gender = " << (cfg.favored_gender == Gender::male ? "male" : "female") << '\n'
      << "gender_repeats_min = " << cfg.gender_repeats_min << '\n'
      << "gender_repeats_max = " << cfg.gender_repeats_max << '\n'
      << "female_terms = " << fmt::format("{}", fmt::join(cfg.female_terms, ",")) << '\n'
      << "male_terms = " << fmt::format("{}", fmt::join(cfg.male_terms, ",")) << '\n'
      << "seed = " << cfg.seed << '\n';
}

namespace {

std::string topic_word(std::size_t topic, std::size_t word) { return fmt::format("t{}w{}", topic, word); }
std::string background_word(std::size_t word) { return fmt::format("bg{}", word); }

class Generator {
 public:
  explicit Generator(const SynthConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Collection run() {
    std::vector<std::vector<std::string>> topic_relevant_docs(cfg_.num_topics);

    Collection c;
    std::vector<Query> queries;
    for (std::size_t q = 0; q < cfg_.num_queries; ++q) {
      queries.push_back(Query{fmt::format("q{}", q + 1), make_query(q % cfg_.num_topics)});
    }

    std::size_t doc_counter = 0;
    for (std::size_t q = 0; q < cfg_.num_queries; ++q) {
      const std::size_t topic = q % cfg_.num_topics;
      for (std::size_t i = 0; i < cfg_.docs_per_query; ++i) {
        const bool relevant = i < cfg_.relevant_per_query;
        Document doc{fmt::format("d{}", ++doc_counter),
                     relevant ? relevant_tokens(topic) : distractor_tokens(topic, queries[q].tokens)};
        inject_gender(doc.tokens, relevant);
        if (relevant) topic_relevant_docs[topic].push_back(doc.id);
        c.add_document(std::move(doc));
      }
    }

    Qrels qrels;
    for (std::size_t q = 0; q < cfg_.num_queries; ++q) {
      for (const auto& doc_id : topic_relevant_docs[q % cfg_.num_topics]) qrels.set(queries[q].id, doc_id, 1);
    }
    for (auto& q : queries) c.add_query(std::move(q));
    c.set_qrels(std::move(qrels));
    return c;
  }

 private:
  std::vector<std::string> make_query(std::size_t topic) {
    std::vector<std::size_t> words(cfg_.topic_words);
    for (std::size_t i = 0; i < words.size(); ++i) words[i] = i;
    rng_.shuffle(std::span<std::size_t>(words));
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < cfg_.query_length; ++i) tokens.push_back(topic_word(topic, words[i]));
    return tokens;
  }

  std::string random_topic_word(std::size_t topic) { return topic_word(topic, rng_.below(cfg_.topic_words)); }
  std::string random_background() { return background_word(rng_.below(cfg_.background_words)); }

  std::vector<std::string> relevant_tokens(std::size_t topic) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < cfg_.doc_length; ++i) {
      tokens.push_back(rng_.bernoulli(cfg_.topic_density) ? random_topic_word(topic) : random_background());
    }
    return tokens;
  }

  std::vector<std::string> distractor_tokens(std::size_t topic, const std::vector<std::string>& query) {
    std::vector<std::string> tokens;
    const std::size_t on_topic = 1 + rng_.below(cfg_.distractor_topic_max);
    tokens.push_back(query[rng_.below(query.size())]);
    for (std::size_t i = 1; i < on_topic; ++i) tokens.push_back(random_topic_word(topic));
    for (std::size_t i = 0; i < cfg_.noise_topic_tokens; ++i) {
      tokens.push_back(random_topic_word(rng_.below(cfg_.num_topics)));
    }
    while (tokens.size() < cfg_.doc_length) tokens.push_back(random_background());
    rng_.shuffle(std::span<std::string>(tokens));
    return tokens;
  }

  void inject_gender(std::vector<std::string>& tokens, bool relevant) {
    if (!rng_.bernoulli(cfg_.gender_rate)) return;
    const Gender other = cfg_.favored_gender == Gender::male ? Gender::female : Gender::male;
    const bool keep = rng_.bernoulli(cfg_.skew);
    const Gender g = relevant ? (keep ? cfg_.favored_gender : other) : (keep ? other : cfg_.favored_gender);
    const auto& terms = g == Gender::female ? cfg_.female_terms : cfg_.male_terms;
    const std::string& term = terms[rng_.below(terms.size())];
    const std::size_t repeats =
        cfg_.gender_repeats_min + rng_.below(cfg_.gender_repeats_max - cfg_.gender_repeats_min + 1);
    for (std::size_t r = 0; r < repeats; ++r) {
      const std::size_t at = rng_.below(tokens.size() + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), term);
    }
  }

  const SynthConfig& cfg_;
  num::Rng rng_;
};

}  // namespace

Collection generate_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  return Generator(cfg).run();
}

}  // namespace backrank::corpus
