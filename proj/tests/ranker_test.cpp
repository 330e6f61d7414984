// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "backrank/corpus/synthetic.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/error.hpp"
#include "backrank/num/gradcheck.hpp"
#include "backrank/num/ops.hpp"
#include "backrank/ranker/ranker.hpp"
#include "backrank/ranker/sweep.hpp"
#include "support.hpp"

namespace backrank::ranker {
namespace {

using model::Backpack;
using num::Rng;
using num::Tensor;
using senses::SenseMap;

TEST(ListwiseLoss, Examples) {
  EXPECT_EQ(listwise_loss(std::vector<double>{1}, std::vector<double>{3.2}), 0.0);
  EXPECT_NEAR(listwise_loss(std::vector<double>{1, 0}, std::vector<double>{0, 0}), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(listwise_loss(std::vector<double>{1, 0, 0}, std::vector<double>{std::numbers::ln2, 0, 0}),
              std::numbers::ln2, 1e-15);
  const Tensor t = listwise_loss(Tensor::vector({0, 2}), Tensor::vector({1, 1}));
  EXPECT_NEAR(t.item(), 2 * std::numbers::ln2, 1e-15);
}

TEST(ListwiseLoss, Errors) {
  EXPECT_THROW(listwise_loss(std::vector<double>{0, 0}, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(listwise_loss(std::vector<double>{1, -1}, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(listwise_loss(std::vector<double>{1}, std::vector<double>{1, 2}), ShapeError);
}

TEST(ListwiseLoss, GradientMatchesFiniteDifferences) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + rng.below(7);
    std::vector<double> y(m);
    for (double& v : y) v = rng.bernoulli(0.4) ? static_cast<double>(rng.below(3)) : 0.0;
    y[rng.below(m)] = 1.0;
    const Tensor labels = Tensor::vector(y);
    const Tensor scores = testing::random_tensor(rng, {m}, 2.0);
    EXPECT_LE(num::finite_diff_check([&](const Tensor& s) { return listwise_loss(labels, s); }, scores, 1e-6), 1e-5);
  }
}

TEST(ListwiseLoss, NonNegative) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.below(6);
    std::vector<double> y(m), s(m);
    for (std::size_t j = 0; j < m; ++j) {
      y[j] = rng.uniform();
      s[j] = rng.normal(0.0, 5.0);
    }
    EXPECT_GE(listwise_loss(y, s), 0.0);
  }
}

TrainExample toy_example() {
  return {"q1", {3, 4}, {"d1", "d2", "d3", "d4"}, {{5, 6, 3}, {7, 8, 9}, {10, 11, 7}, {6, 9, 8, 5}}, {1, 0, 0, 0}};
}

TEST(Train, OverfitsSingleExample) {
  Backpack m(testing::tiny_config(), 1);
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.batch_size = 1;
  cfg.learning_rate = 0.1;
  const std::vector<TrainExample> ex{toy_example()};
  const TrainHistory h = train(m, ex, cfg);
  ASSERT_EQ(h.step_losses.size(), 500u);
  EXPECT_LT(evaluate_loss(m, ex), 0.01);
  EXPECT_LT(h.step_losses.back(), h.step_losses.front());
}

TEST(Train, ZeroLearningRateLeavesParameters) {
  Backpack m(testing::tiny_config(), 2);
  const Backpack before = m.clone();
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.learning_rate = 0.0;
  const std::vector<TrainExample> ex{toy_example(), toy_example()};
  train(m, ex, cfg);
  for (std::size_t p = 0; p < m.parameters().size(); ++p) {
    const auto a = m.parameters()[p].value.data(), b = before.parameters()[p].value.data();
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin())) << m.parameters()[p].name;
  }
}

corpus::SynthConfig small_synth() {
  corpus::SynthConfig c;
  c.num_queries = 12;
  c.docs_per_query = 6;
  c.num_topics = 6;
  c.background_words = 40;
  c.doc_length = 10;
  c.seed = 5;
  return c;
}

struct Fixture {
  corpus::Collection collection;
  corpus::Vocab vocab;
  std::vector<TrainExample> examples;
};

Fixture small_fixture(std::uint64_t seed = 1) {
  Fixture f{corpus::generate_synthetic(small_synth()), {}, {}};
  std::vector<std::vector<std::string>> texts;
  for (const auto& d : f.collection.documents()) texts.push_back(d.tokens);
  for (const auto& q : f.collection.queries()) texts.push_back(q.tokens);
  f.vocab = corpus::Vocab::build(texts);
  TrainConfig cfg;
  cfg.seed = seed;
  cfg.negatives = 3;
  f.examples = build_training_examples(f.collection, f.vocab, cfg);
  return f;
}

TEST(Train, BuildsListsWithPositiveFirst) {
  const Fixture f = small_fixture();
  ASSERT_EQ(f.examples.size(), f.collection.qrels().size());
  for (const auto& ex : f.examples) {
    ASSERT_EQ(ex.labels.size(), 4u);
    EXPECT_EQ(ex.labels[0], 1.0);
    EXPECT_EQ(f.collection.qrels().grade(ex.query_id, ex.doc_ids[0]), 1);
    for (std::size_t j = 1; j < ex.labels.size(); ++j) EXPECT_EQ(ex.labels[j], 0.0);
  }
  const Fixture g = small_fixture();
  for (std::size_t i = 0; i < f.examples.size(); ++i) EXPECT_EQ(f.examples[i].doc_ids, g.examples[i].doc_ids);
}

TEST(Train, SameSeedSameHistory) {
  const Fixture f = small_fixture();
  auto run = [&]() {
    model::BackpackConfig c = testing::tiny_config(f.vocab.size());
    c.max_seq_len = 16;
    Backpack m(c, 9);
    TrainConfig cfg;
    cfg.epochs = 2;
    cfg.batch_size = 4;
    cfg.learning_rate = 0.05;
    return train(m, f.examples, cfg).step_losses;
  };
  EXPECT_EQ(run(), run());
}

TEST(Train, ResumeMatchesUninterruptedRun) {
  const Fixture f = small_fixture();
  model::BackpackConfig c = testing::tiny_config(f.vocab.size());
  c.max_seq_len = 16;
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 4;
  cfg.learning_rate = 0.05;

  Backpack full(c, 4);
  const TrainHistory whole = train(full, f.examples, cfg);

  Backpack part(c, 4);
  TrainConfig first = cfg;
  first.epochs = 1;
  const TrainHistory a = train(part, f.examples, first);
  const TrainHistory b = train(part, f.examples, cfg, 1);
  EXPECT_EQ(b.epochs_done, 3u);
  std::vector<double> joined = a.step_losses;
  joined.insert(joined.end(), b.step_losses.begin(), b.step_losses.end());
  EXPECT_EQ(joined, whole.step_losses);
  const TokenIds x{3, 4, 2, 5, 6};
  EXPECT_EQ(full.relevance_logit(x).item(), part.relevance_logit(x).item());
}

TEST(Train, ConfigValidation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.epochs = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.learning_rate = -1;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  EXPECT_TRUE(apply_train_key(c, "learning_rate", "0.25"));
  EXPECT_EQ(c.learning_rate, 0.25);
  EXPECT_FALSE(apply_train_key(c, "nope", "1"));
  EXPECT_THROW(apply_train_key(c, "epochs", "x"), DomainError);
}

TEST(Rank, SortsByScoreThenId) {
  const std::vector<std::string> ids{"a", "b", "c"};
  const RankedList r = rank_by_scores("q", ids, std::vector<double>{0.9, 0.1, 0.5});
  EXPECT_EQ(r.doc_ids(), (std::vector<std::string>{"a", "c", "b"}));
  const RankedList tie = rank_by_scores("q", std::vector<std::string>{"z", "b", "m"}, std::vector<double>{1, 1, 2});
  EXPECT_EQ(tie.doc_ids(), (std::vector<std::string>{"m", "b", "z"}));
  const RankedList one = rank_by_scores("q", std::vector<std::string>{"x"}, std::vector<double>{-3});
  EXPECT_EQ(one.doc_ids(), (std::vector<std::string>{"x"}));
  EXPECT_THROW(rank_by_scores("q", std::vector<std::string>{}, std::vector<double>{}), DomainError);
  EXPECT_THROW(rank_by_scores("q", std::vector<std::string>{"a", "a"}, std::vector<double>{1, 2}), DomainError);
}

TEST(Rank, DependsOnlyOnScoreOrder) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    std::vector<std::string> ids;
    std::vector<double> s(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("d" + std::to_string(i));
      s[i] = static_cast<double>(rng.below(5)) + rng.uniform() * 0.01 * static_cast<double>(rng.below(2));
      t[i] = std::exp(2.0 * s[i]) - 7.0;
    }
    EXPECT_EQ(rank_by_scores("q", ids, s).doc_ids(), rank_by_scores("q", ids, t).doc_ids());
  }
}

TEST(Rank, IdentityMapGivesSameRanking) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Backpack m(testing::tiny_config(), rng.next());
    std::vector<Candidate> cands;
    for (int i = 0; i < 8; ++i) cands.push_back({"d" + std::to_string(i), testing::random_tokens(rng, 5, 12)});
    const TokenIds q = testing::random_tokens(rng, 2, 12);
    const SenseMap ones = SenseMap::identity(2);
    EXPECT_EQ(rank(m, "q", q, cands), rank(m, "q", q, cands, &ones));
  }
  const Backpack m(testing::tiny_config(), 1);
  EXPECT_THROW(rank(m, "q", TokenIds{3}, std::vector<Candidate>{}), DomainError);
}

TEST(Sweep, IdentityRowEqualsBaseline) {
  const Fixture f = small_fixture();
  model::BackpackConfig c = testing::tiny_config(f.vocab.size());
  c.max_seq_len = 16;
  const Backpack m(c, 3);
  const auto cands = bm25_candidates(f.collection, 6);
  const std::vector<senses::PolarityPair> pairs{
      {"he", "she", *f.vocab.find("he"), *f.vocab.find("she")}};
  SweepConfig cfg;
  cfg.lambdas = {1.0};
  const SweepResult one = sweep_lambda(m, f.vocab, f.collection, cands, pairs, cfg);
  ASSERT_EQ(one.rows.size(), 4u);
  const auto baseline_run = rerank(m, f.vocab, f.collection, cands);
  const auto baseline = evaluate_run(baseline_run, f.collection, 1.0, cfg);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(one.rows[i].mrr, baseline[i].mrr);
    EXPECT_EQ(one.rows[i].ndcg, baseline[i].ndcg);
    EXPECT_EQ(one.rows[i].arab_tf, baseline[i].arab_tf);
    EXPECT_EQ(one.rows[i].rab_bool, baseline[i].rab_bool);
  }

  cfg.lambdas = {1.0, 0.7, 0.5};
  cfg.cutoffs = {10};
  const SweepResult three = sweep_lambda(m, f.vocab, f.collection, cands, pairs, cfg);
  ASSERT_EQ(three.rows.size(), 3u);
  std::ostringstream csv;
  write_sweep_csv(csv, three.rows, "footer text");
  std::istringstream lines(csv.str());
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[0], "lambda,mrr@10,ndcg@10,rab_tf,arab_tf,rab_bool,arab_bool,cutoff");
  EXPECT_EQ(all[1].rfind("1,", 0), 0u);
  EXPECT_EQ(all[3].rfind("0.5,", 0), 0u);
  EXPECT_EQ(all[4], "# footer text");
}

}  // namespace
}  // namespace backrank::ranker
