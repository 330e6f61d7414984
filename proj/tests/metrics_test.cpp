// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "backrank/corpus/collection.hpp"
#include "backrank/error.hpp"
#include "backrank/metrics/metrics.hpp"
#include "oracles.hpp"

namespace backrank::metrics {
namespace {

using num::Rng;
using testing::Doc;

const GenderLexicon kLex{};

TEST(Magnitude, TfExamples) {
  EXPECT_EQ(mag_tf(Doc{"the", "road"}, kLex.female), 0.0);
  EXPECT_EQ(mag_tf(Doc{"she", "said"}, kLex.female), 0.0);
  EXPECT_NEAR(mag_tf(Doc{"her", "x", "her", "her"}, kLex.female), 1.0986122886681098, 1e-15);
  EXPECT_NEAR(mag_tf(Doc{"her", "her"}, kLex.female, {2.0, false}), 1.0, 1e-15);
  EXPECT_NEAR(mag_tf(Doc{"she"}, kLex.female, {std::numbers::e, true}), std::log(2.0), 1e-15);
  EXPECT_THROW(mag_tf(Doc{"she"}, kLex.female, {1.0, false}), DomainError);
}

TEST(Magnitude, BoolExamples) {
  EXPECT_EQ(mag_bool(Doc{"road"}, kLex.male), 0.0);
  EXPECT_EQ(mag_bool(Doc{"man"}, kLex.male), 1.0);
  EXPECT_EQ(mag_bool(Doc(50, "man"), kLex.male), 1.0);
}

const std::vector<Doc> kTwoDocs{{"she", "walks", "she"}, {"he", "runs"}};

TEST(Rab, TwoDocFixture) {
  EXPECT_NEAR(rab(kTwoDocs, 2, kLex, Magnitude::tf), 0.34657359027997264, 1e-15);
  EXPECT_NEAR(arab(kTwoDocs, 2, kLex, Magnitude::tf), 0.5198603854199590, 1e-15);
  EXPECT_EQ(rab(kTwoDocs, 2, kLex, Magnitude::boolean), 0.0);
  EXPECT_EQ(arab(kTwoDocs, 1, kLex, Magnitude::tf), rab(kTwoDocs, 1, kLex, Magnitude::tf));
}

TEST(Rab, GenderFreeAndEdges) {
  const std::vector<Doc> plain{{"a"}, {"b", "c"}};
  EXPECT_EQ(rab(plain, 2, kLex, Magnitude::tf), 0.0);
  EXPECT_EQ(arab(plain, 2, kLex, Magnitude::boolean), 0.0);
  EXPECT_EQ(rab(std::vector<double>{}, 5), 0.0);
  EXPECT_THROW(rab(std::vector<double>{1.0}, 0), DomainError);
  // Short list: evaluated over the available prefix.
  EXPECT_EQ(rab(std::vector<double>{1.0, 0.0}, 10), 0.5);
}

TEST(Rab, MatchesOracleBitForBit) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = testing::random_ranked_docs(rng, 1 + rng.below(30));
    for (std::size_t t : {1ul, 5ul, 10ul, 20ul, 40ul}) {
      for (bool boolean : {false, true}) {
        const Magnitude v = boolean ? Magnitude::boolean : Magnitude::tf;
        EXPECT_EQ(rab(docs, t, kLex, v), testing::oracle_rab(docs, t, kLex.female, kLex.male, boolean));
        EXPECT_EQ(arab(docs, t, kLex, v), testing::oracle_arab(docs, t, kLex.female, kLex.male, boolean));
      }
    }
  }
}

TEST(Rab, SwappingLexiconNegates) {
  Rng rng(2);
  const GenderLexicon swapped = kLex.swapped();
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = testing::random_ranked_docs(rng, 1 + rng.below(20));
    for (Magnitude v : {Magnitude::tf, Magnitude::boolean}) {
      EXPECT_EQ(rab(docs, 10, swapped, v), -rab(docs, 10, kLex, v));
      EXPECT_EQ(arab(docs, 10, swapped, v), -arab(docs, 10, kLex, v));
    }
  }
}

TEST(Rab, ArabIsMeanOfPrefixRabs) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> b(1 + rng.below(25));
    for (double& x : b) x = rng.normal();
    for (std::size_t t = 1; t <= b.size(); ++t) {
      double s = 0.0;
      for (std::size_t x = 1; x <= t; ++x) s += rab(b, x);
      EXPECT_NEAR(arab(b, t), s / static_cast<double>(t), 1e-12);
    }
  }
}

corpus::Qrels qrels_of(std::initializer_list<std::pair<const char*, int>> judged) {
  corpus::Qrels q;
  for (const auto& [doc, g] : judged) q.set("q", doc, g);
  return q;
}

TEST(Effectiveness, MrrExamples) {
  const std::vector<std::string> ranked{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"};
  EXPECT_EQ(mrr_at_k(ranked, qrels_of({{"a", 1}}), "q"), 1.0);
  EXPECT_DOUBLE_EQ(mrr_at_k(ranked, qrels_of({{"c", 1}, {"f", 1}}), "q"), 1.0 / 3.0);
  EXPECT_EQ(mrr_at_k(ranked, qrels_of({{"k", 1}}), "q", 10), 0.0);
  EXPECT_EQ(mrr_at_k(ranked, qrels_of({{"a", 1}}), "other"), 0.0);
}

TEST(Effectiveness, NdcgExamples) {
  const std::vector<std::string> ranked{"a", "b", "c"};
  EXPECT_EQ(ndcg_at_k(ranked, qrels_of({{"a", 1}}), "q"), 1.0);
  EXPECT_NEAR(ndcg_at_k(ranked, qrels_of({{"b", 1}}), "q"), 0.6309297535714574, 1e-15);
  EXPECT_EQ(ndcg_at_k(ranked, qrels_of({{"b", 0}}), "q"), 0.0);
}

TEST(Effectiveness, MatchesOracle) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(25);
    std::vector<std::string> ranked;
    for (std::size_t i = 0; i < n; ++i) ranked.push_back("d" + std::to_string(i));
    corpus::Qrels qrels;
    std::vector<int> grades(n, 0), judged;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.3)) {
        grades[i] = static_cast<int>(rng.below(4));
        qrels.set("q", ranked[i], grades[i]);
        judged.push_back(grades[i]);
      }
    }
    // Judged documents that were not retrieved still count toward the ideal.
    for (int extra = rng.below(3); extra > 0; --extra) {
      const int g = 1 + static_cast<int>(rng.below(2));
      qrels.set("q", "missing" + std::to_string(extra), g);
      judged.push_back(g);
    }
    if (judged.empty()) qrels.set("q", "z", 0), judged.push_back(0);
    for (std::size_t k : {1ul, 5ul, 10ul}) {
      EXPECT_EQ(mrr_at_k(ranked, qrels, "q", k), testing::oracle_mrr(grades, k));
      const double nd = ndcg_at_k(ranked, qrels, "q", k);
      EXPECT_NEAR(nd, testing::oracle_ndcg(grades, judged, k), 1e-12);
      EXPECT_GE(nd, 0.0);
      EXPECT_LE(nd, 1.0 + 1e-12);
    }
  }
}

TEST(Effectiveness, IdealOrderScoresOne) {
  const corpus::Qrels q = qrels_of({{"x", 3}, {"y", 1}, {"z", 2}});
  EXPECT_NEAR(ndcg_at_k(std::vector<std::string>{"x", "z", "y", "w"}, q, "q"), 1.0, 1e-15);
  EXPECT_LT(ndcg_at_k(std::vector<std::string>{"y", "z", "x"}, q, "q"), 1.0);
}

TEST(QueryFilter, DropsGenderedQueries) {
  const std::vector<corpus::Query> qs{{"1", {"best", "doctor", "for", "her"}}, {"2", {"capital", "of", "france"}},
                                      {"3", {"he"}}};
  const QueryFilterResult r = filter_gendered_queries(qs, kLex);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].id, "2");
  EXPECT_EQ(r.dropped, 2u);
}

TEST(Lexicon, ValidateRejectsOverlapAndEmpty) {
  GenderLexicon l;
  l.male.insert("her");
  EXPECT_THROW(l.validate(), DomainError);
  GenderLexicon e;
  e.female.clear();
  EXPECT_THROW(e.validate(), DomainError);
}

TEST(Aggregate, BiasAndEffectivenessAreQueryMeans) {
  corpus::Collection c;
  c.add_document({"d1", {"she", "she"}});
  c.add_document({"d2", {"he"}});
  c.add_document({"d3", {"road"}});
  corpus::Qrels qrels;
  qrels.set("q1", "d1", 1);
  qrels.set("q2", "d3", 1);
  c.set_qrels(qrels);
  const std::vector<corpus::RankedList> run{{"q2", {{"d3", 2.0}, {"d1", 1.0}}}, {"q1", {{"d1", 3.0}, {"d2", 1.0}}}};
  const std::vector<std::size_t> cut{1, 2};
  const std::vector<Magnitude> vars{Magnitude::tf, Magnitude::boolean};
  const BiasReport r = evaluate_bias(run, c, kLex, cut, vars);
  ASSERT_EQ(r.rows.size(), 4u);
  const double ln2 = std::log(2.0);
  EXPECT_NEAR(r.at(Magnitude::tf, 1).rab, (ln2 + 0.0) / 2, 1e-15);
  EXPECT_NEAR(r.at(Magnitude::tf, 2).rab, (ln2 / 2 + ln2 / 2) / 2, 1e-15);
  EXPECT_NEAR(r.at(Magnitude::boolean, 2).arab, ((1.0 + 0.0) / 2 + (0.0 + 0.5) / 2) / 2, 1e-15);
  EXPECT_EQ(r.at(Magnitude::tf, 2).queries, 2u);

  const auto eff = evaluate_effectiveness(run, qrels, cut);
  ASSERT_EQ(eff.size(), 2u);
  EXPECT_EQ(eff[0].mrr, 1.0);
  EXPECT_EQ(eff[1].ndcg, 1.0);
}

}  // namespace
}  // namespace backrank::metrics
