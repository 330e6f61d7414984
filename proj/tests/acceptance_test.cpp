// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/bm25.hpp"
#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/synthetic.hpp"
#include "backrank/corpus/trec.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/metrics/metrics.hpp"
#include "backrank/model/backpack.hpp"
#include "backrank/model/checkpoint.hpp"
#include "backrank/num/ops.hpp"
#include "backrank/num/random.hpp"
#include "backrank/ranker/ranker.hpp"
#include "backrank/ranker/sweep.hpp"
#include "backrank/senses/senses.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace backrank {
namespace {

using model::Backpack;
using model::BackpackConfig;
using model::TokenIds;
using num::Rng;
using num::Tensor;
using senses::SenseMap;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

corpus::Vocab vocab_of(const corpus::Collection& c) {
  std::vector<std::vector<std::string>> texts;
  for (const auto& d : c.documents()) texts.push_back(d.tokens);
  for (const auto& q : c.queries()) texts.push_back(q.tokens);
  return corpus::Vocab::build(texts);
}

BackpackConfig random_small_config(Rng& rng, std::size_t vocab) {
  BackpackConfig c = testing::tiny_config(vocab, 1 + rng.below(8), 1 + rng.below(4));
  c.causal = rng.bernoulli(0.8);
  c.pooling = rng.bernoulli(0.5) ? model::Pooling::last : model::Pooling::mean;
  return c;
}

// 1. The all-ones map reproduces the unweighted aggregation and ranking.
Outcome unit_lambda_identity() {
  const auto start = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  std::size_t ranking_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Backpack m(random_small_config(rng, 20), rng.next());
    const TokenIds x = testing::random_tokens(rng, 1 + rng.below(12), 20);
    const Tensor a = m.forward(x);
    const Tensor b = m.forward_reweighted(x, SenseMap::identity(m.num_senses()));
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));

    std::vector<ranker::Candidate> cands;
    for (int d = 0; d < 10; ++d) cands.push_back({fmt::format("d{}", d), testing::random_tokens(rng, 1 + rng.below(8), 20)});
    const TokenIds q = testing::random_tokens(rng, 1 + rng.below(3), 20);
    const SenseMap ones = build_sense_map(senses::AttributeScores{std::vector<double>(m.num_senses(), 0.0)}, 1.0,
                                          std::min<std::size_t>(2, m.num_senses()));
    if (ranker::rank(m, "q", q, cands) != ranker::rank(m, "q", q, cands, &ones)) ++ranking_mismatches;
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && ranking_mismatches == 0 && secs < 10.0,
          fmt::format("max |diff| {:.3g}, ranking mismatches {}/100, {:.2f}s", worst, ranking_mismatches, secs)};
}

// 2. forward() against a direct triple loop over (j, l, e).
Outcome aggregation_oracle() {
  const auto start = Clock::now();
  Rng rng(202);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int param = 0; param < 50; ++param) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t k = 1; k <= 2; ++k) {
        for (std::size_t d = 1; d <= 4; ++d) {
          BackpackConfig cfg = testing::tiny_config(9, d, k);
          cfg.causal = rng.bernoulli(0.5);
          const Backpack m(cfg, rng.next());
          const TokenIds x = testing::random_tokens(rng, n, 9);
          const model::ContextWeights alpha = m.contextualize(x);
          std::vector<Tensor> c;
          for (std::size_t t : x) c.push_back(m.sense_vectors(t));
          const Tensor o = m.forward(x);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t e = 0; e < d; ++e) {
              double want = 0.0;
              for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t l = 0; l < k; ++l) want += alpha(l, i, j) * c[j](e, l);
              }
              worst = std::max(worst, std::abs(o(i, e) - want));
            }
          }
          ++cases;
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && secs < 5.0, fmt::format("{} cases, max |diff| {:.3g}, {:.2f}s", cases, worst, secs)};
}

// Gradient error as defined for finite_diff_check: |a - n| / max(1, |a|).
// `strict` also tracks |a - n| / max(|a|, |n|) over coordinates with |a| >= 1e-6,
// reported for information only.
struct FdError {
  double project = 0.0;
  double strict = 0.0;
  void merge(const FdError& o) {
    project = std::max(project, o.project);
    strict = std::max(strict, o.strict);
  }
};

// Central differences over every coordinate of `values`, evaluated in test code.
FdError fd_error(std::span<double> values, std::span<const double> analytic, const std::function<double()>& f,
                 double eps = 1e-5) {
  FdError err;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double orig = values[i];
    values[i] = orig + eps;
    const double up = f();
    values[i] = orig - eps;
    const double down = f();
    values[i] = orig;
    const double a = analytic[i], n = (up - down) / (2.0 * eps);
    err.project = std::max(err.project, std::abs(a - n) / std::max(1.0, std::abs(a)));
    if (std::abs(a) >= 1e-6) err.strict = std::max(err.strict, std::abs(a - n) / std::max(std::abs(a), std::abs(n)));
  }
  return err;
}

// 3. Loss gradient w.r.t. scores and score gradient w.r.t. every model parameter.
Outcome gradient_suite() {
  const auto start = Clock::now();
  Rng rng(303);
  FdError loss_err, score_err, chain_err;
  for (int point = 0; point < 20; ++point) {
    // Listwise loss over a random list.
    const std::size_t len = 2 + rng.below(8);
    std::vector<double> y(len, 0.0), s(len);
    for (auto& v : s) v = rng.normal(0.0, 2.0);
    for (auto& v : y) v = rng.bernoulli(0.3) ? static_cast<double>(1 + rng.below(2)) : 0.0;
    y[rng.below(len)] = 1.0;
    Tensor scores = Tensor::vector(s, true);
    {
      num::Tape tape;
      num::TapeScope scope(tape);
      tape.backward(ranker::listwise_loss(Tensor::vector(y), scores));
    }
    const std::vector<double> g(scores.grad().begin(), scores.grad().end());
    loss_err.merge(fd_error(std::span<double>(s), g, [&] { return ranker::listwise_loss(y, s); }));

    // sigmoid(relevance logit) w.r.t. every parameter of a small model.
    Backpack m(random_small_config(rng, 15), rng.next());
    const TokenIds q = testing::random_tokens(rng, 1 + rng.below(3), 15);
    const TokenIds d = testing::random_tokens(rng, 1 + rng.below(6), 15);
    const TokenIds packed = m.pack(q, d);
    const SenseMap map = SenseMap::from_weights(std::vector<double>(m.num_senses(), rng.uniform(0.3, 1.0)));
    {
      num::Tape tape;
      num::TapeScope scope(tape);
      tape.backward(num::sigmoid(m.relevance_logit(packed, &map)));
    }
    for (const auto& p : m.parameters()) {
      Tensor value = p.value;
      if (!value.has_grad()) continue;
      const std::vector<double> grad(value.grad().begin(), value.grad().end());
      score_err.merge(fd_error(value.mutable_data(), grad, [&] { return m.relevance_score(q, d, &map); }));
    }
    for (auto p : m.parameters()) p.value.zero_grad();

    // Listwise loss of the model's logits over a 3-document list, through the whole network.
    if (point < 5) {
      std::vector<TokenIds> docs{d, testing::random_tokens(rng, 3, 15), testing::random_tokens(rng, 4, 15)};
      const Tensor labels = Tensor::vector({1, 0, 0});
      auto list_loss = [&] {
        std::vector<Tensor> logits;
        for (const auto& doc : docs) logits.push_back(num::reshape(m.relevance_logit(m.pack(q, doc)), {1, 1}));
        return ranker::listwise_loss(labels, num::reshape(num::concat_rows(logits), {docs.size()}));
      };
      {
        num::Tape tape;
        num::TapeScope scope(tape);
        tape.backward(list_loss());
      }
      for (const auto& p : m.parameters()) {
        Tensor value = p.value;
        if (!value.has_grad()) continue;
        const std::vector<double> grad(value.grad().begin(), value.grad().end());
        chain_err.merge(fd_error(value.mutable_data(), grad, [&] { return list_loss().item(); }));
      }
      for (auto p : m.parameters()) p.value.zero_grad();
    }
  }
  const double secs = seconds_since(start);
  const double worst = std::max({loss_err.project, score_err.project, chain_err.project});
  return {worst <= 1e-4 && secs < 30.0,
          fmt::format("max rel err: loss {:.2g}, score {:.2g}, loss-through-model {:.2g} "
                      "(pure relative over |g| >= 1e-6: {:.2g}, {:.2g}, {:.2g}); {:.2f}s",
                      loss_err.project, score_err.project, chain_err.project, loss_err.strict, score_err.strict,
                      chain_err.strict, secs)};
}

// 4. Library metrics against the direct definitions in oracles.hpp.
Outcome metric_oracles() {
  const auto start = Clock::now();
  const metrics::GenderLexicon lex;
  std::size_t bias_mismatch = 0;
  double ndcg_worst = 0.0;
  std::size_t mrr_mismatch = 0;

  const std::vector<testing::Doc> fixture{{"she", "walks", "she"}, {"he", "runs"}};
  const double rab2 = metrics::rab(fixture, 2, lex, metrics::Magnitude::tf);
  const double arab2 = metrics::arab(fixture, 2, lex, metrics::Magnitude::tf);
  const bool fixture_ok = std::abs(rab2 - 0.3466) < 5e-5 && std::abs(arab2 - 0.5199) < 5e-5 &&
                          rab2 == testing::oracle_rab(fixture, 2, lex.female, lex.male, false) &&
                          arab2 == testing::oracle_arab(fixture, 2, lex.female, lex.male, false);

  Rng rng(404);
  for (int list = 0; list < 200; ++list) {
    const std::size_t n = 1 + rng.below(40);
    const auto docs = testing::random_ranked_docs(rng, n);
    for (std::size_t t : {1ul, 5ul, 10ul, 20ul, 30ul, 40ul}) {
      for (bool boolean : {false, true}) {
        const auto v = boolean ? metrics::Magnitude::boolean : metrics::Magnitude::tf;
        if (metrics::rab(docs, t, lex, v) != testing::oracle_rab(docs, t, lex.female, lex.male, boolean)) ++bias_mismatch;
        if (metrics::arab(docs, t, lex, v) != testing::oracle_arab(docs, t, lex.female, lex.male, boolean)) {
          ++bias_mismatch;
        }
      }
    }
    std::vector<std::string> ids;
    std::vector<int> grades(n, 0), judged;
    corpus::Qrels qrels;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back(fmt::format("d{}", i));
      if (rng.bernoulli(0.25)) {
        grades[i] = static_cast<int>(rng.below(4));
        qrels.set("q", ids[i], grades[i]);
        judged.push_back(grades[i]);
      }
    }
    if (rng.bernoulli(0.3)) {
      qrels.set("q", "unretrieved", 1);
      judged.push_back(1);
    }
    if (judged.empty()) {
      qrels.set("q", "unretrieved", 0);
      judged.push_back(0);
    }
    if (metrics::mrr_at_k(ids, qrels, "q", 10) != testing::oracle_mrr(grades, 10)) ++mrr_mismatch;
    ndcg_worst = std::max(ndcg_worst, std::abs(metrics::ndcg_at_k(ids, qrels, "q", 10) -
                                               testing::oracle_ndcg(grades, judged, 10)));
  }
  const double secs = seconds_since(start);
  return {fixture_ok && bias_mismatch == 0 && mrr_mismatch == 0 && ndcg_worst <= 1e-12 && secs < 10.0,
          fmt::format("fixture RaB2 {:.4f} ARaB2 {:.4f}; RaB/ARaB mismatches {}, MRR mismatches {}, "
                      "NDCG max |diff| {:.3g}; {:.2f}s",
                      rab2, arab2, bias_mismatch, mrr_mismatch, ndcg_worst, secs)};
}

// 5. A direction planted into one sense of every polarity pair is found and suppressed.
Outcome sense_detection() {
  const auto start = Clock::now();
  std::vector<std::vector<std::string>> texts{
      {"he", "she", "man", "woman", "him", "her", "his", "hers", "boy", "girl", "father", "mother", "son",
       "daughter", "king", "queen", "river", "bank", "code", "tree"}};
  const corpus::Vocab vocab = corpus::Vocab::build(texts);
  const auto lexicon = senses::default_polarity_lexicon(vocab);
  std::size_t hits = 0;
  std::string misses;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BackpackConfig cfg;
    cfg.vocab_size = vocab.size();
    Backpack m(cfg, seed);
    Rng rng(seed * 7919);
    const std::size_t target = rng.below(cfg.num_senses);
    double norm = 0.0;
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      const Tensor c = m.sense_vectors(t);
      for (double v : c.data()) norm += v * v;
    }
    norm = std::sqrt(norm / static_cast<double>(vocab.size() * cfg.num_senses));
    std::vector<double> g(cfg.embed_dim);
    double gn = 0.0;
    for (double& v : g) {
      v = rng.normal();
      gn += v * v;
    }
    for (double& v : g) v *= 10.0 * norm / std::sqrt(gn);
    std::vector<double> neg(g);
    for (double& v : neg) v = -v;
    for (const auto& p : lexicon.pairs) {
      m.plant_sense(p.negative_id, target, g);
      m.plant_sense(p.positive_id, target, neg);
    }
    const auto scores = senses::attribute_scores(m, lexicon.pairs);
    const auto order = scores.ranking();
    const bool unique_min = order[0] == target && scores.s[order[1]] > scores.s[order[0]];
    const SenseMap map = senses::build_sense_map(scores, 0.5, 1);
    bool exact = map.suppressed == std::vector<std::size_t>{target};
    for (std::size_t l = 0; l < cfg.num_senses; ++l) exact = exact && map.weights[l] == (l == target ? 0.5 : 1.0);
    if (unique_min && exact) {
      ++hits;
    } else {
      misses += fmt::format(" seed{}", seed);
    }
  }
  const double secs = seconds_since(start);
  return {hits == 20 && secs < 10.0,
          fmt::format("{}/20 seeds with the planted sense as unique minimum and sole suppressed sense{}; {:.2f}s", hits,
                      misses, secs)};
}

// 6. Suppression lowers ARaB@10 (TF) while NDCG@10 stays within 10% of the baseline.
Outcome desk_tradeoff() {
  const auto start = Clock::now();
  std::size_t good = 0;
  double slowest_train = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    corpus::SynthConfig sc;  // 500 queries x 20 documents
    sc.skew = 0.9;
    sc.favored_gender = corpus::Gender::female;
    sc.seed = seed;
    const corpus::Collection collection = corpus::generate_synthetic(sc);
    const corpus::Vocab vocab = vocab_of(collection);

    BackpackConfig mc;
    mc.vocab_size = vocab.size();
    Backpack m(mc, seed);
    ranker::TrainConfig tc;
    tc.seed = seed;
    tc.learning_rate = 0.05;
    const auto examples = ranker::build_training_examples(collection, vocab, tc);
    const auto train_start = Clock::now();
    ranker::train(m, examples, tc);
    slowest_train = std::max(slowest_train, seconds_since(train_start));

    const auto candidates = ranker::bm25_candidates(collection, 100);
    const auto pairs = senses::default_polarity_lexicon(vocab).pairs;
    ranker::SweepConfig cfg;
    cfg.lambdas = {1.0, 0.5};
    cfg.cutoffs = {10};
    const auto result = ranker::sweep_lambda(m, vocab, collection, candidates, pairs, cfg);
    const auto& base = result.rows[0];
    const auto& half = result.rows[1];
    const bool lower_bias = half.arab_tf < base.arab_tf;
    const bool kept = half.ndcg >= 0.9 * base.ndcg;
    good += lower_bias && kept;
    per_seed += fmt::format(" [seed {}: ARaB {:.4f}->{:.4f}, NDCG {:.4f}->{:.4f}{}]", seed, base.arab_tf,
                            half.arab_tf, base.ndcg, half.ndcg, lower_bias && kept ? "" : " miss");
  }
  return {good >= 4 && slowest_train <= 300.0,
          fmt::format("{}/5 seeds;{} slowest training {:.0f}s, total {:.0f}s", good, per_seed, slowest_train,
                      seconds_since(start))};
}

// 7. One listwise example is memorized within 500 SGD steps.
Outcome overfit() {
  const auto start = Clock::now();
  BackpackConfig cfg;
  cfg.vocab_size = 30;
  Backpack m(cfg, 7);
  const std::vector<ranker::TrainExample> ex{
      {"q", {5, 6}, {"p", "n1", "n2", "n3"}, {{5, 9, 12, 6}, {13, 14, 5}, {20, 21, 22, 23}, {6, 25, 26}}, {1, 0, 0, 0}}};
  ranker::TrainConfig tc;
  tc.epochs = 500;
  tc.batch_size = 1;
  tc.learning_rate = 0.05;
  const auto history = ranker::train(m, ex, tc);
  const double final_loss = ranker::evaluate_loss(m, ex);
  std::size_t first_below = 0;
  for (std::size_t s = 0; s < history.step_losses.size(); ++s) {
    if (history.step_losses[s] < 0.01) {
      first_below = s;
      break;
    }
  }
  const double secs = seconds_since(start);
  return {final_loss < 0.01 && secs < 30.0,
          fmt::format("loss {:.4f} -> {:.5f} after 500 steps (first below 0.01 at step {}); {:.2f}s",
                      history.step_losses.front(), final_loss, first_below, secs)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8. Run, qrels and checkpoint files survive a write/read/write cycle.
Outcome round_trips() {
  const auto start = Clock::now();
  testing::TempDir dir("acceptance");
  corpus::SynthConfig sc;
  sc.num_queries = 100;
  sc.num_topics = 25;
  const corpus::Collection collection = corpus::generate_synthetic(sc);

  const auto run = corpus::to_run(ranker::bm25_candidates(collection, 50), "bm25");
  corpus::write_run(dir / "a.run", run);
  corpus::write_run(dir / "b.run", corpus::read_run(dir / "a.run"));
  const bool run_ok = !run.empty() && slurp(dir / "a.run") == slurp(dir / "b.run");

  corpus::write_qrels(dir / "a.qrels", collection.qrels());
  corpus::write_qrels(dir / "b.qrels", corpus::read_qrels(dir / "a.qrels").qrels);
  const bool qrels_ok = slurp(dir / "a.qrels") == slurp(dir / "b.qrels");

  const corpus::Vocab vocab = vocab_of(collection);
  BackpackConfig mc;
  mc.vocab_size = vocab.size();
  Backpack m(mc, 8);
  ranker::TrainConfig tc;
  tc.epochs = 1;
  tc.learning_rate = 0.05;
  auto examples = ranker::build_training_examples(collection, vocab, tc);
  examples.resize(std::min<std::size_t>(examples.size(), 40));
  ranker::train(m, examples, tc);
  model::save_checkpoint(dir / "m.ckpt", m, vocab, {{"seed", "8"}});
  const model::Checkpoint back = model::load_checkpoint(dir / "m.ckpt");
  const SenseMap map = SenseMap::from_weights({0.5, 1.0, 0.7, 1.0});
  std::size_t compared = 0, differ = 0;
  for (const auto& q : collection.queries()) {
    const TokenIds qt = vocab.encode(q.tokens);
    for (std::size_t d = 0; d < 20; ++d) {
      const TokenIds dt = vocab.encode(collection.documents()[(compared + d) % collection.documents().size()].tokens);
      differ += m.relevance_score(qt, dt) != back.model.relevance_score(qt, dt);
      differ += m.relevance_score(qt, dt, &map) != back.model.relevance_score(qt, dt, &map);
    }
    compared += 20;
  }
  const bool ckpt_ok = differ == 0 && back.vocab.tokens() == vocab.tokens();
  return {run_ok && qrels_ok && ckpt_ok,
          fmt::format("run {} lines {}, qrels {}, checkpoint {} score pairs with {} differences; {:.2f}s", run.size(),
                      run_ok ? "identical" : "DIFFER", qrels_ok ? "identical" : "DIFFER", 2 * compared, differ,
                      seconds_since(start))};
}

}  // namespace
}  // namespace backrank

// Optional arguments select criteria by number; all run by default.
int main(int argc, char** argv) {
  using namespace backrank;
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"unit-lambda identity", unit_lambda_identity},
      {"aggregation triple-loop oracle", aggregation_oracle},
      {"gradient finite differences", gradient_suite},
      {"metric oracles", metric_oracles},
      {"planted sense detection", sense_detection},
      {"desk-scale bias/effectiveness trade-off", desk_tradeoff},
      {"single-list overfit", overfit},
      {"format round trips", round_trips},
  };
  int failures = 0;
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const int n = std::atoi(argv[a]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      fmt::print(stderr, "unknown criterion '{}'\n", argv[a]);
      return 2;
    }
    selected[static_cast<std::size_t>(n - 1)] = true;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    failures += !o.pass;
    fmt::print("criterion {} {}: {} ({})\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
