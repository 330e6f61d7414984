// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/bm25.hpp"
#include "backrank/corpus/collection.hpp"
#include "backrank/corpus/keyvalue.hpp"
#include "backrank/corpus/synthetic.hpp"
#include "backrank/corpus/trec.hpp"
#include "backrank/corpus/vocab.hpp"
#include "backrank/error.hpp"
#include "backrank/metrics/metrics.hpp"
#include "backrank/model/checkpoint.hpp"
#include "backrank/ranker/ranker.hpp"
#include "backrank/ranker/sweep.hpp"
#include "backrank/senses/senses.hpp"
#include "backrank/version.hpp"

namespace backrank::cli {

namespace {

namespace fs = std::filesystem;

/// Bad flags, missing inputs, invalid values: reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string footer(std::uint64_t seed, const std::string& lambda) {
  return fmt::format("backrank {} seed={} lambda={}", kVersion, seed, lambda);
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(fmt::format("{} '{}' does not exist", what, path.string()));
}

void require_dir(const fs::path& path, const char* what) {
  if (!fs::is_directory(path)) throw UsageError(fmt::format("{} '{}' is not a directory", what, path.string()));
}

void require_corpus(const fs::path& dir) {
  require_dir(dir, "corpus");
  require_file(dir / "docs.tsv", "corpus documents");
  require_file(dir / "queries.tsv", "corpus queries");
}

void require_output(const fs::path& path) {
  if (path.empty()) return;
  const fs::path parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw UsageError(fmt::format("output directory '{}' does not exist", parent.string()));
  }
}

std::vector<std::size_t> parse_cutoffs(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : corpus::split_list(text)) {
    const auto v = corpus::parse_number<std::size_t>("--cutoffs", item);
    if (v == 0) throw UsageError("--cutoffs: cutoffs must be at least 1");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--cutoffs: no cutoff given");
  return out;
}

void check_lambda(double lambda, const char* flag) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw UsageError(fmt::format("{}: {} is outside (0, 1]", flag, lambda));
}

std::vector<double> parse_lambdas(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : corpus::split_list(text)) {
    const auto v = corpus::parse_number<double>("--lambdas", item);
    check_lambda(v, "--lambdas");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--lambdas: no value given");
  return out;
}

std::set<std::string, std::less<>> parse_terms(const std::string& text, const char* flag) {
  const auto items = corpus::split_list(text);
  if (items.empty()) throw UsageError(fmt::format("{}: no terms given", flag));
  return {items.begin(), items.end()};
}

/// Writes to `path`, or to `fallback` when the path is empty.
void emit(const fs::path& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  write(file);
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("backrank", std::move(sink));
  logger->set_pattern("backrank: %l: %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("BACKRANK_LOG"); env != nullptr && *env != '\0') {
    const std::string name(env);
    level = spdlog::level::from_str(name);
    if (level == spdlog::level::off && name != "off") level = spdlog::level::warn;
  }
  logger->set_level(level);
  spdlog::set_default_logger(std::move(logger));
}

corpus::Vocab build_vocab(const corpus::Collection& collection) {
  std::vector<std::vector<std::string>> texts;
  texts.reserve(collection.documents().size() + collection.queries().size());
  for (const auto& d : collection.documents()) texts.push_back(d.tokens);
  for (const auto& q : collection.queries()) texts.push_back(q.tokens);
  return corpus::Vocab::build(texts);
}

senses::PolarityLexicon polarity_pairs(const std::string& lexicon_path, const corpus::Vocab& vocab) {
  auto lexicon = lexicon_path.empty() ? senses::default_polarity_lexicon(vocab)
                                      : senses::load_polarity_lexicon(lexicon_path, vocab);
  if (lexicon.pairs.empty()) throw UsageError("no polarity pair has both terms in the model vocabulary");
  return lexicon;
}

/// Explicit --seed, else the seed the checkpoint was trained with.
std::uint64_t recorded_seed(const std::optional<std::uint64_t>& flag, const model::Checkpoint& ckpt) {
  if (flag) return *flag;
  return corpus::parse_number<std::uint64_t>("seed", ckpt.meta_value("seed", "0"));
}

std::vector<corpus::RankedList> candidate_lists(const std::string& candidates_path,
                                                const corpus::Collection& collection, std::size_t depth) {
  if (!candidates_path.empty()) return corpus::group_run(corpus::read_run(fs::path(candidates_path)));
  return ranker::bm25_candidates(collection, depth);
}

// ---------------------------------------------------------------------------

struct SynthOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> skew;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  if (!o.config.empty()) require_file(o.config, "config");
  corpus::SynthConfig cfg = o.config.empty() ? corpus::SynthConfig{} : corpus::read_synth_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.skew) cfg.skew = *o.skew;
  cfg.validate();
  const fs::path dir(o.out);
  if (fs::exists(dir) && !fs::is_directory(dir)) throw UsageError(fmt::format("'{}' is not a directory", o.out));
  require_output(dir);

  const auto collection = corpus::generate_synthetic(cfg);
  corpus::save_collection(dir, collection);
  corpus::write_synth_config(dir / "synth.cfg", cfg);
  out << fmt::format("wrote {} documents, {} queries, {} judgements to {}\n", collection.documents().size(),
                     collection.queries().size(), collection.qrels().size(), dir.string());
  return kExitOk;
}

struct TrainOptions {
  std::string corpus;
  std::string out;
  std::string config;
  std::string resume;
  std::string loss_csv;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<double> learning_rate;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
  require_corpus(o.corpus);
  if (!o.config.empty()) require_file(o.config, "config");
  if (!o.resume.empty()) require_file(o.resume, "checkpoint");
  require_output(o.out);
  const fs::path loss_path = o.loss_csv.empty() ? fs::path(o.out + ".loss.csv") : fs::path(o.loss_csv);
  require_output(loss_path);

  model::BackpackConfig model_cfg;
  ranker::TrainConfig train_cfg;
  std::optional<model::Checkpoint> resumed;
  if (!o.resume.empty()) {
    resumed.emplace(model::load_checkpoint(o.resume));
    model_cfg = resumed->model.config();
    for (const auto& [k, v] : resumed->meta) {
      if (k.starts_with("train.")) ranker::apply_train_key(train_cfg, k.substr(6), v);
    }
  }
  if (!o.config.empty()) {
    for (const auto& kv : corpus::read_key_values(o.config)) {
      if (ranker::apply_train_key(train_cfg, kv.key, kv.value)) continue;
      if (kv.key == "vocab_size") throw UsageError("vocab_size is derived from the corpus and cannot be set");
      const model::BackpackConfig before = model_cfg;
      if (!model::apply_backpack_key(model_cfg, kv.key, kv.value)) {
        throw UsageError(fmt::format("{}:{}: unknown configuration key '{}'", o.config, kv.line, kv.key));
      }
      if (resumed && model::backpack_config_entries(model_cfg) != model::backpack_config_entries(before)) {
        throw UsageError(fmt::format("{}: model settings cannot change when resuming", kv.key));
      }
    }
  }
  if (o.seed) train_cfg.seed = *o.seed;
  if (o.epochs) train_cfg.epochs = *o.epochs;
  if (o.learning_rate) train_cfg.learning_rate = *o.learning_rate;
  train_cfg.validate();

  const auto collection = corpus::load_collection(o.corpus);
  corpus::Vocab vocab = resumed ? std::move(resumed->vocab) : build_vocab(collection);
  model_cfg.vocab_size = vocab.size();
  model_cfg.sep_token = corpus::Vocab::kSep;
  model::Backpack model = resumed ? std::move(resumed->model) : model::Backpack(model_cfg, train_cfg.seed);
  const std::size_t start_epoch =
      resumed ? corpus::parse_number<std::size_t>("epochs_done", resumed->meta_value("epochs_done", "0")) : 0;

  const auto examples = ranker::build_training_examples(collection, vocab, train_cfg);
  const std::size_t steps_per_epoch = (examples.size() + train_cfg.batch_size - 1) / train_cfg.batch_size;

  auto metadata = [&](std::size_t epochs_done) {
    model::Metadata meta{{"epochs_done", std::to_string(epochs_done)}, {"seed", std::to_string(train_cfg.seed)}};
    for (const auto& [k, v] : ranker::train_config_entries(train_cfg)) meta.emplace_back("train." + k, v);
    return meta;
  };
  if (start_epoch >= train_cfg.epochs) {
    out << fmt::format("checkpoint already has {} of {} epochs; nothing to do\n", start_epoch, train_cfg.epochs);
    model::save_checkpoint(o.out, model, vocab, metadata(start_epoch));
    return kExitOk;
  }

  const auto history = ranker::train(model, examples, train_cfg, start_epoch, [&](std::size_t epoch, const auto&) {
    model::save_checkpoint(o.out, model, vocab, metadata(epoch + 1));
  });

  emit(loss_path, out, [&](std::ostream& csv) {
    csv << "epoch,step,loss\n";
    for (std::size_t i = 0; i < history.step_losses.size(); ++i) {
      const std::size_t epoch = start_epoch + i / steps_per_epoch;
      const std::size_t step = start_epoch * steps_per_epoch + i;
      csv << fmt::format("{},{},{:.17g}\n", epoch + 1, step + 1, history.step_losses[i]);
    }
    csv << "# " << footer(train_cfg.seed, "none") << '\n';
  });
  out << fmt::format("trained epochs {}..{} on {} lists; final epoch loss {:.6f}; checkpoint {}\n", start_epoch + 1,
                     train_cfg.epochs, examples.size(), history.epoch_losses.back(), o.out);
  return kExitOk;
}

struct RankOptions {
  std::string checkpoint;
  std::string corpus;
  std::string candidates;
  std::string lexicon;
  std::string out;
  std::string tag = "backrank";
  std::optional<double> lambda;
  std::size_t top_senses = 2;
  std::size_t depth = 100;
};

int cmd_rank(const RankOptions& o, std::ostream& out) {
  if (o.lambda) check_lambda(*o.lambda, "--lambda");
  require_file(o.checkpoint, "checkpoint");
  require_corpus(o.corpus);
  if (!o.candidates.empty()) require_file(o.candidates, "candidate run");
  if (!o.lexicon.empty()) require_file(o.lexicon, "lexicon");
  require_output(o.out);

  const auto ckpt = model::load_checkpoint(o.checkpoint);
  if (o.top_senses > ckpt.model.num_senses()) {
    throw UsageError(fmt::format("--top-senses {} exceeds the model's {} senses", o.top_senses,
                                 ckpt.model.num_senses()));
  }
  const auto collection = corpus::load_collection(o.corpus);
  std::optional<senses::SenseMap> map;
  if (o.lambda) {
    const auto lexicon = polarity_pairs(o.lexicon, ckpt.vocab);
    map = senses::build_sense_map(senses::attribute_scores(ckpt.model, lexicon.pairs), *o.lambda, o.top_senses);
  }
  const auto candidates = candidate_lists(o.candidates, collection, o.depth);
  const auto run = ranker::rerank(ckpt.model, ckpt.vocab, collection, candidates, map ? &*map : nullptr);
  emit(o.out, out, [&](std::ostream& s) { corpus::write_run(s, corpus::to_run(run, o.tag)); });
  return kExitOk;
}

struct EvalOptions {
  std::string run;
  std::string qrels;
  std::string corpus;
  std::string cutoffs = "10,20,30,40";
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const auto cutoffs = parse_cutoffs(o.cutoffs);
  require_file(o.run, "run");
  if (o.qrels.empty() == o.corpus.empty()) throw UsageError("give exactly one of --qrels or --corpus");
  const fs::path qrels_path = o.qrels.empty() ? fs::path(o.corpus) / "qrels.txt" : fs::path(o.qrels);
  require_file(qrels_path, "qrels");
  require_output(o.out);

  const auto qrels = corpus::read_qrels(qrels_path).qrels;
  const auto run = corpus::group_run(corpus::read_run(fs::path(o.run)));
  const auto rows = metrics::evaluate_effectiveness(run, qrels, cutoffs);
  emit(o.out, out, [&](std::ostream& s) {
    s << "cutoff,mrr,ndcg,queries\n";
    for (const auto& r : rows) s << fmt::format("{},{:.6f},{:.6f},{}\n", r.cutoff, r.mrr, r.ndcg, r.queries);
    s << "# " << footer(o.seed, "none") << '\n';
  });
  return kExitOk;
}

struct BiasOptions {
  std::string run;
  std::string corpus;
  std::string cutoffs = "10,20,30,40";
  std::string variant = "both";
  std::string female_terms;
  std::string male_terms;
  std::string out;
  bool keep_gendered = false;
  bool log_one_plus = false;
  std::uint64_t seed = 0;
};

int cmd_bias(const BiasOptions& o, std::ostream& out) {
  const auto cutoffs = parse_cutoffs(o.cutoffs);
  std::vector<metrics::Magnitude> variants;
  if (o.variant == "tf" || o.variant == "both") variants.push_back(metrics::Magnitude::tf);
  if (o.variant == "bool" || o.variant == "both") variants.push_back(metrics::Magnitude::boolean);
  if (variants.empty()) throw UsageError(fmt::format("--variant: expected tf, bool or both, got '{}'", o.variant));
  metrics::GenderLexicon lexicon;
  if (!o.female_terms.empty()) lexicon.female = parse_terms(o.female_terms, "--female-terms");
  if (!o.male_terms.empty()) lexicon.male = parse_terms(o.male_terms, "--male-terms");
  lexicon.validate();
  require_file(o.run, "run");
  require_corpus(o.corpus);
  require_output(o.out);

  const auto collection = corpus::load_collection(o.corpus);
  auto run = corpus::group_run(corpus::read_run(fs::path(o.run)));
  if (!o.keep_gendered) {
    const auto filtered = metrics::filter_gendered_queries(collection.queries(), lexicon);
    std::erase_if(run, [&](const corpus::RankedList& list) {
      return std::none_of(filtered.kept.begin(), filtered.kept.end(),
                          [&](const corpus::Query& q) { return q.id == list.query_id; });
    });
    if (filtered.dropped > 0) spdlog::info("{} gendered queries excluded", filtered.dropped);
  }
  metrics::MagnitudeOptions opts;
  opts.tf_log_one_plus = o.log_one_plus;
  const auto report = metrics::evaluate_bias(run, collection, lexicon, cutoffs, variants, opts);
  emit(o.out, out, [&](std::ostream& s) {
    s << "variant,cutoff,rab,arab,queries\n";
    for (const auto& r : report.rows) {
      s << fmt::format("{},{},{:.6f},{:.6f},{}\n", metrics::variant_name(r.variant), r.cutoff, r.rab, r.arab,
                       r.queries);
    }
    s << "# " << footer(o.seed, "none") << '\n';
  });
  return kExitOk;
}

struct SensesOptions {
  std::string checkpoint;
  std::string lexicon;
  std::string out;
  std::size_t top_senses = 2;
  std::optional<std::uint64_t> seed;
};

int cmd_senses(const SensesOptions& o, std::ostream& out) {
  require_file(o.checkpoint, "checkpoint");
  if (!o.lexicon.empty()) require_file(o.lexicon, "lexicon");
  require_output(o.out);
  const auto ckpt = model::load_checkpoint(o.checkpoint);
  if (o.top_senses > ckpt.model.num_senses()) {
    throw UsageError(fmt::format("--top-senses {} exceeds the model's {} senses", o.top_senses,
                                 ckpt.model.num_senses()));
  }
  const auto lexicon = polarity_pairs(o.lexicon, ckpt.vocab);
  const auto scores = senses::attribute_scores(ckpt.model, lexicon.pairs);
  const auto order = scores.ranking();
  emit(o.out, out, [&](std::ostream& s) {
    s << "sense,score,rank,suppressed\n";
    for (std::size_t l = 0; l < scores.size(); ++l) {
      const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), l) - order.begin());
      s << fmt::format("{},{:.6f},{},{}\n", l + 1, scores.s[l], pos + 1, pos < o.top_senses ? 1 : 0);
    }
    s << "# " << footer(recorded_seed(o.seed, ckpt), "none") << fmt::format(" pairs={}", lexicon.pairs.size())
      << '\n';
  });
  return kExitOk;
}

struct SweepOptions {
  std::string checkpoint;
  std::string corpus;
  std::string candidates;
  std::string lexicon;
  std::string lambdas = "1.0,0.7,0.5";
  std::string cutoffs = "10,20,30,40";
  std::string out;
  std::size_t top_senses = 2;
  std::size_t depth = 100;
  std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  ranker::SweepConfig cfg;
  cfg.lambdas = parse_lambdas(o.lambdas);
  cfg.cutoffs = parse_cutoffs(o.cutoffs);
  cfg.top_senses = o.top_senses;
  require_file(o.checkpoint, "checkpoint");
  require_corpus(o.corpus);
  if (!o.candidates.empty()) require_file(o.candidates, "candidate run");
  if (!o.lexicon.empty()) require_file(o.lexicon, "lexicon");
  require_output(o.out);

  const auto ckpt = model::load_checkpoint(o.checkpoint);
  if (o.top_senses > ckpt.model.num_senses()) {
    throw UsageError(fmt::format("--top-senses {} exceeds the model's {} senses", o.top_senses,
                                 ckpt.model.num_senses()));
  }
  const auto collection = corpus::load_collection(o.corpus);
  const auto lexicon = polarity_pairs(o.lexicon, ckpt.vocab);
  const auto candidates = candidate_lists(o.candidates, collection, o.depth);
  const auto result = ranker::sweep_lambda(ckpt.model, ckpt.vocab, collection, candidates, lexicon.pairs, cfg);
  emit(o.out, out, [&](std::ostream& s) {
    ranker::write_sweep_csv(s, result.rows, footer(recorded_seed(o.seed, ckpt), fmt::format("{}", fmt::join(cfg.lambdas, ";"))));
  });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging(err);

  CLI::App app{"Sense-level gender bias mitigation for a Backpack reranker", "backrank"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SynthOptions synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a gender-skewed synthetic collection");
  c_synth->add_option("--config", synth.config, "key = value synthesis settings");
  c_synth->add_option("--out", synth.out, "Output directory")->required();
  c_synth->add_option("--seed", synth.seed, "Override the configured seed");
  c_synth->add_option("--skew", synth.skew, "Override the gender/relevance skew");

  TrainOptions train;
  auto* c_train = app.add_subcommand("train", "Fine-tune the ranker on a collection");
  c_train->add_option("--corpus", train.corpus, "Collection directory")->required();
  c_train->add_option("--out", train.out, "Checkpoint to write")->required();
  c_train->add_option("--config", train.config, "key = value model and training settings");
  c_train->add_option("--resume", train.resume, "Continue from this checkpoint");
  c_train->add_option("--loss-csv", train.loss_csv, "Per-step loss CSV (default <out>.loss.csv)");
  c_train->add_option("--seed", train.seed, "Training seed");
  c_train->add_option("--epochs", train.epochs, "Total number of epochs");
  c_train->add_option("--learning-rate", train.learning_rate, "SGD learning rate");

  RankOptions rank;
  auto* c_rank = app.add_subcommand("rank", "Rerank candidates and write a TREC run");
  c_rank->add_option("--checkpoint", rank.checkpoint, "Trained checkpoint")->required();
  c_rank->add_option("--corpus", rank.corpus, "Collection directory")->required();
  c_rank->add_option("--candidates", rank.candidates, "Candidate run (default: BM25 top --depth)");
  c_rank->add_option("--depth", rank.depth, "BM25 candidate depth")->check(CLI::PositiveNumber);
  c_rank->add_option("--lambda", rank.lambda, "Weight for the suppressed senses, in (0, 1]");
  c_rank->add_option("--top-senses", rank.top_senses, "Number of senses to suppress");
  c_rank->add_option("--lexicon", rank.lexicon, "Polarity pair file (default: built-in list)");
  c_rank->add_option("--tag", rank.tag, "Run tag");
  c_rank->add_option("--out", rank.out, "Run file (default: stdout)");

  EvalOptions eval;
  auto* c_eval = app.add_subcommand("eval", "MRR and NDCG of a run");
  c_eval->add_option("--run", eval.run, "TREC run file")->required();
  c_eval->add_option("--qrels", eval.qrels, "Relevance judgements");
  c_eval->add_option("--corpus", eval.corpus, "Collection directory holding qrels.txt");
  c_eval->add_option("--cutoffs", eval.cutoffs, "Comma-separated cutoffs");
  c_eval->add_option("--out", eval.out, "CSV output (default: stdout)");
  c_eval->add_option("--seed", eval.seed, "Seed recorded in the output");

  BiasOptions bias;
  auto* c_bias = app.add_subcommand("bias", "RaB and ARaB of a run");
  c_bias->add_option("--run", bias.run, "TREC run file")->required();
  c_bias->add_option("--corpus", bias.corpus, "Collection directory")->required();
  c_bias->add_option("--cutoffs", bias.cutoffs, "Comma-separated cutoffs");
  c_bias->add_option("--variant", bias.variant, "tf, bool or both");
  c_bias->add_option("--female-terms", bias.female_terms, "Comma-separated female terms");
  c_bias->add_option("--male-terms", bias.male_terms, "Comma-separated male terms");
  c_bias->add_flag("--keep-gendered-queries", bias.keep_gendered, "Do not drop queries containing gender terms");
  c_bias->add_flag("--tf-log-one-plus", bias.log_one_plus, "Use log(1 + count) in the TF magnitude");
  c_bias->add_option("--out", bias.out, "CSV output (default: stdout)");
  c_bias->add_option("--seed", bias.seed, "Seed recorded in the output");

  SensesOptions sense_opts;
  auto* c_senses = app.add_subcommand("senses", "Per-sense gender sensitivity scores");
  c_senses->add_option("--checkpoint", sense_opts.checkpoint, "Trained checkpoint")->required();
  c_senses->add_option("--lexicon", sense_opts.lexicon, "Polarity pair file (default: built-in list)");
  c_senses->add_option("--top-senses", sense_opts.top_senses, "Senses marked as suppressed");
  c_senses->add_option("--out", sense_opts.out, "CSV output (default: stdout)");
  c_senses->add_option("--seed", sense_opts.seed, "Seed recorded in the output");

  SweepOptions sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Effectiveness and bias across lambda values");
  c_sweep->add_option("--checkpoint", sweep.checkpoint, "Trained checkpoint")->required();
  c_sweep->add_option("--corpus", sweep.corpus, "Collection directory")->required();
  c_sweep->add_option("--candidates", sweep.candidates, "Candidate run (default: BM25 top --depth)");
  c_sweep->add_option("--depth", sweep.depth, "BM25 candidate depth")->check(CLI::PositiveNumber);
  c_sweep->add_option("--lambdas", sweep.lambdas, "Comma-separated lambda values");
  c_sweep->add_option("--cutoffs", sweep.cutoffs, "Comma-separated bias cutoffs");
  c_sweep->add_option("--top-senses", sweep.top_senses, "Number of senses to suppress");
  c_sweep->add_option("--lexicon", sweep.lexicon, "Polarity pair file (default: built-in list)");
  c_sweep->add_option("--out", sweep.out, "CSV output (default: stdout)");
  c_sweep->add_option("--seed", sweep.seed, "Seed recorded in the output");

  std::vector<const char*> argv{"backrank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_synth->parsed()) return cmd_synth(synth, out);
    if (c_train->parsed()) return cmd_train(train, out);
    if (c_rank->parsed()) return cmd_rank(rank, out);
    if (c_eval->parsed()) return cmd_eval(eval, out);
    if (c_bias->parsed()) return cmd_bias(bias, out);
    if (c_senses->parsed()) return cmd_senses(sense_opts, out);
    if (c_sweep->parsed()) return cmd_sweep(sweep, out);
  } catch (const UsageError& e) {
    err << "backrank: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "backrank: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "backrank: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace backrank::cli
