// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/model/backpack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "backrank/error.hpp"
#include "backrank/num/ops.hpp"
#include "backrank/num/random.hpp"

namespace backrank::model {

namespace ops = backrank::num;

void BackpackConfig::validate() const {
  auto positive = [](std::size_t v, const char* field) {
    if (v == 0) throw DomainError(fmt::format("{}: must be at least 1", field));
  };
  positive(vocab_size, "vocab_size");
  positive(embed_dim, "embed_dim");
  positive(num_senses, "num_senses");
  positive(sense_hidden, "sense_hidden");
  positive(context_dim, "context_dim");
  positive(context_layers, "context_layers");
  positive(context_heads, "context_heads");
  positive(ffn_hidden, "ffn_hidden");
  positive(head_hidden, "head_hidden");
  positive(max_seq_len, "max_seq_len");
  if (context_dim % context_heads != 0) {
    throw DomainError(fmt::format("context_heads: {} does not divide context_dim {}", context_heads, context_dim));
  }
}

const char* pooling_name(Pooling pooling) { return pooling == Pooling::last ? "last" : "mean"; }

Pooling parse_pooling(std::string_view name) {
  if (name == "last") return Pooling::last;
  if (name == "mean") return Pooling::mean;
  throw DomainError(fmt::format("pooling: unknown value '{}' (expected last or mean)", name));
}

namespace {

Tensor random_matrix(num::Rng& rng, std::size_t rows, std::size_t cols, double stddev) {
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = rng.normal(0.0, stddev);
  return Tensor({rows, cols}, std::move(v), true);
}

Tensor zero_vector(std::size_t n) { return Tensor::zeros({n}, true); }

double fan_in_scale(std::size_t fan_in) { return 1.0 / std::sqrt(static_cast<double>(fan_in)); }

}  // namespace

bool SenseTable::covers(std::span<const std::size_t> tokens) const {
  return std::all_of(tokens.begin(), tokens.end(),
                     [this](std::size_t t) { return t < slot_.size() && slot_[t] != kMissing; });
}

std::vector<std::size_t> SenseTable::rows_for(std::span<const std::size_t> tokens) const {
  std::vector<std::size_t> rows;
  rows.reserve(tokens.size());
  for (std::size_t t : tokens) {
    if (t >= slot_.size() || slot_[t] == kMissing) throw DomainError(fmt::format("sense table lacks token {}", t));
    rows.push_back(slot_[t]);
  }
  return rows;
}

Tensor Backpack::add_param(std::string name, Tensor value) {
  params_.push_back({std::move(name), value});
  return value;
}

Backpack::Backpack(BackpackConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  const auto& c = config_;
  num::Rng rng = num::Rng::stream(seed, 0x5e5e);
  const std::size_t kd = c.num_senses * c.embed_dim;

  sense_embed_ = add_param("sense.embed", random_matrix(rng, c.vocab_size, c.embed_dim, 1.0));
  sense_w1_ = add_param("sense.w1", random_matrix(rng, c.embed_dim, c.sense_hidden, fan_in_scale(c.embed_dim)));
  sense_b1_ = add_param("sense.b1", zero_vector(c.sense_hidden));
  sense_w2_ = add_param("sense.w2", random_matrix(rng, c.sense_hidden, kd, fan_in_scale(c.sense_hidden)));
  sense_b2_ = add_param("sense.b2", zero_vector(kd));
  sense_residual_ = add_param("sense.residual", Tensor::zeros({c.vocab_size, kd}, true));

  ctx_token_ = add_param("ctx.token_embed", random_matrix(rng, c.vocab_size, c.context_dim, 1.0));
  ctx_pos_ = add_param("ctx.pos_embed", random_matrix(rng, c.max_seq_len, c.context_dim, 0.1));
  ctx_seg_ = add_param("ctx.seg_embed", random_matrix(rng, 2, c.context_dim, 0.1));
  const double s_ctx = fan_in_scale(c.context_dim);
  for (std::size_t l = 0; l < c.context_layers; ++l) {
    const std::string p = fmt::format("ctx.{}.", l);
    Layer layer;
    layer.wq = add_param(p + "wq", random_matrix(rng, c.context_dim, c.context_dim, s_ctx));
    layer.wk = add_param(p + "wk", random_matrix(rng, c.context_dim, c.context_dim, s_ctx));
    layer.wv = add_param(p + "wv", random_matrix(rng, c.context_dim, c.context_dim, s_ctx));
    layer.wo = add_param(p + "wo", random_matrix(rng, c.context_dim, c.context_dim, s_ctx));
    layer.ff1 = add_param(p + "ff1", random_matrix(rng, c.context_dim, c.ffn_hidden, s_ctx));
    layer.ff1_b = add_param(p + "ff1_b", zero_vector(c.ffn_hidden));
    layer.ff2 = add_param(p + "ff2", random_matrix(rng, c.ffn_hidden, c.context_dim, fan_in_scale(c.ffn_hidden)));
    layer.ff2_b = add_param(p + "ff2_b", zero_vector(c.context_dim));
    layers_.push_back(std::move(layer));
  }
  const std::size_t kc = c.num_senses * c.context_dim;
  alpha_wq_ = add_param("alpha.wq", random_matrix(rng, c.context_dim, kc, s_ctx));
  alpha_wk_ = add_param("alpha.wk", random_matrix(rng, c.context_dim, kc, s_ctx));

  head_w1_ = add_param("head.w1", random_matrix(rng, c.embed_dim, c.head_hidden, fan_in_scale(c.embed_dim)));
  head_b1_ = add_param("head.b1", zero_vector(c.head_hidden));
  head_w2_ = add_param("head.w2", random_matrix(rng, c.head_hidden, 1, fan_in_scale(c.head_hidden)));
  head_b2_ = add_param("head.b2", zero_vector(1));

  lm_w_ = add_param("lm.w", random_matrix(rng, c.embed_dim, c.vocab_size, fan_in_scale(c.embed_dim)));
}

Backpack Backpack::clone() const {
  Backpack copy(config_, 0);
  for (const auto& p : params_) copy.load_parameter(p.name, p.value);
  return copy;
}

Tensor Backpack::parameter(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return p.value;
  }
  throw DomainError(fmt::format("model has no parameter '{}'", name));
}

void Backpack::load_parameter(std::string_view name, const Tensor& value) {
  Tensor target = parameter(name);
  if (target.shape() != value.shape()) {
    throw ShapeError(fmt::format("parameter '{}': expected shape {}, got {}", name, num::shape_string(target.shape()),
                                 num::shape_string(value.shape())));
  }
  std::copy(value.data().begin(), value.data().end(), target.mutable_data().begin());
}

void Backpack::plant_sense(std::size_t token, std::size_t sense, std::span<const double> direction) {
  check_tokens(std::span<const std::size_t>(&token, 1));
  if (sense >= config_.num_senses) throw DomainError(fmt::format("sense index {} out of range", sense));
  if (direction.size() != config_.embed_dim) throw ShapeError("plant_sense: direction must have embed_dim entries");
  auto values = sense_residual_.mutable_data();
  const std::size_t offset = token * config_.num_senses * config_.embed_dim + sense * config_.embed_dim;
  for (std::size_t i = 0; i < direction.size(); ++i) values[offset + i] += direction[i];
}

void Backpack::check_tokens(std::span<const std::size_t> tokens) const {
  if (tokens.empty()) throw DomainError("empty token sequence");
  if (tokens.size() > config_.max_seq_len) {
    throw DomainError(fmt::format("sequence length {} exceeds max_seq_len {}", tokens.size(), config_.max_seq_len));
  }
  for (std::size_t t : tokens) {
    if (t >= config_.vocab_size) {
      throw DomainError(fmt::format("token id {} outside vocabulary of size {}", t, config_.vocab_size));
    }
  }
}

// n x (k*d): one row per position, one d-wide block per sense.
Tensor Backpack::sense_block(std::span<const std::size_t> tokens) const {
  Tensor e = ops::gather_rows(sense_embed_, tokens);
  Tensor h = ops::gelu(ops::add_bias(ops::matmul(e, sense_w1_), sense_b1_));
  Tensor out = ops::add_bias(ops::matmul(h, sense_w2_), sense_b2_);
  return ops::add(out, ops::gather_rows(sense_residual_, tokens));
}

Tensor Backpack::sense_vectors(std::size_t token) const {
  check_tokens(std::span<const std::size_t>(&token, 1));
  const Tensor block = sense_block(std::span<const std::size_t>(&token, 1));
  const std::size_t d = config_.embed_dim, k = config_.num_senses;
  std::vector<double> out(d * k);
  auto v = block.data();
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t i = 0; i < d; ++i) out[i * k + l] = v[l * d + i];
  }
  return Tensor({d, k}, std::move(out));
}

SenseTable Backpack::sense_table(std::span<const std::size_t> tokens) const {
  std::vector<std::size_t> slot(config_.vocab_size, SenseTable::kMissing);
  std::vector<std::size_t> distinct;
  for (std::size_t t : tokens) {
    if (t >= config_.vocab_size) {
      throw DomainError(fmt::format("token id {} outside vocabulary of size {}", t, config_.vocab_size));
    }
    if (slot[t] == SenseTable::kMissing) {
      slot[t] = distinct.size();
      distinct.push_back(t);
    }
  }
  if (distinct.empty()) throw DomainError("sense table over an empty token set");
  return SenseTable(sense_block(distinct), std::move(slot));
}

SenseTable Backpack::sense_table() const {
  std::vector<std::size_t> all(config_.vocab_size);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return sense_table(all);
}

std::vector<Tensor> Backpack::sense_matrices(std::span<const std::size_t> tokens, const SenseTable* table) const {
  check_tokens(tokens);
  const Tensor block = table != nullptr ? ops::gather_rows(table->block(), table->rows_for(tokens)) : sense_block(tokens);
  std::vector<Tensor> out;
  out.reserve(config_.num_senses);
  for (std::size_t l = 0; l < config_.num_senses; ++l) {
    out.push_back(ops::slice_cols(block, l * config_.embed_dim, config_.embed_dim));
  }
  return out;
}

Tensor Backpack::context_states(std::span<const std::size_t> tokens) const {
  const std::size_t n = tokens.size();
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::vector<std::size_t> segments(n, 0);
  const auto sep = std::find(tokens.begin(), tokens.end(), config_.sep_token);
  for (std::size_t i = static_cast<std::size_t>(sep - tokens.begin()) + 1; i < n; ++i) segments[i] = 1;

  Tensor h = ops::add(ops::add(ops::gather_rows(ctx_token_, tokens), ops::gather_rows(ctx_pos_, positions)),
                      ops::gather_rows(ctx_seg_, segments));
  const std::size_t heads = config_.context_heads;
  const std::size_t dh = config_.context_dim / heads;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dh));
  for (const auto& layer : layers_) {
    const Tensor q = ops::matmul(h, layer.wq);
    const Tensor k = ops::matmul(h, layer.wk);
    const Tensor v = ops::matmul(h, layer.wv);
    std::vector<Tensor> head_out;
    head_out.reserve(heads);
    for (std::size_t a = 0; a < heads; ++a) {
      const Tensor qa = ops::slice_cols(q, a * dh, dh);
      const Tensor ka = ops::slice_cols(k, a * dh, dh);
      const Tensor va = ops::slice_cols(v, a * dh, dh);
      const Tensor att =
          ops::softmax_rows(ops::scale(ops::matmul(qa, ops::transpose(ka)), inv_sqrt), config_.causal);
      head_out.push_back(ops::matmul(att, va));
    }
    const Tensor mixed = heads == 1 ? head_out.front() : ops::concat_cols(head_out);
    h = ops::add(h, ops::matmul(mixed, layer.wo));
    const Tensor ff = ops::gelu(ops::add_bias(ops::matmul(h, layer.ff1), layer.ff1_b));
    h = ops::add(h, ops::add_bias(ops::matmul(ff, layer.ff2), layer.ff2_b));
  }
  return h;
}

ContextWeights Backpack::contextualize(std::span<const std::size_t> tokens) const {
  check_tokens(tokens);
  const Tensor h = context_states(tokens);
  const Tensor q = ops::matmul(h, alpha_wq_);
  const Tensor k = ops::matmul(h, alpha_wk_);
  const std::size_t dc = config_.context_dim;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dc));
  ContextWeights weights;
  weights.alpha.reserve(config_.num_senses);
  for (std::size_t l = 0; l < config_.num_senses; ++l) {
    const Tensor ql = ops::slice_cols(q, l * dc, dc);
    const Tensor kl = ops::slice_cols(k, l * dc, dc);
    weights.alpha.push_back(
        ops::softmax_rows(ops::scale(ops::matmul(ql, ops::transpose(kl)), inv_sqrt), config_.causal));
  }
  return weights;
}

Tensor Backpack::aggregate(const ContextWeights& weights, std::span<const Tensor> senses, const SenseMap* map) {
  if (weights.num_senses() == 0 || senses.size() != weights.num_senses()) {
    throw ShapeError(fmt::format("aggregate: {} alpha maps for {} sense matrices", weights.num_senses(),
                                 senses.size()));
  }
  if (map != nullptr) map->validate(senses.size());
  Tensor out;
  for (std::size_t l = 0; l < senses.size(); ++l) {
    Tensor term = ops::matmul(weights.alpha[l], senses[l]);
    if (map != nullptr) term = ops::scale(term, map->weights[l]);
    out = out.defined() ? ops::add(out, term) : term;
  }
  return out;
}

std::vector<Tensor> Backpack::contributions(std::span<const std::size_t> tokens) const {
  const ContextWeights weights = contextualize(tokens);
  const std::vector<Tensor> senses = sense_matrices(tokens);
  std::vector<Tensor> out;
  out.reserve(senses.size());
  for (std::size_t l = 0; l < senses.size(); ++l) out.push_back(ops::matmul(weights.alpha[l], senses[l]));
  return out;
}

Tensor Backpack::forward(std::span<const std::size_t> tokens) const {
  const ContextWeights weights = contextualize(tokens);
  const std::vector<Tensor> senses = sense_matrices(tokens);
  return aggregate(weights, senses, nullptr);
}

Tensor Backpack::forward_reweighted(std::span<const std::size_t> tokens, const SenseMap& map) const {
  map.validate(config_.num_senses);
  const ContextWeights weights = contextualize(tokens);
  const std::vector<Tensor> senses = sense_matrices(tokens);
  return aggregate(weights, senses, &map);
}

TokenIds Backpack::pack(std::span<const std::size_t> query, std::span<const std::size_t> doc) const {
  const std::size_t n_max = config_.max_seq_len;
  const std::size_t q_len = std::min(query.size(), n_max - 1);
  const std::size_t d_len = std::min(doc.size(), n_max - 1 - q_len);
  TokenIds packed;
  packed.reserve(q_len + 1 + d_len);
  packed.insert(packed.end(), query.begin(), query.begin() + static_cast<std::ptrdiff_t>(q_len));
  packed.push_back(config_.sep_token);
  packed.insert(packed.end(), doc.begin(), doc.begin() + static_cast<std::ptrdiff_t>(d_len));
  return packed;
}

Tensor Backpack::pooled_output(std::span<const std::size_t> tokens, const SenseMap* map,
                               const SenseTable* table) const {
  if (map != nullptr) map->validate(config_.num_senses);
  if (config_.pooling == Pooling::mean) {
    const ContextWeights weights = contextualize(tokens);
    return ops::mean_rows(aggregate(weights, sense_matrices(tokens, table), map));
  }
  // Only o_n is needed: alpha_l restricted to its last row, then that row times S_l.
  check_tokens(tokens);
  const std::size_t n = tokens.size();
  const Tensor h = context_states(tokens);
  const Tensor q = ops::matmul(ops::row(h, n - 1), alpha_wq_);
  const Tensor k = ops::matmul(h, alpha_wk_);
  const std::vector<Tensor> senses = sense_matrices(tokens, table);
  const std::size_t dc = config_.context_dim;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dc));
  Tensor out;
  for (std::size_t l = 0; l < config_.num_senses; ++l) {
    const Tensor ql = ops::slice_cols(q, l * dc, dc);
    const Tensor kl = ops::slice_cols(k, l * dc, dc);
    const Tensor alpha_last = ops::softmax_rows(ops::scale(ops::matmul(ql, ops::transpose(kl)), inv_sqrt), false);
    Tensor term = ops::matmul(alpha_last, senses[l]);
    if (map != nullptr) term = ops::scale(term, map->weights[l]);
    out = out.defined() ? ops::add(out, term) : term;
  }
  return out;
}

Tensor Backpack::relevance_logit(std::span<const std::size_t> packed, const SenseMap* map,
                                 const SenseTable* table) const {
  const Tensor p = ops::reshape(pooled_output(packed, map, table), {1, config_.embed_dim});
  const Tensor hidden = ops::tanh(ops::add_bias(ops::matmul(p, head_w1_), head_b1_));
  return ops::reshape(ops::add_bias(ops::matmul(hidden, head_w2_), head_b2_), {1});
}

double Backpack::relevance_score(std::span<const std::size_t> query, std::span<const std::size_t> doc,
                                 const SenseMap* map) const {
  return ops::sigmoid(relevance_logit(pack(query, doc), map)).item();
}

Tensor Backpack::lm_logits(std::span<const std::size_t> tokens) const {
  return ops::matmul(forward(tokens), lm_w_);
}

Tensor Backpack::lm_probabilities(std::span<const std::size_t> tokens) const {
  return ops::softmax(lm_logits(tokens), 1);
}

}  // namespace backrank::model
