// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "backrank/num/tensor.hpp"
#include "backrank/senses/sense_map.hpp"

namespace backrank::model {

using num::Tensor;
using senses::SenseMap;
using TokenIds = std::vector<std::size_t>;

enum class Pooling { last, mean };

struct BackpackConfig {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 16;      // d
  std::size_t num_senses = 4;      // k
  std::size_t sense_hidden = 32;   // hidden width of the sense projector
  std::size_t context_dim = 16;    // width of the contextualization network
  std::size_t context_layers = 1;
  std::size_t context_heads = 2;
  std::size_t ffn_hidden = 32;
  std::size_t head_hidden = 16;    // h in the relevance head
  std::size_t max_seq_len = 32;    // n_max
  std::size_t sep_token = 2;       // positions after the first separator form segment 1
  bool causal = true;
  Pooling pooling = Pooling::last;

  /// Throws DomainError naming the first offending field.
  void validate() const;
};

const char* pooling_name(Pooling pooling);
Pooling parse_pooling(std::string_view name);

/// Contextualization weights: alpha[l] is the n x n matrix alpha_l, rows indexed by
/// output position i, columns by source position j.
struct ContextWeights {
  std::vector<Tensor> alpha;

  std::size_t num_senses() const noexcept { return alpha.size(); }
  std::size_t length() const { return alpha.empty() ? 0 : alpha.front().rows(); }
  double operator()(std::size_t sense, std::size_t i, std::size_t j) const { return alpha[sense](i, j); }
};

/// Sense vectors of a token set computed in one pass, as rows of a (u x k*d) block.
/// Lookups give the same bits as computing the tokens one by one. Built under an
/// active tape, the block carries gradients back to the sense parameters.
class SenseTable {
 public:
  SenseTable() = default;
  SenseTable(Tensor block, std::vector<std::size_t> slot) : block_(std::move(block)), slot_(std::move(slot)) {}

  bool covers(std::span<const std::size_t> tokens) const;
  /// Row indices of `tokens` within block(). Throws DomainError for a missing token.
  std::vector<std::size_t> rows_for(std::span<const std::size_t> tokens) const;
  const Tensor& block() const noexcept { return block_; }

  static constexpr std::size_t kMissing = static_cast<std::size_t>(-1);

 private:
  Tensor block_;
  std::vector<std::size_t> slot_;  // token id -> row, kMissing if absent
};

struct NamedTensor {
  std::string name;
  Tensor value;
};

/// Backpack encoder with a scalar relevance head and a log-linear LM head.
///
/// Sense vectors: C(x) = reshape(W2 gelu(W1 e_x + b1) + b2 + B[x]) with one d-wide
/// block per sense. B is a per-token residual table (zero at init).
/// Output: o_i = sum_j sum_l w_l alpha_lij C(x_j)_l, with the w_l multiply skipped
/// entirely when no map is given.
///
/// Copies are not allowed because parameters are shared handles; use clone().
class Backpack {
 public:
  Backpack(BackpackConfig config, std::uint64_t seed);
  Backpack(Backpack&&) noexcept = default;
  Backpack& operator=(Backpack&&) noexcept = default;
  Backpack(const Backpack&) = delete;
  Backpack& operator=(const Backpack&) = delete;

  Backpack clone() const;

  const BackpackConfig& config() const noexcept { return config_; }
  std::size_t num_senses() const noexcept { return config_.num_senses; }

  /// d x k matrix whose column l is C(token)_l. Not recorded on any tape.
  Tensor sense_vectors(std::size_t token) const;
  /// Per-sense n x d matrices S_l with row j = C(x_j)_l.
  std::vector<Tensor> sense_matrices(std::span<const std::size_t> tokens, const SenseTable* table = nullptr) const;
  /// Sense vectors for the distinct ids in `tokens`, or for the whole vocabulary.
  SenseTable sense_table(std::span<const std::size_t> tokens) const;
  SenseTable sense_table() const;
  ContextWeights contextualize(std::span<const std::size_t> tokens) const;

  /// n x d outputs.
  Tensor forward(std::span<const std::size_t> tokens) const;
  Tensor forward_reweighted(std::span<const std::size_t> tokens, const SenseMap& map) const;
  /// Per-sense terms alpha_l S_l (each n x d, unweighted); their sum is forward().
  std::vector<Tensor> contributions(std::span<const std::size_t> tokens) const;
  /// sum_l w_l alpha_l S_l, or the plain sum when `map` is null.
  static Tensor aggregate(const ContextWeights& weights, std::span<const Tensor> senses, const SenseMap* map);

  /// query ++ [sep] ++ doc, dropping the document tail (then the query tail) to fit n_max.
  TokenIds pack(std::span<const std::size_t> query, std::span<const std::size_t> doc) const;

  /// Pre-sigmoid relevance of a packed sequence; a one-element tensor. With last-position
  /// pooling only the final output row is aggregated. `table` must cover the sequence.
  Tensor relevance_logit(std::span<const std::size_t> packed, const SenseMap* map = nullptr,
                         const SenseTable* table = nullptr) const;
  double relevance_score(std::span<const std::size_t> query, std::span<const std::size_t> doc,
                         const SenseMap* map = nullptr) const;

  /// n x |V| logits of the LM head, and their row-wise softmax.
  Tensor lm_logits(std::span<const std::size_t> tokens) const;
  Tensor lm_probabilities(std::span<const std::size_t> tokens) const;

  /// All trainable tensors in a fixed order.
  const std::vector<NamedTensor>& parameters() const noexcept { return params_; }
  Tensor parameter(std::string_view name) const;
  /// Replaces a parameter's values; shape must match.
  void load_parameter(std::string_view name, const Tensor& value);

  /// Adds `direction` to C(token)_sense through the residual table.
  void plant_sense(std::size_t token, std::size_t sense, std::span<const double> direction);

 private:
  Tensor add_param(std::string name, Tensor value);
  void check_tokens(std::span<const std::size_t> tokens) const;
  Tensor sense_block(std::span<const std::size_t> tokens) const;
  Tensor context_states(std::span<const std::size_t> tokens) const;
  Tensor pooled_output(std::span<const std::size_t> tokens, const SenseMap* map, const SenseTable* table) const;

  struct Layer {
    Tensor wq, wk, wv, wo, ff1, ff1_b, ff2, ff2_b;
  };

  BackpackConfig config_;
  std::vector<NamedTensor> params_;
  Tensor sense_embed_, sense_w1_, sense_b1_, sense_w2_, sense_b2_, sense_residual_;
  Tensor ctx_token_, ctx_pos_, ctx_seg_;
  std::vector<Layer> layers_;
  Tensor alpha_wq_, alpha_wk_;
  Tensor head_w1_, head_b1_, head_w2_, head_b2_;
  Tensor lm_w_;
};

}  // namespace backrank::model
