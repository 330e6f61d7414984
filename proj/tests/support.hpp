// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "backrank/model/backpack.hpp"
#include "backrank/num/random.hpp"
#include "backrank/num/tensor.hpp"

namespace backrank::testing {

inline num::Tensor random_tensor(num::Rng& rng, num::Shape shape, double scale = 1.0, bool requires_grad = false) {
  std::vector<double> v(num::element_count(shape));
  for (auto& x : v) x = rng.normal(0.0, scale);
  return num::Tensor(std::move(shape), std::move(v), requires_grad);
}

inline std::vector<std::size_t> random_tokens(num::Rng& rng, std::size_t n, std::size_t vocab) {
  std::vector<std::size_t> t(n);
  for (auto& x : t) x = rng.below(vocab);
  return t;
}

/// Small model for fast tests.
inline model::BackpackConfig tiny_config(std::size_t vocab = 12, std::size_t d = 4, std::size_t k = 2) {
  model::BackpackConfig c;
  c.vocab_size = vocab;
  c.embed_dim = d;
  c.num_senses = k;
  c.sense_hidden = 6;
  c.context_dim = 4;
  c.context_heads = 2;
  c.ffn_hidden = 6;
  c.head_hidden = 5;
  c.max_seq_len = 12;
  return c;
}

/// Zeroes the sense projector so C(x) equals the residual rows, which tests then set directly.
inline void make_senses_explicit(model::Backpack& m) {
  for (const char* name : {"sense.w2", "sense.b2", "sense.residual"}) {
    const auto p = m.parameter(name);
    m.load_parameter(name, num::Tensor::zeros(p.shape()));
  }
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("backrank-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace backrank::testing
