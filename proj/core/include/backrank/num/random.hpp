// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace backrank::num {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seedable random source with a fully specified output stream.
///
/// Engine: std::mt19937_64 (MT19937-64, identical output in every conforming
/// implementation and easy to reproduce elsewhere). The std distributions are
/// implementation-defined, so the conversions are written out:
///   uniform()        (next() >> 11) * 2^-53, in [0, 1)
///   below(n)         rejection sampling on next() to drop modulo bias
///   normal()         Box-Muller, u1 = 1 - uniform(), u2 = uniform(), cosine branch only
///   shuffle()        Fisher-Yates from the back, j = below(i + 1)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Generator for sub-stream `stream` of `seed`: seeded with splitmix64(seed ^ splitmix64(stream)).
  static Rng stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n);
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      using std::swap;
      swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace backrank::num
