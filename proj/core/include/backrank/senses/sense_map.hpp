// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace backrank::senses {

/// Per-sense multipliers applied inside the output aggregation.
///
/// Built by build_sense_map(): weights[l] == lambda for l in `suppressed`, 1 otherwise.
/// The factories below produce maps that are not tied to a suppression set.
struct SenseMap {
  std::vector<double> weights;
  double lambda = 1.0;
  std::vector<std::size_t> suppressed;

  static SenseMap identity(std::size_t num_senses);
  static SenseMap uniform(std::size_t num_senses, double weight);
  static SenseMap from_weights(std::vector<double> weights);

  std::size_t size() const noexcept { return weights.size(); }
  bool is_identity() const;
  /// Throws DomainError unless there are exactly `num_senses` positive, finite weights.
  void validate(std::size_t num_senses) const;
  /// Elementwise product: applying the result equals applying `*this` and `other`.
  SenseMap compose(const SenseMap& other) const;
};

}  // namespace backrank::senses
