// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/senses/sense_map.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "backrank/error.hpp"

namespace backrank::senses {

SenseMap SenseMap::identity(std::size_t num_senses) { return SenseMap{std::vector<double>(num_senses, 1.0), 1.0, {}}; }

SenseMap SenseMap::uniform(std::size_t num_senses, double weight) {
  SenseMap map{std::vector<double>(num_senses, weight), weight, {}};
  map.validate(num_senses);
  return map;
}

SenseMap SenseMap::from_weights(std::vector<double> weights) {
  SenseMap map{std::move(weights), 1.0, {}};
  map.validate(map.weights.size());
  return map;
}

bool SenseMap::is_identity() const {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 1.0; });
}

void SenseMap::validate(std::size_t num_senses) const {
  if (weights.size() != num_senses) {
    throw DomainError(fmt::format("sense map has {} weights, model has {} senses", weights.size(), num_senses));
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (!(weights[l] > 0.0) || !std::isfinite(weights[l])) {
      throw DomainError(fmt::format("sense map weight {} is {}; weights must be positive", l, weights[l]));
    }
  }
}

SenseMap SenseMap::compose(const SenseMap& other) const {
  if (other.size() != size()) throw DomainError("cannot compose sense maps of different sizes");
  SenseMap out{weights, lambda * other.lambda, {}};
  for (std::size_t l = 0; l < size(); ++l) out.weights[l] *= other.weights[l];
  return out;
}

}  // namespace backrank::senses
