// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/corpus/vocab.hpp"

#include <set>

#include <fmt/format.h>

#include "backrank/error.hpp"

namespace backrank::corpus {

Vocab::Vocab() {
  add(kPadToken);
  add(kUnkToken);
  add(kSepToken);
}

Vocab Vocab::build(std::span<const std::vector<std::string>> texts) {
  std::set<std::string, std::less<>> distinct;
  for (const auto& text : texts) distinct.insert(text.begin(), text.end());
  Vocab v;
  for (const auto& t : distinct) v.add(t);
  return v;
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 3 || tokens[kPad] != kPadToken || tokens[kUnk] != kUnkToken || tokens[kSep] != kSepToken) {
    throw DomainError("vocabulary does not start with the reserved [pad] [unk] [sep] tokens");
  }
  Vocab v;
  for (std::size_t i = 3; i < tokens.size(); ++i) {
    if (v.contains(tokens[i])) throw DomainError(fmt::format("vocabulary token '{}' appears twice", tokens[i]));
    v.add(tokens[i]);
  }
  return v;
}

std::size_t Vocab::add(std::string_view token) {
  if (auto found = find(token)) return *found;
  const std::size_t id = tokens_.size();
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

std::optional<std::size_t> Vocab::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocab::id(std::string_view token) const { return find(token).value_or(kUnk); }

const std::string& Vocab::token(std::size_t index) const {
  if (index >= tokens_.size()) throw DomainError(fmt::format("token index {} outside vocabulary of {}", index, size()));
  return tokens_[index];
}

std::vector<std::size_t> Vocab::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id(t));
  return ids;
}

std::vector<std::string> Vocab::decode(std::span<const std::size_t> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (std::size_t i : ids) out.push_back(token(i));
  return out;
}

}  // namespace backrank::corpus
