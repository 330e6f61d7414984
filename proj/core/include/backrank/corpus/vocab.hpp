// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace backrank::corpus {

/// Word-level token <-> index bijection. Indices 0, 1, 2 are reserved for the
/// padding, unknown and separator tokens; their bracketed spellings can never be
/// produced by tokenize(), so they never collide with corpus words.
class Vocab {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;
  static constexpr std::size_t kSep = 2;
  static constexpr std::string_view kPadToken = "[pad]";
  static constexpr std::string_view kUnkToken = "[unk]";
  static constexpr std::string_view kSepToken = "[sep]";

  Vocab();

  /// Reserved tokens followed by every distinct token of `texts` in byte order.
  static Vocab build(std::span<const std::vector<std::string>> texts);
  /// Rebuilds a vocabulary from its index order; throws DomainError if the
  /// reserved slots are wrong or a token repeats.
  static Vocab from_tokens(std::vector<std::string> tokens);

  std::size_t add(std::string_view token);
  std::optional<std::size_t> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }
  /// Index of `token`, kUnk when it is out of vocabulary.
  std::size_t id(std::string_view token) const;
  const std::string& token(std::size_t index) const;
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;
  std::vector<std::string> decode(std::span<const std::size_t> ids) const;

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace backrank::corpus
