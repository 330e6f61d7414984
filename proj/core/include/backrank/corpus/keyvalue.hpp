// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "backrank/error.hpp"

// Flat `key = value` configuration files. `#` starts a comment; blank lines are skipped.
namespace backrank::corpus {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Throws std::runtime_error if the file cannot be opened and ParseError on a line without '='.
std::vector<KeyValue> read_key_values(const std::filesystem::path& path);

std::string trim(std::string_view s);
/// Comma-separated items, trimmed, empty items dropped.
std::vector<std::string> split_list(std::string_view value);
/// true/false/1/0/yes/no/on/off.
bool parse_bool(std::string_view key, std::string_view value);

/// Whole-string numeric conversion; DomainError names the key on failure.
template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw DomainError(fmt::format("{}: '{}' is not a valid number", key, value));
  }
  return out;
}

}  // namespace backrank::corpus
