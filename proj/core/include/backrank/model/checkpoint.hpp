// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "backrank/corpus/vocab.hpp"
#include "backrank/model/backpack.hpp"

// Checkpoint layout (little-endian):
//
//   "BACKRANK-CKPT\n"             magic
//   u32   format version (1)
//   u64   header length, then that many bytes of `key = value` lines:
//           model configuration, then `meta.<key>` training metadata
//   u64   vocabulary size, then per token: u32 length + bytes
//   u32   parameter count, then per parameter: u32 name length + name + tensor snapshot
namespace backrank::model {

inline constexpr std::string_view kCheckpointMagic = "BACKRANK-CKPT\n";
inline constexpr std::uint32_t kCheckpointVersion = 1;

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Checkpoint {
  corpus::Vocab vocab;
  Backpack model;
  Metadata meta;

  /// Value of a metadata key, or `fallback`.
  std::string meta_value(std::string_view key, std::string_view fallback = {}) const;
};

/// Sets a configuration field from its textual form. Returns false for an unknown key;
/// throws DomainError for a bad value.
bool apply_backpack_key(BackpackConfig& config, std::string_view key, std::string_view value);
std::vector<std::pair<std::string, std::string>> backpack_config_entries(const BackpackConfig& config);

void write_checkpoint(std::ostream& out, const Backpack& model, const corpus::Vocab& vocab, const Metadata& meta);
void save_checkpoint(const std::filesystem::path& path, const Backpack& model, const corpus::Vocab& vocab,
                     const Metadata& meta);
/// Throws ParseError on a bad magic string, unsupported version, or truncation.
Checkpoint read_checkpoint(std::istream& in, const std::string& source);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace backrank::model
