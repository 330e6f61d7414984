// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace backrank::corpus {

/// Lowercases ASCII letters and splits on every byte that is not an ASCII letter,
/// an ASCII digit or part of a multi-byte UTF-8 sequence. Empty tokens are dropped.
/// "co-op 2025" -> {"co", "op", "2025"}.
std::vector<std::string> tokenize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace backrank::corpus
