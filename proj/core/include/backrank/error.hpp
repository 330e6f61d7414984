// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace backrank {

/// Tensor shapes that do not fit the operation (inner dimension mismatch etc).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the mathematical domain of an operation: out-of-vocabulary
/// index, non-positive sense weight, empty relevance vector, zero vector.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// API misuse: non-scalar loss, second backward on a consumed tape, eps = 0.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file. what() carries "path:line: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace backrank
