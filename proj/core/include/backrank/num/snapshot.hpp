// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "backrank/num/tensor.hpp"

// Tensor snapshot layout, all integers and floats little-endian:
//
//   u32  rank
//   u64  dims[rank]
//   f64  values[product(dims)]   row-major, IEEE-754 binary64
//
// Values are copied bit for bit, so a reloaded tensor is identical to the saved one.
namespace backrank::num {

void write_tensor(std::ostream& out, const Tensor& tensor);
/// Throws ParseError (line = byte offset of the bad field) on truncated or invalid data.
Tensor read_tensor(std::istream& in, const char* source = "<snapshot>");

}  // namespace backrank::num
