// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/num/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "backrank/error.hpp"

namespace backrank::num {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* source) {
  T value{};
  const auto offset = static_cast<std::size_t>(in.tellg());
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw ParseError(source, offset, "truncated tensor snapshot");
  }
  return value;
}

}  // namespace

void write_tensor(std::ostream& out, const Tensor& tensor) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.rank()));
  for (std::size_t d : tensor.shape()) put<std::uint64_t>(out, d);
  auto values = tensor.data();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

Tensor read_tensor(std::istream& in, const char* source) {
  const auto rank = get<std::uint32_t>(in, source);
  if (rank == 0 || rank > 8) throw ParseError(source, static_cast<std::size_t>(in.tellg()), "bad tensor rank");
  Shape shape(rank);
  std::size_t count = 1;
  for (auto& d : shape) {
    d = static_cast<std::size_t>(get<std::uint64_t>(in, source));
    if (d == 0 || d > (1ULL << 32)) {
      throw ParseError(source, static_cast<std::size_t>(in.tellg()), "bad tensor dimension");
    }
    count *= d;
  }
  std::vector<double> values(count);
  const auto offset = static_cast<std::size_t>(in.tellg());
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)))) {
    throw ParseError(source, offset, "truncated tensor values");
  }
  return Tensor(std::move(shape), std::move(values));
}

}  // namespace backrank::num
