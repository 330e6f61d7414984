// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "backrank/num/tensor.hpp"

// Differentiable primitives. Every op records itself on the active tape when at
// least one input requires grad; without an active tape the result is a plain
// value. Storage is row-major and there is no implicit broadcasting.
namespace backrank::num {

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
/// a[m x n] + bias[n] added to every row.
Tensor add_bias(const Tensor& a, const Tensor& bias);

Tensor tanh(const Tensor& a);
Tensor sigmoid(const Tensor& a);
/// tanh approximation of GELU.
Tensor gelu(const Tensor& a);

/// Numerically stable softmax along `axis`.
Tensor softmax(const Tensor& a, std::size_t axis);
Tensor log_softmax(const Tensor& a, std::size_t axis);
/// Row softmax of a square score matrix. With `causal`, entry (i, j) for j > i is
/// excluded from the normalization and comes out exactly 0.
Tensor softmax_rows(const Tensor& scores, bool causal);

Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
Tensor dot(const Tensor& a, const Tensor& b);

/// Embedding lookup: rows of table[V x d] picked by indices -> [n x d].
Tensor gather_rows(const Tensor& table, std::span<const std::size_t> indices);
Tensor slice_cols(const Tensor& a, std::size_t start, std::size_t count);
Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor concat_rows(const std::vector<Tensor>& parts);
Tensor row(const Tensor& a, std::size_t index);
Tensor mean_rows(const Tensor& a);
Tensor reshape(const Tensor& a, Shape shape);

/// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Not differentiable.
/// Throws ShapeError on length mismatch and DomainError on a zero vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);
double cosine_similarity(const Tensor& u, const Tensor& v);

}  // namespace backrank::num
