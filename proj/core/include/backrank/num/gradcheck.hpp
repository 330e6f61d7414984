// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>

#include "backrank/num/tensor.hpp"

namespace backrank::num {

/// Compares the taped gradient of a scalar function with central differences.
///
/// Returns max over coordinates of |analytic - numeric| / max(1, |analytic|).
/// `f` must build its result from the tensor it is given (through num ops) and
/// return a single-element tensor. eps must be positive.
double finite_diff_check(const std::function<Tensor(const Tensor&)>& f, const Tensor& x, double eps);

/// Same comparison over parameters a closure closes over. `loss` is called once
/// under a tape and then 2 * (number of checked coordinates) times without one;
/// parameter values are perturbed in place and restored. `max_coords_per_param`
/// of 0 checks every coordinate, otherwise an evenly strided subset.
double finite_diff_check_params(const std::function<Tensor()>& loss, std::span<Tensor> params, double eps,
                                std::size_t max_coords_per_param = 0);

}  // namespace backrank::num
