// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/num/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "backrank/error.hpp"

namespace backrank::num {

namespace {

double relative_gap(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ContractError("finite difference step must be positive");
}

}  // namespace

double finite_diff_check(const std::function<Tensor(const Tensor&)>& f, const Tensor& x, double eps) {
  check_eps(eps);
  Tensor leaf(x.shape(), std::vector<double>(x.data().begin(), x.data().end()), true);
  {
    Tape tape;
    TapeScope scope(tape);
    tape.backward(f(leaf));
  }
  std::vector<double> analytic(leaf.size(), 0.0);
  if (leaf.has_grad()) std::copy(leaf.grad().begin(), leaf.grad().end(), analytic.begin());

  double worst = 0.0;
  std::vector<double> probe(x.data().begin(), x.data().end());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + eps;
    const double up = f(Tensor(x.shape(), probe)).item();
    probe[i] = orig - eps;
    const double down = f(Tensor(x.shape(), probe)).item();
    probe[i] = orig;
    worst = std::max(worst, relative_gap(analytic[i], (up - down) / (2.0 * eps)));
  }
  return worst;
}

double finite_diff_check_params(const std::function<Tensor()>& loss, std::span<Tensor> params, double eps,
                                std::size_t max_coords_per_param) {
  check_eps(eps);
  for (auto& p : params) {
    p.zero_grad();
    p.set_requires_grad(true);
  }
  {
    Tape tape;
    TapeScope scope(tape);
    tape.backward(loss());
  }
  double worst = 0.0;
  for (auto& p : params) {
    std::vector<double> analytic(p.size(), 0.0);
    if (p.has_grad()) std::copy(p.grad().begin(), p.grad().end(), analytic.begin());
    const std::size_t n = p.size();
    const std::size_t stride =
        (max_coords_per_param == 0 || n <= max_coords_per_param) ? 1 : n / max_coords_per_param;
    auto values = p.mutable_data();
    for (std::size_t i = 0; i < n; i += stride) {
      const double orig = values[i];
      values[i] = orig + eps;
      const double up = loss().item();
      values[i] = orig - eps;
      const double down = loss().item();
      values[i] = orig;
      worst = std::max(worst, relative_gap(analytic[i], (up - down) / (2.0 * eps)));
    }
    p.zero_grad();
  }
  return worst;
}

}  // namespace backrank::num
