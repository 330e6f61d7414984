// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/num/ops.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>

#include <fmt/format.h>

#include "backrank/error.hpp"

namespace backrank::num {

namespace {

using StoragePtr = std::shared_ptr<Tensor::Storage>;

Tensor make_result(Shape shape, std::vector<double> values) {
  auto s = std::make_shared<Tensor::Storage>();
  s->shape = std::move(shape);
  s->values = std::move(values);
  return Tensor::wrap(std::move(s));
}

bool tracks(std::initializer_list<const Tensor*> inputs) {
  if (active_tape() == nullptr) return false;
  return std::any_of(inputs.begin(), inputs.end(), [](const Tensor* t) { return t->requires_grad(); });
}

void link(const Tensor& out, Tape::BackwardFn fn, const char* name) {
  out.storage()->requires_grad = true;
  active_tape()->record(out, std::move(fn), name);
}

void require_matrix(const Tensor& a, const char* op) {
  if (a.rank() != 2) throw ShapeError(fmt::format("{}: expected a matrix, got {}", op, shape_string(a.shape())));
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(fmt::format("{}: shape mismatch {} vs {}", op, shape_string(a.shape()),
                                 shape_string(b.shape())));
  }
}

// Elementwise unary op with derivative expressed through input x and output y.
template <typename Fwd, typename Deriv>
Tensor unary(const Tensor& a, Fwd fwd, Deriv deriv, const char* name) {
  auto in = a.data();
  std::vector<double> out(in.size());
  std::transform(in.begin(), in.end(), out.begin(), fwd);
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    StoragePtr so = result.storage();
    link(result, [sa, so, deriv](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * deriv(sa->values[i], so->values[i]);
    }, name);
  }
  return result;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t m = a.rows(), p = a.cols(), q = b.cols();
  if (b.rows() != p) {
    throw ShapeError(fmt::format("matmul: inner dimensions disagree {} x {}", shape_string(a.shape()),
                                 shape_string(b.shape())));
  }
  auto av = a.data();
  auto bv = b.data();
  std::vector<double> c(m * q, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      const double aik = av[i * p + k];
      const double* brow = &bv[k * q];
      double* crow = &c[i * q];
      for (std::size_t j = 0; j < q; ++j) crow[j] += aik * brow[j];
    }
  }
  Tensor result = make_result({m, q}, std::move(c));
  if (tracks({&a, &b})) {
    StoragePtr sa = a.storage(), sb = b.storage();
    link(result, [sa, sb, m, p, q](std::span<const double> g) {
      if (sa->requires_grad) {
        auto ga = grad_buffer(*sa);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t k = 0; k < p; ++k) {
            double acc = 0.0;
            for (std::size_t j = 0; j < q; ++j) acc += g[i * q + j] * sb->values[k * q + j];
            ga[i * p + k] += acc;
          }
        }
      }
      if (sb->requires_grad) {
        auto gb = grad_buffer(*sb);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t k = 0; k < p; ++k) {
            const double aik = sa->values[i * p + k];
            for (std::size_t j = 0; j < q; ++j) gb[k * q + j] += aik * g[i * q + j];
          }
        }
      }
    }, "matmul");
  }
  return result;
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "transpose");
  const std::size_t m = a.rows(), n = a.cols();
  auto av = a.data();
  std::vector<double> out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = av[i * n + j];
  Tensor result = make_result({n, m}, std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa, m, n](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) ga[i * n + j] += g[j * m + i];
    }, "transpose");
  }
  return result;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  auto av = a.data();
  auto bv = b.data();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a, &b})) {
    StoragePtr sa = a.storage(), sb = b.storage();
    link(result, [sa, sb](std::span<const double> g) {
      for (const auto& s : {sa, sb}) {
        if (!s->requires_grad) continue;
        auto gs = grad_buffer(*s);
        for (std::size_t i = 0; i < g.size(); ++i) gs[i] += g[i];
      }
    }, "add");
  }
  return result;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  auto av = a.data();
  auto bv = b.data();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] - bv[i];
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a, &b})) {
    StoragePtr sa = a.storage(), sb = b.storage();
    link(result, [sa, sb](std::span<const double> g) {
      if (sa->requires_grad) {
        auto ga = grad_buffer(*sa);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (sb->requires_grad) {
        auto gb = grad_buffer(*sb);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
      }
    }, "sub");
  }
  return result;
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  auto av = a.data();
  auto bv = b.data();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a, &b})) {
    StoragePtr sa = a.storage(), sb = b.storage();
    link(result, [sa, sb](std::span<const double> g) {
      if (sa->requires_grad) {
        auto ga = grad_buffer(*sa);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * sb->values[i];
      }
      if (sb->requires_grad) {
        auto gb = grad_buffer(*sb);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * sa->values[i];
      }
    }, "mul");
  }
  return result;
}

Tensor scale(const Tensor& a, double factor) {
  if (!std::isfinite(factor)) throw DomainError("scale: factor must be finite");
  auto av = a.data();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * factor;
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa, factor](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * factor;
    }, "scale");
  }
  return result;
}

Tensor add_bias(const Tensor& a, const Tensor& bias) {
  require_matrix(a, "add_bias");
  const std::size_t m = a.rows(), n = a.cols();
  if (bias.size() != n) {
    throw ShapeError(fmt::format("add_bias: bias {} does not match {} columns", shape_string(bias.shape()), n));
  }
  auto av = a.data();
  auto bv = bias.data();
  std::vector<double> out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = av[i * n + j] + bv[j];
  Tensor result = make_result({m, n}, std::move(out));
  if (tracks({&a, &bias})) {
    StoragePtr sa = a.storage(), sb = bias.storage();
    link(result, [sa, sb, m, n](std::span<const double> g) {
      if (sa->requires_grad) {
        auto ga = grad_buffer(*sa);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (sb->requires_grad) {
        auto gb = grad_buffer(*sb);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) gb[j] += g[i * n + j];
      }
    }, "add_bias");
  }
  return result;
}

Tensor tanh(const Tensor& a) {
  return unary(
      a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; }, "tanh");
}

Tensor sigmoid(const Tensor& a) {
  return unary(
      a,
      [](double x) {
        if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); }, "sigmoid");
}

Tensor gelu(const Tensor& a) {
  constexpr double kC = 0.7978845608028654;  // sqrt(2 / pi)
  constexpr double kA = 0.044715;
  return unary(
      a,
      [](double x) { return 0.5 * x * (1.0 + std::tanh(kC * (x + kA * x * x * x))); },
      [](double x, double) {
        const double t = std::tanh(kC * (x + kA * x * x * x));
        const double dt = (1.0 - t * t) * kC * (1.0 + 3.0 * kA * x * x);
        return 0.5 * (1.0 + t) + 0.5 * x * dt;
      },
      "gelu");
}

namespace {

struct AxisLayout {
  std::size_t outer, len, inner;
};

AxisLayout axis_layout(const Shape& shape, std::size_t axis) {
  if (axis >= shape.size()) throw ShapeError(fmt::format("axis {} out of range for {}", axis, shape_string(shape)));
  AxisLayout l{1, shape[axis], 1};
  for (std::size_t i = 0; i < axis; ++i) l.outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) l.inner *= shape[i];
  return l;
}

// Softmax over each (outer, inner) fibre. Writes probabilities into `out`.
void softmax_fibres(std::span<const double> in, std::span<double> out, const AxisLayout& l) {
  for (std::size_t o = 0; o < l.outer; ++o) {
    for (std::size_t in_i = 0; in_i < l.inner; ++in_i) {
      const std::size_t base = o * l.len * l.inner + in_i;
      double mx = in[base];
      for (std::size_t k = 1; k < l.len; ++k) mx = std::max(mx, in[base + k * l.inner]);
      double z = 0.0;
      for (std::size_t k = 0; k < l.len; ++k) {
        const double e = std::exp(in[base + k * l.inner] - mx);
        out[base + k * l.inner] = e;
        z += e;
      }
      for (std::size_t k = 0; k < l.len; ++k) out[base + k * l.inner] /= z;
    }
  }
}

}  // namespace

Tensor softmax(const Tensor& a, std::size_t axis) {
  const AxisLayout l = axis_layout(a.shape(), axis);
  std::vector<double> out(a.size());
  softmax_fibres(a.data(), out, l);
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage(), so = result.storage();
    link(result, [sa, so, l](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      const auto& y = so->values;
      for (std::size_t o = 0; o < l.outer; ++o) {
        for (std::size_t in_i = 0; in_i < l.inner; ++in_i) {
          const std::size_t base = o * l.len * l.inner + in_i;
          double gy = 0.0;
          for (std::size_t k = 0; k < l.len; ++k) gy += g[base + k * l.inner] * y[base + k * l.inner];
          for (std::size_t k = 0; k < l.len; ++k) {
            const std::size_t idx = base + k * l.inner;
            ga[idx] += y[idx] * (g[idx] - gy);
          }
        }
      }
    }, "softmax");
  }
  return result;
}

Tensor log_softmax(const Tensor& a, std::size_t axis) {
  const AxisLayout l = axis_layout(a.shape(), axis);
  auto in = a.data();
  std::vector<double> out(a.size());
  for (std::size_t o = 0; o < l.outer; ++o) {
    for (std::size_t in_i = 0; in_i < l.inner; ++in_i) {
      const std::size_t base = o * l.len * l.inner + in_i;
      double mx = in[base];
      for (std::size_t k = 1; k < l.len; ++k) mx = std::max(mx, in[base + k * l.inner]);
      double z = 0.0;
      for (std::size_t k = 0; k < l.len; ++k) z += std::exp(in[base + k * l.inner] - mx);
      const double log_z = mx + std::log(z);
      for (std::size_t k = 0; k < l.len; ++k) out[base + k * l.inner] = in[base + k * l.inner] - log_z;
    }
  }
  Tensor result = make_result(a.shape(), std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage(), so = result.storage();
    link(result, [sa, so, l](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      const auto& y = so->values;
      for (std::size_t o = 0; o < l.outer; ++o) {
        for (std::size_t in_i = 0; in_i < l.inner; ++in_i) {
          const std::size_t base = o * l.len * l.inner + in_i;
          double gs = 0.0;
          for (std::size_t k = 0; k < l.len; ++k) gs += g[base + k * l.inner];
          for (std::size_t k = 0; k < l.len; ++k) {
            const std::size_t idx = base + k * l.inner;
            ga[idx] += g[idx] - std::exp(y[idx]) * gs;
          }
        }
      }
    }, "log_softmax");
  }
  return result;
}

Tensor softmax_rows(const Tensor& scores, bool causal) {
  require_matrix(scores, "softmax_rows");
  const std::size_t n = scores.rows(), m = scores.cols();
  if (causal && n != m) throw ShapeError("softmax_rows: causal mask needs a square matrix");
  auto in = scores.data();
  std::vector<double> out(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t width = causal ? i + 1 : m;
    const double* r = &in[i * m];
    double mx = r[0];
    for (std::size_t j = 1; j < width; ++j) mx = std::max(mx, r[j]);
    double z = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      out[i * m + j] = std::exp(r[j] - mx);
      z += out[i * m + j];
    }
    for (std::size_t j = 0; j < width; ++j) out[i * m + j] /= z;
  }
  Tensor result = make_result({n, m}, std::move(out));
  if (tracks({&scores})) {
    StoragePtr sa = scores.storage(), so = result.storage();
    link(result, [sa, so, n, m, causal](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      const auto& y = so->values;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t width = causal ? i + 1 : m;
        double gy = 0.0;
        for (std::size_t j = 0; j < width; ++j) gy += g[i * m + j] * y[i * m + j];
        for (std::size_t j = 0; j < width; ++j) ga[i * m + j] += y[i * m + j] * (g[i * m + j] - gy);
      }
    }, "softmax_rows");
  }
  return result;
}

Tensor sum(const Tensor& a) {
  auto av = a.data();
  const double total = std::accumulate(av.begin(), av.end(), 0.0);
  Tensor result = make_result({1}, {total});
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (double& v : ga) v += g[0];
    }, "sum");
  }
  return result;
}

Tensor mean(const Tensor& a) { return scale(sum(a), 1.0 / static_cast<double>(a.size())); }

Tensor dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  auto av = a.data();
  auto bv = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) acc += av[i] * bv[i];
  Tensor result = make_result({1}, {acc});
  if (tracks({&a, &b})) {
    StoragePtr sa = a.storage(), sb = b.storage();
    link(result, [sa, sb](std::span<const double> g) {
      if (sa->requires_grad) {
        auto ga = grad_buffer(*sa);
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g[0] * sb->values[i];
      }
      if (sb->requires_grad) {
        auto gb = grad_buffer(*sb);
        for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g[0] * sa->values[i];
      }
    }, "dot");
  }
  return result;
}

Tensor gather_rows(const Tensor& table, std::span<const std::size_t> indices) {
  require_matrix(table, "gather_rows");
  if (indices.empty()) throw ShapeError("gather_rows: no indices");
  const std::size_t vocab = table.rows(), d = table.cols();
  auto tv = table.data();
  std::vector<double> out(indices.size() * d);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= vocab) {
      throw DomainError(fmt::format("gather_rows: index {} outside table of {} rows", indices[r], vocab));
    }
    std::copy_n(&tv[indices[r] * d], d, &out[r * d]);
  }
  Tensor result = make_result({indices.size(), d}, std::move(out));
  if (tracks({&table})) {
    StoragePtr st = table.storage();
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    link(result, [st, idx = std::move(idx), d](std::span<const double> g) {
      auto gt = grad_buffer(*st);
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) gt[idx[r] * d + j] += g[r * d + j];
    }, "gather_rows");
  }
  return result;
}

Tensor slice_cols(const Tensor& a, std::size_t start, std::size_t count) {
  require_matrix(a, "slice_cols");
  const std::size_t m = a.rows(), n = a.cols();
  if (count == 0 || start + count > n) {
    throw ShapeError(fmt::format("slice_cols: [{}, {}) outside {} columns", start, start + count, n));
  }
  auto av = a.data();
  std::vector<double> out(m * count);
  for (std::size_t i = 0; i < m; ++i) std::copy_n(&av[i * n + start], count, &out[i * count]);
  Tensor result = make_result({m, count}, std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa, m, n, start, count](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < count; ++j) ga[i * n + start + j] += g[i * count + j];
    }, "slice_cols");
  }
  return result;
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: nothing to concatenate");
  const std::size_t m = parts.front().rows();
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.rows() != m) throw ShapeError("concat_cols: row counts differ");
    total += p.cols();
  }
  std::vector<double> out(m * total);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const std::size_t c = p.cols();
    auto pv = p.data();
    for (std::size_t i = 0; i < m; ++i) std::copy_n(&pv[i * c], c, &out[i * total + offset]);
    offset += c;
  }
  Tensor result = make_result({m, total}, std::move(out));
  bool any = false;
  for (const auto& p : parts) any = any || p.requires_grad();
  if (any && active_tape() != nullptr) {
    std::vector<StoragePtr> ss;
    for (const auto& p : parts) ss.push_back(p.storage());
    link(result, [ss = std::move(ss), m, total](std::span<const double> g) {
      std::size_t off = 0;
      for (const auto& s : ss) {
        const std::size_t c = s->shape[1];
        if (s->requires_grad) {
          auto gs = grad_buffer(*s);
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < c; ++j) gs[i * c + j] += g[i * total + off + j];
        }
        off += c;
      }
    }, "concat_cols");
  }
  return result;
}

Tensor concat_rows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_rows: nothing to concatenate");
  const std::size_t n = parts.front().cols();
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.cols() != n) throw ShapeError("concat_rows: column counts differ");
    total += p.rows();
  }
  std::vector<double> out;
  out.reserve(total * n);
  for (const auto& p : parts) {
    auto pv = p.data();
    out.insert(out.end(), pv.begin(), pv.end());
  }
  Tensor result = make_result({total, n}, std::move(out));
  bool any = false;
  for (const auto& p : parts) any = any || p.requires_grad();
  if (any && active_tape() != nullptr) {
    std::vector<StoragePtr> ss;
    for (const auto& p : parts) ss.push_back(p.storage());
    link(result, [ss = std::move(ss)](std::span<const double> g) {
      std::size_t off = 0;
      for (const auto& s : ss) {
        const std::size_t len = s->values.size();
        if (s->requires_grad) {
          auto gs = grad_buffer(*s);
          for (std::size_t i = 0; i < len; ++i) gs[i] += g[off + i];
        }
        off += len;
      }
    }, "concat_rows");
  }
  return result;
}

Tensor row(const Tensor& a, std::size_t index) {
  require_matrix(a, "row");
  const std::size_t n = a.cols();
  if (index >= a.rows()) throw ShapeError(fmt::format("row: index {} outside {} rows", index, a.rows()));
  auto av = a.data();
  Tensor result = make_result({1, n}, std::vector<double>(&av[index * n], &av[index * n] + n));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa, index, n](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t j = 0; j < n; ++j) ga[index * n + j] += g[j];
    }, "row");
  }
  return result;
}

Tensor mean_rows(const Tensor& a) {
  require_matrix(a, "mean_rows");
  const std::size_t m = a.rows(), n = a.cols();
  auto av = a.data();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += av[i * n + j];
  const double inv = 1.0 / static_cast<double>(m);
  for (double& v : out) v *= inv;
  Tensor result = make_result({1, n}, std::move(out));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa, m, n, inv](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) ga[i * n + j] += g[j] * inv;
    }, "mean_rows");
  }
  return result;
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (element_count(shape) != a.size()) {
    throw ShapeError(fmt::format("reshape: {} -> {} changes the element count", shape_string(a.shape()),
                                 shape_string(shape)));
  }
  auto av = a.data();
  Tensor result = make_result(std::move(shape), std::vector<double>(av.begin(), av.end()));
  if (tracks({&a})) {
    StoragePtr sa = a.storage();
    link(result, [sa](std::span<const double> g) {
      auto ga = grad_buffer(*sa);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }, "reshape");
  }
  return result;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw ShapeError(fmt::format("cosine_similarity: lengths {} and {} must match and be positive", u.size(),
                                 v.size()));
  }
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw DomainError("cosine_similarity: zero vector");
  return std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double cosine_similarity(const Tensor& u, const Tensor& v) { return cosine_similarity(u.data(), v.data()); }

}  // namespace backrank::num
