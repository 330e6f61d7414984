// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/num/tensor.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "backrank/error.hpp"

namespace backrank::num {

namespace {
thread_local Tape* current_tape = nullptr;

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("tensor values must be finite");
  }
}
}  // namespace

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  return fmt::format("[{}]", fmt::join(shape, "x"));
}

Tensor::Tensor(Shape shape, std::vector<double> values, bool requires_grad) {
  if (shape.empty()) throw ShapeError("tensor shape must have at least one dimension");
  if (std::find(shape.begin(), shape.end(), std::size_t{0}) != shape.end()) {
    throw ShapeError("tensor dimensions must be positive, got " + shape_string(shape));
  }
  if (element_count(shape) != values.size()) {
    throw ShapeError(fmt::format("shape {} needs {} values, got {}", shape_string(shape),
                                 element_count(shape), values.size()));
  }
  check_finite(values);
  storage_ = std::make_shared<Storage>();
  storage_->shape = std::move(shape);
  storage_->values = std::move(values);
  storage_->requires_grad = requires_grad;
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const std::size_t n = element_count(shape);
  return Tensor(std::move(shape), std::vector<double>(n, value), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return Tensor({1}, {value}, requires_grad);
}

Tensor Tensor::vector(std::vector<double> values, bool requires_grad) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values), requires_grad);
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                      bool requires_grad) {
  return Tensor({rows, cols}, std::move(values), requires_grad);
}

Tensor Tensor::identity(std::size_t n) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  return matrix(n, n, std::move(v));
}

Tensor Tensor::wrap(std::shared_ptr<Storage> storage) {
  Tensor t;
  t.storage_ = std::move(storage);
  return t;
}

const Shape& Tensor::shape() const {
  if (!storage_) throw ContractError("use of an undefined tensor");
  return storage_->shape;
}

std::size_t Tensor::size() const { return element_count(shape()); }

std::size_t Tensor::dim(std::size_t axis) const {
  const Shape& s = shape();
  if (axis >= s.size()) throw ShapeError(fmt::format("axis {} out of range for {}", axis, shape_string(s)));
  return s[axis];
}

std::size_t Tensor::rows() const {
  if (rank() != 2) throw ShapeError("rows() needs a matrix, got " + shape_string(shape()));
  return storage_->shape[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw ShapeError("cols() needs a matrix, got " + shape_string(shape()));
  return storage_->shape[1];
}

std::span<const double> Tensor::data() const {
  if (!storage_) throw ContractError("use of an undefined tensor");
  return storage_->values;
}

std::span<double> Tensor::mutable_data() {
  if (!storage_) throw ContractError("use of an undefined tensor");
  return storage_->values;
}

double Tensor::operator()(std::size_t row, std::size_t col) const {
  const std::size_t c = cols();
  if (row >= rows() || col >= c) throw ShapeError("matrix index out of range");
  return storage_->values[row * c + col];
}

double Tensor::item() const {
  if (size() != 1) throw ShapeError("item() needs a single-element tensor, got " + shape_string(shape()));
  return storage_->values[0];
}

bool Tensor::requires_grad() const { return storage_ && storage_->requires_grad; }

void Tensor::set_requires_grad(bool on) {
  if (!storage_) throw ContractError("use of an undefined tensor");
  storage_->requires_grad = on;
}

bool Tensor::has_grad() const { return storage_ && !storage_->grad.empty(); }

std::span<const double> Tensor::grad() const {
  if (!storage_) throw ContractError("use of an undefined tensor");
  return storage_->grad;
}

void Tensor::zero_grad() {
  if (storage_) storage_->grad.clear();
}

Tensor Tensor::clone() const { return Tensor(shape(), storage_->values, false); }

std::span<double> grad_buffer(Tensor::Storage& storage) {
  if (storage.grad.empty()) storage.grad.assign(storage.values.size(), 0.0);
  return storage.grad;
}

void Tape::record(const Tensor& output, BackwardFn backward, const char* op_name) {
  if (consumed_) throw ContractError("recording onto a tape that was already consumed; reset() it first");
  nodes_.push_back(Node{output.storage(), std::move(backward), op_name});
}

void Tape::backward(const Tensor& loss) {
  if (consumed_) {
    throw ContractError("backward() called twice on the same tape without reset()");
  }
  if (!loss.defined() || loss.size() != 1) {
    throw ContractError("backward() needs a scalar loss");
  }
  if (!loss.requires_grad()) {
    throw ContractError("loss does not depend on any tensor that requires grad");
  }
  consumed_ = true;
  grad_buffer(*loss.storage())[0] += 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    if (it->output->grad.empty()) continue;
    it->backward(it->output->grad);
  }
}

void Tape::reset() {
  nodes_.clear();
  consumed_ = false;
}

TapeScope::TapeScope(Tape& tape) : previous_(current_tape) { current_tape = &tape; }

TapeScope::~TapeScope() { current_tape = previous_; }

Tape* active_tape() noexcept { return current_tape; }

}  // namespace backrank::num
