// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace backrank::num {

using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Dense row-major array of doubles with an optional gradient buffer.
///
/// A Tensor is a handle: copies alias the same storage. The tape relies on this to
/// route gradients back into parameters. Values are treated as immutable once an op
/// has read them; only initializers and optimizers go through mutable_data().
class Tensor {
 public:
  struct Storage {
    Shape shape;
    std::vector<double> values;
    std::vector<double> grad;  // empty == no gradient yet
    bool requires_grad = false;
  };

  Tensor() = default;
  Tensor(Shape shape, std::vector<double> values, bool requires_grad = false);

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);
  static Tensor vector(std::vector<double> values, bool requires_grad = false);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       bool requires_grad = false);
  static Tensor identity(std::size_t n);

  bool defined() const noexcept { return storage_ != nullptr; }

  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t size() const;
  std::size_t dim(std::size_t axis) const;
  /// 2-D accessors; throw ShapeError on other ranks.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> data() const;
  std::span<double> mutable_data();
  double operator()(std::size_t row, std::size_t col) const;
  /// Value of a one-element tensor.
  double item() const;

  bool requires_grad() const;
  void set_requires_grad(bool on);
  bool has_grad() const;
  std::span<const double> grad() const;
  void zero_grad();

  /// Deep copy of the values, detached from any tape.
  Tensor clone() const;
  bool shares_storage(const Tensor& other) const noexcept { return storage_ == other.storage_; }

  const std::shared_ptr<Storage>& storage() const noexcept { return storage_; }
  static Tensor wrap(std::shared_ptr<Storage> storage);

 private:
  std::shared_ptr<Storage> storage_;
};

/// Records primitive operations in execution order so gradients can be replayed
/// backwards. Nodes are appended as ops run, which yields a topological order for
/// free. A tape may be consumed by backward() exactly once; call reset() to reuse it.
class Tape {
 public:
  using BackwardFn = std::function<void(std::span<const double> output_grad)>;

  void record(const Tensor& output, BackwardFn backward, const char* op_name);

  /// Seeds d(loss)/d(loss) = 1 and visits every recorded node once, newest first.
  /// Throws ContractError for a non-scalar loss or a tape that was already consumed.
  void backward(const Tensor& loss);

  void reset();
  std::size_t size() const noexcept { return nodes_.size(); }
  bool consumed() const noexcept { return consumed_; }

 private:
  struct Node {
    std::shared_ptr<Tensor::Storage> output;
    BackwardFn backward;
    const char* op_name;
  };
  std::vector<Node> nodes_;
  bool consumed_ = false;
};

/// Makes a tape the recording target for ops on the current thread.
class TapeScope {
 public:
  explicit TapeScope(Tape& tape);
  ~TapeScope();
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape* previous_;
};

/// Tape ops record into, or nullptr when recording is off (inference).
Tape* active_tape() noexcept;

/// Zero-initialized gradient buffer of a storage, allocated on first use.
std::span<double> grad_buffer(Tensor::Storage& storage);

}  // namespace backrank::num
