// Copyright 2026 The Selene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELENE_TAPE_HPP_
#define SELENE_TAPE_HPP_

#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "selene/matrix.hpp"

namespace selene {

// A trainable tensor. `grad` always has the shape of `value`; backward passes
// add into it and the optimizer zeroes it after each step.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, Matrix value);

  void zero_grad() { grad.fill(0.0); }

  std::string name;
  Matrix value;
  Matrix grad;
};

class Tape;

// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape
// lives. Do not keep references returned by value() across new records.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Ordered record of primitive applications. The reverse pass walks records
// from the output back to the first record, each exactly once, then flushes
// leaf gradients into the bound Parameters.
class Tape {
 public:
  // Propagates the gradient of node `self`, available as `upstream`, into
  // its inputs through Tape::accumulate.
  using BackwardFn =
      std::function<void(Tape& tape, const Matrix& upstream, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  // Binding the same Parameter twice returns the same leaf.
  Var parameter(Parameter& param);

  void backward(Var output);

  std::size_t size() const { return nodes_.size(); }
  const Matrix& value(std::size_t id) const { return nodes_[id].value; }
  bool owns(Var v) const { return v.tape_ == this && v.id_ < nodes_.size(); }

  // Primitive-authoring interface.
  Var record(Matrix value, BackwardFn backward);
  void accumulate(std::size_t id, const Matrix& delta);
  // Grad slot of `id` for in-place accumulation, zero-initialized on demand.
  Matrix& grad_slot(std::size_t id);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool has_grad = false;
    BackwardFn backward;
    Parameter* param = nullptr;
  };

  std::deque<Node> nodes_;
  std::unordered_map<const Parameter*, std::size_t> param_ids_;
};

enum class Activation { kIdentity, kRelu, kSigmoid };

Activation parse_activation(const std::string& name);
std::string to_string(Activation act);

// Primitive set. Each checks shapes (DimensionError) and finiteness of its
// result (NumericError) and records itself on the operands' tape.
Var matmul(Var a, Var b);
Var transpose(Var a);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var div(Var a, Var b);
Var scale(Var a, double factor);
// a (n x d) + bias (1 x d) broadcast over rows.
Var add_row(Var a, Var bias);
// Subgradient at 0 is 0.
Var relu(Var a);
Var sigmoid(Var a);
Var square(Var a);
Var sqrt(Var a);
// 1x1 sum of all entries.
Var sum(Var a);
// 1 x cols.
Var col_sum(Var a);
// 1 x cols, Euclidean norm of each column. Gradient of a zero column is 0.
Var col_norm(Var a);
Var concat_cols(std::span<const Var> parts);

Var activate(Var a, Activation act);

}  // namespace selene

#endif  // SELENE_TAPE_HPP_
