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

#include "selene/tape.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "selene/errors.hpp"

namespace selene {

Parameter::Parameter(std::string name_in, Matrix value_in)
    : name(std::move(name_in)),
      value(std::move(value_in)),
      grad(value.rows(), value.cols()) {}

const Matrix& Var::value() const {
  if (tape_ == nullptr) throw UsageError("Var: empty handle");
  return tape_->value(id_);
}

Var Tape::constant(Matrix value) {
  if (!value.all_finite()) throw NumericError("constant: non-finite entry");
  return record(std::move(value), nullptr);
}

Var Tape::parameter(Parameter& param) {
  if (auto it = param_ids_.find(&param); it != param_ids_.end()) return Var(this, it->second);
  if (!param.value.all_finite()) throw NumericError("parameter " + param.name + ": non-finite value");
  if (!param.grad.same_shape(param.value)) {
    param.grad = Matrix(param.value.rows(), param.value.cols());
  }
  Var v = record(param.value, nullptr);
  nodes_[v.id_].param = &param;
  param_ids_.emplace(&param, v.id_);
  return v;
}

Var Tape::record(Matrix value, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Matrix& Tape::grad_slot(std::size_t id) {
  Node& node = nodes_[id];
  if (!node.has_grad) {
    node.grad = Matrix(node.value.rows(), node.value.cols());
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::accumulate(std::size_t id, const Matrix& delta) { grad_slot(id) += delta; }

void Tape::backward(Var output) {
  if (!owns(output)) throw UsageError("backward: output was not recorded on this tape");
  if (value(output.id_).rows() != 1 || value(output.id_).cols() != 1) {
    throw UsageError("backward: output must be 1x1, got " + shape_string(value(output.id_)));
  }
  for (Node& node : nodes_) {
    node.has_grad = false;
    node.grad = Matrix();
  }
  grad_slot(output.id_)(0, 0) = 1.0;
  for (std::size_t i = output.id_ + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.has_grad) continue;
    if (node.backward) node.backward(*this, node.grad, i);
    if (node.param != nullptr) node.param->grad += node.grad;
  }
}

Activation parse_activation(const std::string& name) {
  if (name == "identity" || name == "linear") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw ConfigError("unknown activation '" + name + "' (expected relu, sigmoid or identity)");
}

std::string to_string(Activation act) {
  switch (act) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kSigmoid:
      return "sigmoid";
  }
  return "identity";
}

namespace {

Tape& tape_of(Var a) {
  if (!a.valid()) throw UsageError("primitive applied to an empty Var");
  return *a.tape();
}

Tape& tape_of(Var a, Var b) {
  Tape& t = tape_of(a);
  if (b.tape() != &t) throw UsageError("primitive operands live on different tapes");
  return t;
}

Matrix checked(Matrix m, const char* op) {
  if (!m.all_finite()) throw NumericError(std::string(op) + ": non-finite result");
  return m;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(op) + ": " + shape_string(a) + " vs " + shape_string(b));
  }
}

template <typename F>
Matrix map(const Matrix& a, F f) {
  Matrix out(a.rows(), a.cols());
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f(src[i]);
  return out;
}

template <typename F>
Matrix zip(const Matrix& a, const Matrix& b, F f) {
  Matrix out(a.rows(), a.cols());
  auto x = a.data();
  auto y = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) dst[i] = f(x[i], y[i]);
  return out;
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = tape_of(a, b);
  const std::size_t ia = a.id(), ib = b.id();
  Matrix out = checked(gemm(a.value(), b.value()), "matmul");
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, gemm_nt(g, tp.value(ib)));
    tp.accumulate(ib, gemm_tn(tp.value(ia), g));
  });
}

Var transpose(Var a) {
  Tape& t = tape_of(a);
  const std::size_t ia = a.id();
  return t.record(transposed(a.value()), [ia](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, transposed(g));
  });
}

Var add(Var a, Var b) {
  Tape& t = tape_of(a, b);
  require_same_shape(a.value(), b.value(), "add");
  const std::size_t ia = a.id(), ib = b.id();
  Matrix out = checked(zip(a.value(), b.value(), [](double x, double y) { return x + y; }), "add");
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, g);
    tp.accumulate(ib, g);
  });
}

Var sub(Var a, Var b) {
  Tape& t = tape_of(a, b);
  require_same_shape(a.value(), b.value(), "sub");
  const std::size_t ia = a.id(), ib = b.id();
  Matrix out = checked(zip(a.value(), b.value(), [](double x, double y) { return x - y; }), "sub");
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, g);
    tp.accumulate(ib, map(g, [](double x) { return -x; }));
  });
}

Var mul(Var a, Var b) {
  Tape& t = tape_of(a, b);
  require_same_shape(a.value(), b.value(), "mul");
  const std::size_t ia = a.id(), ib = b.id();
  Matrix out = checked(zip(a.value(), b.value(), [](double x, double y) { return x * y; }), "mul");
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, zip(g, tp.value(ib), [](double u, double y) { return u * y; }));
    tp.accumulate(ib, zip(g, tp.value(ia), [](double u, double x) { return u * x; }));
  });
}

Var div(Var a, Var b) {
  Tape& t = tape_of(a, b);
  require_same_shape(a.value(), b.value(), "div");
  const std::size_t ia = a.id(), ib = b.id();
  Matrix out = checked(zip(a.value(), b.value(), [](double x, double y) { return x / y; }), "div");
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    const Matrix& x = tp.value(ia);
    const Matrix& y = tp.value(ib);
    tp.accumulate(ia, zip(g, y, [](double u, double yy) { return u / yy; }));
    Matrix gy(y.rows(), y.cols());
    for (std::size_t i = 0; i < gy.size(); ++i) {
      const double yy = y.data()[i];
      gy.data()[i] = -g.data()[i] * x.data()[i] / (yy * yy);
    }
    tp.accumulate(ib, gy);
  });
}

Var scale(Var a, double factor) {
  Tape& t = tape_of(a);
  const std::size_t ia = a.id();
  Matrix out = checked(map(a.value(), [factor](double x) { return x * factor; }), "scale");
  return t.record(std::move(out), [ia, factor](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, map(g, [factor](double u) { return u * factor; }));
  });
}

Var add_row(Var a, Var bias) {
  Tape& t = tape_of(a, bias);
  const Matrix& x = a.value();
  const Matrix& b = bias.value();
  if (b.rows() != 1 || b.cols() != x.cols()) {
    throw DimensionError("add_row: " + shape_string(x) + " + " + shape_string(b));
  }
  Matrix out = x;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c) row[c] += b(0, c);
  }
  out = checked(std::move(out), "add_row");
  const std::size_t ia = a.id(), ib = bias.id();
  return t.record(std::move(out), [ia, ib](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, g);
    Matrix& gb = tp.grad_slot(ib);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      auto row = g.row(r);
      for (std::size_t c = 0; c < g.cols(); ++c) gb(0, c) += row[c];
    }
  });
}

Var relu(Var a) {
  Tape& t = tape_of(a);
  const std::size_t ia = a.id();
  Matrix out = map(a.value(), [](double x) { return x > 0.0 ? x : 0.0; });
  out = checked(std::move(out), "relu");
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, zip(g, tp.value(ia), [](double u, double x) { return x > 0.0 ? u : 0.0; }));
  });
}

Var sigmoid(Var a) {
  Tape& t = tape_of(a);
  Matrix out = checked(map(a.value(), logistic), "sigmoid");
  const std::size_t ia = a.id();
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t self) {
    tp.accumulate(ia,
                  zip(g, tp.value(self), [](double u, double s) { return u * s * (1.0 - s); }));
  });
}

Var square(Var a) {
  Tape& t = tape_of(a);
  const std::size_t ia = a.id();
  Matrix out = checked(map(a.value(), [](double x) { return x * x; }), "square");
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t) {
    tp.accumulate(ia, zip(g, tp.value(ia), [](double u, double x) { return 2.0 * u * x; }));
  });
}

Var sqrt(Var a) {
  Tape& t = tape_of(a);
  const Matrix& x = a.value();
  for (double v : x.data()) {
    if (v < 0.0) throw NumericError("sqrt: negative input");
  }
  Matrix out = checked(map(x, [](double v) { return std::sqrt(v); }), "sqrt");
  const std::size_t ia = a.id();
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t self) {
    Matrix d = zip(g, tp.value(self), [](double u, double s) { return u * 0.5 / s; });
    tp.accumulate(ia, checked(std::move(d), "sqrt backward"));
  });
}

Var sum(Var a) {
  Tape& t = tape_of(a);
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  const std::size_t ia = a.id();
  Matrix out = checked(Matrix(1, 1, s), "sum");
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t) {
    Matrix& ga = tp.grad_slot(ia);
    const double u = g(0, 0);
    for (double& v : ga.data()) v += u;
  });
}

Var col_sum(Var a) {
  Tape& t = tape_of(a);
  const Matrix& x = a.value();
  Matrix out(1, x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) out(0, c) += row[c];
  }
  out = checked(std::move(out), "col_sum");
  const std::size_t ia = a.id();
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t) {
    Matrix& ga = tp.grad_slot(ia);
    for (std::size_t r = 0; r < ga.rows(); ++r) {
      auto row = ga.row(r);
      for (std::size_t c = 0; c < ga.cols(); ++c) row[c] += g(0, c);
    }
  });
}

Var col_norm(Var a) {
  Tape& t = tape_of(a);
  const Matrix& x = a.value();
  Matrix out(1, x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) out(0, c) += row[c] * row[c];
  }
  for (double& v : out.data()) v = std::sqrt(v);
  out = checked(std::move(out), "col_norm");
  const std::size_t ia = a.id();
  return t.record(std::move(out), [ia](Tape& tp, const Matrix& g, std::size_t self) {
    const Matrix& x = tp.value(ia);
    const Matrix& norms = tp.value(self);
    Matrix& ga = tp.grad_slot(ia);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto src = x.row(r);
      auto dst = ga.row(r);
      for (std::size_t c = 0; c < x.cols(); ++c) {
        const double n = norms(0, c);
        if (n > 0.0) dst[c] += g(0, c) * src[c] / n;
      }
    }
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw UsageError("concat_cols: no operands");
  Tape& t = tape_of(parts[0]);
  const std::size_t rows = parts[0].rows();
  std::vector<std::size_t> ids;
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Var& p : parts) {
    if (p.tape() != &t) throw UsageError("concat_cols: operands live on different tapes");
    if (p.rows() != rows) {
      throw DimensionError("concat_cols: row mismatch " + std::to_string(p.rows()) + " vs " +
                           std::to_string(rows));
    }
    ids.push_back(p.id());
    widths.push_back(p.cols());
    total += p.cols();
  }
  Matrix out(rows, total);
  std::size_t offset = 0;
  for (const Var& p : parts) {
    const Matrix& v = p.value();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(v.row(r).begin(), v.cols(), out.row(r).begin() + offset);
    }
    offset += v.cols();
  }
  out = checked(std::move(out), "concat_cols");
  return t.record(std::move(out), [ids, widths](Tape& tp, const Matrix& g, std::size_t) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Matrix& gk = tp.grad_slot(ids[k]);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        auto src = g.row(r);
        auto dst = gk.row(r);
        for (std::size_t c = 0; c < widths[k]; ++c) dst[c] += src[off + c];
      }
      off += widths[k];
    }
  });
}

Var activate(Var a, Activation act) {
  switch (act) {
    case Activation::kRelu:
      return relu(a);
    case Activation::kSigmoid:
      return sigmoid(a);
    case Activation::kIdentity:
      break;
  }
  return a;
}

}  // namespace selene
