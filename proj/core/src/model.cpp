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

#include "selene/model.hpp"

#include <cmath>
#include <string>

#include "selene/errors.hpp"

namespace selene {
namespace {

Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix w(fan_in, fan_out);
  for (double& x : w.data()) x = (2.0 * uniform01(rng) - 1.0) * limit;
  return w;
}

void check_dims(const std::vector<std::size_t>& dims, const char* what) {
  if (dims.empty()) return;
  if (dims.size() < 2) {
    throw ConfigError(std::string(what) + ": need at least an input and an output width");
  }
  for (std::size_t d : dims) {
    if (d == 0) throw ConfigError(std::string(what) + ": zero-width layer");
  }
}

}  // namespace

SeleneModel::SeleneModel(const ModelConfig& config, std::uint64_t seed) : config_(config) {
  check_dims(config.attr_dims, "attribute dims");
  check_dims(config.struct_dims, "structure dims");
  Rng rng = make_rng(seed, Stream::kInit);
  const auto& a = config.attr_dims;
  if (!a.empty()) {
    const std::size_t layers = a.size() - 1;
    encoder_.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
      const std::string prefix = "attr.encoder." + std::to_string(l);
      encoder_.push_back({Parameter(prefix + ".weight", glorot_uniform(a[l], a[l + 1], rng)),
                          Parameter(prefix + ".bias", Matrix(1, a[l + 1])),
                          l + 1 == layers ? Activation::kIdentity : Activation::kRelu});
    }
    decoder_.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = a[layers - l];
      const std::size_t out = a[layers - l - 1];
      const std::string prefix = "attr.decoder." + std::to_string(l);
      decoder_.push_back({Parameter(prefix + ".weight", glorot_uniform(in, out, rng)),
                          Parameter(prefix + ".bias", Matrix(1, out)),
                          l + 1 == layers ? Activation::kIdentity : Activation::kRelu});
    }
  }
  const auto& s = config.struct_dims;
  if (!s.empty()) {
    const std::size_t layers = s.size() - 1;
    gcn_.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
      gcn_.push_back({Parameter("struct.gcn." + std::to_string(l) + ".weight",
                                glorot_uniform(s[l], s[l + 1], rng)),
                      l + 1 == layers ? Activation::kIdentity : config.struct_activation});
    }
  }
}

std::size_t SeleneModel::attr_embedding_dim() const {
  return encoder_.empty() ? 0 : encoder_.back().weight.value.cols();
}

std::size_t SeleneModel::struct_embedding_dim() const {
  return gcn_.empty() ? 0 : gcn_.back().weight.value.cols();
}

std::vector<Parameter*> SeleneModel::attr_parameters() {
  std::vector<Parameter*> out;
  for (auto& l : encoder_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  for (auto& l : decoder_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

std::vector<Parameter*> SeleneModel::struct_parameters() {
  std::vector<Parameter*> out;
  for (auto& l : gcn_) out.push_back(&l.weight);
  return out;
}

std::vector<Parameter*> SeleneModel::parameters() {
  std::vector<Parameter*> out = attr_parameters();
  for (Parameter* p : struct_parameters()) out.push_back(p);
  return out;
}

std::vector<const Parameter*> SeleneModel::parameters() const {
  auto mutable_params = const_cast<SeleneModel*>(this)->parameters();
  return {mutable_params.begin(), mutable_params.end()};
}

namespace {

Var dense_stack(std::vector<DenseLayer>& layers, Var x) {
  Tape& tape = *x.tape();
  Var h = x;
  for (DenseLayer& layer : layers) {
    h = add_row(matmul(h, tape.parameter(layer.weight)), tape.parameter(layer.bias));
    h = activate(h, layer.activation);
  }
  return h;
}

}  // namespace

Var encode_attributes(SeleneModel& model, Var x) {
  if (!model.has_attr_channel()) throw UsageError("encode_attributes: attribute channel disabled");
  const std::size_t pi = model.encoder().front().weight.value.rows();
  if (x.cols() != pi) {
    throw DimensionError("attribute encoder expects " + std::to_string(pi) + " columns, got " +
                         std::to_string(x.cols()));
  }
  return dense_stack(model.encoder(), x);
}

AeOutput ae_forward(SeleneModel& model, Var x) {
  Var h = encode_attributes(model, x);
  return {h, dense_stack(model.decoder(), h)};
}

AeOutput ae_forward(SeleneModel& model, const Matrix& x, Tape& tape) {
  return ae_forward(model, tape.constant(x));
}

Var gcn_forward(SeleneModel& model, const EgoNetwork& ego, Tape& tape) {
  if (!model.has_struct_channel()) throw UsageError("gcn_forward: structure channel disabled");
  auto& layers = model.gcn();
  const std::size_t in = layers.front().weight.value.rows();
  if (ego.struct_features.cols() != in) {
    throw DimensionError("structure encoder expects " + std::to_string(in) +
                         " feature columns, got " + std::to_string(ego.struct_features.cols()));
  }
  if (ego.node_count() == 0) throw DimensionError("gcn_forward: empty ego network");
  const Matrix adj = normalized_adjacency(ego);
  Var a = tape.constant(adj);
  Var u = tape.constant(ego.struct_features);
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    u = activate(matmul(matmul(a, u), tape.parameter(layers[l].weight)), layers[l].activation);
  }
  // The last layer is only needed at the ego row: (A_norm row 0) U W.
  Var a0 = tape.constant(Matrix::row_vector(adj.row(0)));
  return activate(matmul(matmul(a0, u), tape.parameter(layers.back().weight)),
                  layers.back().activation);
}

std::vector<double> combine(std::span<const double> h, std::span<const double> u) {
  std::vector<double> z(h.begin(), h.end());
  z.insert(z.end(), u.begin(), u.end());
  return z;
}

Matrix combine(const Matrix& h, const Matrix& u) {
  if (h.cols() > 0 && u.cols() > 0 && h.rows() != u.rows()) {
    throw DimensionError("combine: " + shape_string(h) + " vs " + shape_string(u));
  }
  const std::size_t rows = h.cols() > 0 ? h.rows() : u.rows();
  Matrix z(rows, h.cols() + u.cols());
  for (std::size_t r = 0; r < rows; ++r) {
    auto dst = z.row(r);
    if (h.cols() > 0) std::copy_n(h.row(r).begin(), h.cols(), dst.begin());
    if (u.cols() > 0) std::copy_n(u.row(r).begin(), u.cols(), dst.begin() + h.cols());
  }
  return z;
}

}  // namespace selene
