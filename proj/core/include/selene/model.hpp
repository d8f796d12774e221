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

#ifndef SELENE_MODEL_HPP_
#define SELENE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "selene/ego.hpp"
#include "selene/matrix.hpp"
#include "selene/random.hpp"
#include "selene/tape.hpp"

namespace selene {

struct DenseLayer {
  Parameter weight;  // d_in x d_out
  Parameter bias;    // 1 x d_out
  Activation activation = Activation::kRelu;
};

struct GcnLayer {
  Parameter weight;  // d_in x d_out
  Activation activation = Activation::kRelu;
};

struct ModelConfig {
  // Full widths including the input, e.g. {pi, 500, 500, 200, 10}. Empty
  // disables the attribute channel.
  std::vector<std::size_t> attr_dims;
  // {radius + 1, 256, 16} by default. Empty disables the structure channel.
  std::vector<std::size_t> struct_dims;
  // Hidden-layer nonlinearity of the structure encoder; output is linear.
  Activation struct_activation = Activation::kRelu;
};

// Attribute autoencoder (encoder + mirrored decoder) and ego-network GCN.
// Hidden layers use the configured nonlinearity, the final encoder and
// decoder layers are linear. Layer vectors are sized once at construction, so
// Parameter addresses stay stable for the lifetime of the model.
class SeleneModel {
 public:
  SeleneModel() = default;
  // Glorot-uniform weights, zero biases.
  SeleneModel(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  bool has_attr_channel() const { return !encoder_.empty(); }
  bool has_struct_channel() const { return !gcn_.empty(); }
  std::size_t attr_embedding_dim() const;
  std::size_t struct_embedding_dim() const;

  std::vector<DenseLayer>& encoder() { return encoder_; }
  std::vector<DenseLayer>& decoder() { return decoder_; }
  std::vector<GcnLayer>& gcn() { return gcn_; }
  const std::vector<DenseLayer>& encoder() const { return encoder_; }
  const std::vector<DenseLayer>& decoder() const { return decoder_; }
  const std::vector<GcnLayer>& gcn() const { return gcn_; }

  // All parameters in a fixed order: encoder, decoder, gcn.
  std::vector<Parameter*> parameters();
  std::vector<const Parameter*> parameters() const;
  std::vector<Parameter*> attr_parameters();
  std::vector<Parameter*> struct_parameters();

 private:
  ModelConfig config_;
  std::vector<DenseLayer> encoder_;
  std::vector<DenseLayer> decoder_;
  std::vector<GcnLayer> gcn_;
};

struct AeOutput {
  Var embedding;       // H, n x d_H
  Var reconstruction;  // X-hat, n x pi
};

// Encoder only.
Var encode_attributes(SeleneModel& model, Var x);
// H = f_theta(X), X-hat = f_theta'(H).
AeOutput ae_forward(SeleneModel& model, Var x);
AeOutput ae_forward(SeleneModel& model, const Matrix& x, Tape& tape);

// U^(l) = sigma(A_norm U^(l-1) W^(l)) with U^(0) = struct features; returns the
// ego row (1 x d_U) of the last layer.
Var gcn_forward(SeleneModel& model, const EgoNetwork& ego, Tape& tape);

// [H_v || U_v]; either side may be empty (0 columns).
std::vector<double> combine(std::span<const double> h, std::span<const double> u);
Matrix combine(const Matrix& h, const Matrix& u);

}  // namespace selene

#endif  // SELENE_MODEL_HPP_
