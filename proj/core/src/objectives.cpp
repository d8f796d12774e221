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

#include "selene/objectives.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "selene/errors.hpp"
#include "selene/random.hpp"

namespace selene {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<bool> column_mask(std::size_t cols, double p, Rng& rng) {
  std::vector<bool> mask(cols);
  for (std::size_t c = 0; c < cols; ++c) mask[c] = bernoulli(rng, p);
  return mask;
}

void apply_column_mask(Matrix& m, const std::vector<bool>& mask) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (mask[c]) row[c] = 0.0;
    }
  }
}

EgoNetwork distorted_view(const EgoNetwork& ego, const DistortionConfig& cfg, Rng& rng) {
  EgoNetwork view;
  view.ego_global_id = ego.ego_global_id;
  view.radius = ego.radius;
  view.local_to_global = ego.local_to_global;
  view.hop_distance = ego.hop_distance;
  view.local_edges.reserve(ego.local_edges.size());
  for (const auto& e : ego.local_edges) {
    if (!bernoulli(rng, cfg.p_e)) view.local_edges.push_back(e);
  }
  view.struct_features = ego.struct_features;
  apply_column_mask(view.struct_features, column_mask(view.struct_features.cols(), cfg.p_x, rng));
  return view;
}

}  // namespace

void DistortionConfig::validate() const {
  if (!is_probability(p_x)) throw ConfigError("distortion: p_x must be in [0, 1]");
  if (!is_probability(p_e)) throw ConfigError("distortion: p_e must be in [0, 1]");
}

void BtConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("barlow twins: lambda must be > 0");
  if (!(eps >= 0.0)) throw ConfigError("barlow twins: eps must be >= 0");
}

std::pair<Matrix, Matrix> distort_attributes(const Matrix& x, const DistortionConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, Stream::kAttrDistortion);
  Matrix first = x;
  Matrix second = x;
  apply_column_mask(first, column_mask(x.cols(), cfg.p_x, rng));
  apply_column_mask(second, column_mask(x.cols(), cfg.p_x, rng));
  return {std::move(first), std::move(second)};
}

std::pair<EgoNetwork, EgoNetwork> distort_ego(const EgoNetwork& ego, const DistortionConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, Stream::kEgoDistortion,
                     static_cast<std::uint64_t>(ego.ego_global_id));
  EgoNetwork first = distorted_view(ego, cfg, rng);
  EgoNetwork second = distorted_view(ego, cfg, rng);
  return {std::move(first), std::move(second)};
}

Var barlow_twins_loss(Var h1, Var h2, const BtConfig& cfg) {
  cfg.validate();
  if (!h1.valid() || !h2.valid() || h1.tape() != h2.tape()) {
    throw UsageError("barlow_twins_loss: views must live on one tape");
  }
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols()) {
    throw DimensionError("barlow_twins_loss: view shapes " + shape_string(h1.value()) + " and " +
                         shape_string(h2.value()) + " differ");
  }
  if (h1.rows() < 2) throw UsageError("barlow_twins_loss: batch size must be >= 2");
  Tape& tape = *h1.tape();
  const std::size_t d = h1.cols();

  Var numerator = matmul(transpose(h1), h2);                  // d x d
  Var norms = matmul(transpose(col_norm(h1)), col_norm(h2));  // d x d outer product
  Var denominator = add(norms, tape.constant(Matrix(d, d, cfg.eps)));
  Var c = div(numerator, denominator);

  Matrix eye = Matrix::identity(d);
  Matrix off(d, d, 1.0);
  for (std::size_t i = 0; i < d; ++i) off(i, i) = 0.0;
  Var identity = tape.constant(eye);
  Var invariance = sum(mul(identity, square(sub(c, identity))));
  Var redundancy = sum(mul(tape.constant(std::move(off)), square(c)));
  return add(invariance, scale(redundancy, cfg.lambda));
}

Matrix cross_correlation(const Matrix& h1, const Matrix& h2, double eps) {
  if (!h1.same_shape(h2)) throw DimensionError("cross_correlation: shape mismatch");
  Matrix c = gemm_tn(h1, h2);
  std::vector<double> n1(h1.cols(), 0.0), n2(h2.cols(), 0.0);
  for (std::size_t r = 0; r < h1.rows(); ++r) {
    for (std::size_t k = 0; k < h1.cols(); ++k) {
      n1[k] += h1(r, k) * h1(r, k);
      n2[k] += h2(r, k) * h2(r, k);
    }
  }
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) /= std::sqrt(n1[i]) * std::sqrt(n2[j]) + eps;
  }
  return c;
}

Var reconstruction_loss(Var x, Var x_hat) {
  if (!x.valid() || !x_hat.valid() || x.tape() != x_hat.tape()) {
    throw UsageError("reconstruction_loss: operands must live on one tape");
  }
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols()) {
    throw DimensionError("reconstruction_loss: " + shape_string(x.value()) + " vs " +
                         shape_string(x_hat.value()));
  }
  if (x.rows() == 0) throw UsageError("reconstruction_loss: empty input");
  const double n = static_cast<double>(x.rows());
  return scale(sum(square(sub(x, x_hat))), 1.0 / (2.0 * n));
}

Var total_loss(const LossParts& parts) {
  std::optional<Var> acc;
  for (const auto& term : {parts.bt_struct, parts.bt_attr, parts.reconstruction}) {
    if (!term) continue;
    acc = acc ? add(*acc, *term) : *term;
  }
  if (!acc) throw UsageError("total_loss: every loss term is disabled");
  return *acc;
}

double total_loss(double bt_struct, double bt_attr, double reconstruction) {
  return bt_struct + bt_attr + reconstruction;
}

LossValues loss_values(const LossParts& parts) {
  LossValues v;
  if (parts.bt_struct) v.bt_struct = parts.bt_struct->value()(0, 0);
  if (parts.bt_attr) v.bt_attr = parts.bt_attr->value()(0, 0);
  if (parts.reconstruction) v.reconstruction = parts.reconstruction->value()(0, 0);
  v.total = total_loss(v.bt_struct, v.bt_attr, v.reconstruction);
  return v;
}

}  // namespace selene
