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

#ifndef SELENE_OBJECTIVES_HPP_
#define SELENE_OBJECTIVES_HPP_

#include <cstdint>
#include <optional>
#include <utility>

#include "selene/ego.hpp"
#include "selene/matrix.hpp"
#include "selene/tape.hpp"

namespace selene {

struct DistortionConfig {
  double p_x = 0.2;  // feature-column mask probability
  double p_e = 0.2;  // edge drop probability
  std::uint64_t seed = 0;

  void validate() const;
};

struct BtConfig {
  double lambda = 5e-3;
  // Added to every denominator of the cross-correlation.
  double eps = 1e-12;

  void validate() const;
};

// Two independently masked views. In each view every column is zeroed with
// probability p_x, the same mask applying to all rows.
std::pair<Matrix, Matrix> distort_attributes(const Matrix& x, const DistortionConfig& cfg);

// Two views of `ego`: each local edge dropped with probability p_e and each
// struct-feature column zeroed with probability p_x. Nodes, ego index and hop
// distances are kept. The random stream depends on (cfg.seed, ego id).
std::pair<EgoNetwork, EgoNetwork> distort_ego(const EgoNetwork& ego, const DistortionConfig& cfg);

// Cross-correlation over the batch dimension between the columns of the two
// views, C_ij = <H1_:i, H2_:j> / (|H1_:i| |H2_:j| + eps), and
//   loss = sum_i (1 - C_ii)^2 + lambda * sum_i sum_{j != i} C_ij^2.
// H1 and H2 are b x d with b >= 2.
Var barlow_twins_loss(Var h1, Var h2, const BtConfig& cfg);
// Untracked cross-correlation matrix, for diagnostics.
Matrix cross_correlation(const Matrix& h1, const Matrix& h2, double eps = 1e-12);

// ||X - X_hat||_F^2 / (2n).
Var reconstruction_loss(Var x, Var x_hat);

// Terms of the overall objective; an absent term is an ablated one.
struct LossParts {
  std::optional<Var> bt_struct;
  std::optional<Var> bt_attr;
  std::optional<Var> reconstruction;
};

struct LossValues {
  double bt_struct = 0.0;
  double bt_attr = 0.0;
  double reconstruction = 0.0;
  double total = 0.0;
};

// Unweighted sum of the present terms. UsageError if none is present.
Var total_loss(const LossParts& parts);
double total_loss(double bt_struct, double bt_attr, double reconstruction);
LossValues loss_values(const LossParts& parts);

}  // namespace selene

#endif  // SELENE_OBJECTIVES_HPP_
