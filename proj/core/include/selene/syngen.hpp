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

#ifndef SELENE_SYNGEN_HPP_
#define SELENE_SYNGEN_HPP_

#include <cstdint>
#include <vector>

#include "selene/graph.hpp"

namespace selene {

// Planted-partition graph with Gaussian node features. Same-class pairs link
// with probability p_in = pin_fraction * delta, cross-class pairs with
// p_out = (delta - p_in) / (classes - 1), where delta = d_avg * classes / n.
struct SynthConfig {
  int num_classes = 10;
  int nodes_per_class = 500;
  double d_avg = 10.0;
  double pin_fraction = 0.5;
  int feature_dim = 2;
  double center_radius = 5.0;
  double center_std = 1.0;
  std::uint64_t seed = 0;

  std::size_t node_count() const {
    return static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(nodes_per_class);
  }
};

struct EdgeProbs {
  double delta = 0.0;
  double p_in = 0.0;
  double p_out = 0.0;
};

// The pin_fraction grid used by the homophily sweep: 0.0001, 0.1, ..., 0.9.
std::vector<double> standard_pin_fractions();

// Throws ConfigError unless both probabilities land in (0, 1).
EdgeProbs derive_edge_probs(const SynthConfig& cfg);

// Expected edge homophily p_in*n_in / (p_in*n_in + p_out*n_out) over
// same-class (n_in) and cross-class (n_out) pair counts.
double expected_edge_homophily(const SynthConfig& cfg);
double expected_edge_count(const SynthConfig& cfg);

// Labels are contiguous blocks of nodes_per_class. Features of class c are
// drawn around (R cos 2pi c/K, R sin 2pi c/K). Pair draws use one substream
// per row, features a separate stream, so a graph's features do not depend
// on pin_fraction.
Graph generate_synthetic(const SynthConfig& cfg);

// Class-center position for class c.
std::vector<double> class_center(const SynthConfig& cfg, int c);

}  // namespace selene

#endif  // SELENE_SYNGEN_HPP_
