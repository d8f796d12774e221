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

#include "selene/syngen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "selene/errors.hpp"
#include "selene/random.hpp"

namespace selene {

std::vector<double> standard_pin_fractions() {
  return {0.0001, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

EdgeProbs derive_edge_probs(const SynthConfig& cfg) {
  if (cfg.num_classes < 2) throw ConfigError("syngen: need at least 2 classes");
  if (cfg.nodes_per_class < 1) throw ConfigError("syngen: nodes_per_class must be >= 1");
  if (!(cfg.d_avg > 0.0)) throw ConfigError("syngen: d_avg must be positive");
  if (cfg.feature_dim != 2) throw ConfigError("syngen: only 2-dimensional features are supported");
  if (!(cfg.center_std >= 0.0)) throw ConfigError("syngen: center_std must be >= 0");

  EdgeProbs p;
  const double classes = cfg.num_classes;
  p.delta = cfg.d_avg * classes / static_cast<double>(cfg.node_count());
  p.p_in = cfg.pin_fraction * p.delta;
  p.p_out = (p.delta - p.p_in) / (classes - 1.0);
  auto in_open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_open_unit(p.p_in) || !in_open_unit(p.p_out)) {
    throw ConfigError("syngen: derived p_in=" + std::to_string(p.p_in) +
                      ", p_out=" + std::to_string(p.p_out) + " must both lie in (0, 1)");
  }
  return p;
}

namespace {

struct PairCounts {
  double same = 0.0;
  double cross = 0.0;
};

PairCounts pair_counts(const SynthConfig& cfg) {
  const double n = static_cast<double>(cfg.node_count());
  const double per = cfg.nodes_per_class;
  PairCounts c;
  c.same = cfg.num_classes * per * (per - 1.0) / 2.0;
  c.cross = n * (n - 1.0) / 2.0 - c.same;
  return c;
}

}  // namespace

double expected_edge_homophily(const SynthConfig& cfg) {
  const EdgeProbs p = derive_edge_probs(cfg);
  const PairCounts c = pair_counts(cfg);
  return p.p_in * c.same / (p.p_in * c.same + p.p_out * c.cross);
}

double expected_edge_count(const SynthConfig& cfg) {
  const EdgeProbs p = derive_edge_probs(cfg);
  const PairCounts c = pair_counts(cfg);
  return p.p_in * c.same + p.p_out * c.cross;
}

std::vector<double> class_center(const SynthConfig& cfg, int c) {
  const double angle = 2.0 * std::numbers::pi * c / cfg.num_classes;
  return {cfg.center_radius * std::cos(angle), cfg.center_radius * std::sin(angle)};
}

Graph generate_synthetic(const SynthConfig& cfg) {
  const EdgeProbs p = derive_edge_probs(cfg);
  const std::size_t n = cfg.node_count();
  const auto per = static_cast<std::size_t>(cfg.nodes_per_class);

  std::vector<int> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<int>(v / per);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(expected_edge_count(cfg) * 1.2) + 16);
  for (std::size_t u = 0; u < n; ++u) {
    Rng rng = make_rng(cfg.seed, Stream::kEdges, u);
    for (std::size_t v = u + 1; v < n; ++v) {
      const double prob = labels[u] == labels[v] ? p.p_in : p.p_out;
      if (bernoulli(rng, prob)) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }

  Matrix features(n, 2);
  Rng feature_rng = make_rng(cfg.seed, Stream::kFeatures);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto center = class_center(cfg, labels[v]);
    features(v, 0) = center[0] + cfg.center_std * noise(feature_rng);
    features(v, 1) = center[1] + cfg.center_std * noise(feature_rng);
  }
  return Graph::from_edges(edges, std::move(features), std::move(labels));
}

}  // namespace selene
