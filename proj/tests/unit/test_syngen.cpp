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

#include <gtest/gtest.h>

#include <cmath>

#include "selene/errors.hpp"
#include "selene/graph.hpp"
#include "selene/syngen.hpp"

namespace selene {
namespace {

SynthConfig small_config(double pin_fraction, std::uint64_t seed = 0) {
  SynthConfig cfg;
  cfg.nodes_per_class = 100;
  cfg.pin_fraction = pin_fraction;
  cfg.seed = seed;
  return cfg;
}

TEST(Syngen, EdgeProbabilitiesFollowTheRecipe) {
  SynthConfig cfg;
  cfg.pin_fraction = 0.3;
  const EdgeProbs p = derive_edge_probs(cfg);
  EXPECT_DOUBLE_EQ(p.delta, 10.0 * 10 / 5000.0);
  EXPECT_DOUBLE_EQ(p.p_in, 0.3 * p.delta);
  EXPECT_DOUBLE_EQ(p.p_out, (p.delta - p.p_in) / 9.0);
  // Expected homophily from pair counts.
  const double n_in = 10 * (500.0 * 499.0 / 2.0);
  const double n_out = 5000.0 * 4999.0 / 2.0 - n_in;
  EXPECT_NEAR(expected_edge_homophily(cfg), p.p_in * n_in / (p.p_in * n_in + p.p_out * n_out),
              1e-15);
  EXPECT_NEAR(expected_edge_count(cfg), p.p_in * n_in + p.p_out * n_out, 1e-9);
}

TEST(Syngen, StandardGrid) {
  const auto grid = standard_pin_fractions();
  ASSERT_EQ(grid.size(), 10u);
  EXPECT_EQ(grid.front(), 0.0001);
  EXPECT_DOUBLE_EQ(grid.back(), 0.9);
}

TEST(Syngen, RejectsInfeasibleConfigs) {
  EXPECT_THROW(derive_edge_probs(small_config(1.0)), ConfigError);
  EXPECT_THROW(derive_edge_probs(small_config(0.0)), ConfigError);
  SynthConfig cfg = small_config(0.5);
  cfg.num_classes = 1;
  EXPECT_THROW(generate_synthetic(cfg), ConfigError);
  cfg = small_config(0.5);
  cfg.d_avg = 1000.0;
  EXPECT_THROW(generate_synthetic(cfg), ConfigError);
  cfg = small_config(0.5);
  cfg.feature_dim = 3;
  EXPECT_THROW(generate_synthetic(cfg), ConfigError);
}

TEST(Syngen, BlockLabelsAndDeterminism) {
  const Graph a = generate_synthetic(small_config(0.5, 3));
  const Graph b = generate_synthetic(small_config(0.5, 3));
  const Graph c = generate_synthetic(small_config(0.5, 4));
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.attributes(), b.attributes());
  EXPECT_NE(a.edges(), c.edges());
  ASSERT_EQ(a.node_count(), 1000u);
  for (std::size_t v = 0; v < a.node_count(); ++v)
    EXPECT_EQ(a.labels()[v], static_cast<int>(v / 100));
}

TEST(Syngen, FeaturesDoNotDependOnHomophily) {
  EXPECT_EQ(generate_synthetic(small_config(0.1, 2)).attributes(),
            generate_synthetic(small_config(0.9, 2)).attributes());
}

TEST(Syngen, ClassMeansRecoverCenters) {
  SynthConfig cfg = small_config(0.5, 8);
  const Graph g = generate_synthetic(cfg);
  const double bound = 3.0 * cfg.center_std / std::sqrt(cfg.nodes_per_class);
  for (int c = 0; c < cfg.num_classes; ++c) {
    const auto center = class_center(cfg, c);
    EXPECT_NEAR(center[0], 5.0 * std::cos(2.0 * M_PI * c / 10.0), 1e-12);
    EXPECT_NEAR(center[1], 5.0 * std::sin(2.0 * M_PI * c / 10.0), 1e-12);
    for (int d = 0; d < 2; ++d) {
      double mean = 0.0;
      for (int i = 0; i < cfg.nodes_per_class; ++i)
        mean += g.attributes()(c * cfg.nodes_per_class + i, d);
      mean /= cfg.nodes_per_class;
      EXPECT_NEAR(mean, center[d], bound) << "class " << c << " dim " << d;
    }
  }
}

TEST(Syngen, MeasuredHomophilyAndDegreeAtModerateScale) {
  for (double f : standard_pin_fractions()) {
    SynthConfig cfg = small_config(f, 1);
    cfg.nodes_per_class = 200;
    const Graph g = generate_synthetic(cfg);
    const double h = homophily_metrics(g).h_edge;
    EXPECT_NEAR(h, expected_edge_homophily(cfg), 0.03) << "pin_fraction " << f;
    const double edges = static_cast<double>(g.edge_count());
    EXPECT_NEAR(edges / expected_edge_count(cfg), 1.0, 0.05);
  }
}

}  // namespace
}  // namespace selene
