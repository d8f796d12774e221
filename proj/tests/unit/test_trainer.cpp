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

#include <algorithm>
#include <set>
#include <vector>

#include "selene/errors.hpp"
#include "selene/syngen.hpp"
#include "selene/trainer.hpp"

namespace selene {
namespace {

Graph toy_graph(std::uint64_t seed, int per_class = 5, double pin_fraction = 0.5) {
  SynthConfig cfg;
  cfg.num_classes = 2;
  cfg.nodes_per_class = per_class;
  cfg.d_avg = 3.0;
  cfg.pin_fraction = pin_fraction;
  cfg.seed = seed;
  return generate_synthetic(cfg);
}

TrainConfig small_config(std::uint64_t seed = 0) {
  TrainConfig cfg;
  cfg.radius = 2;
  cfg.batch_size = 4;
  cfg.epochs = 2;
  cfg.attr_hidden = {8, 4};
  cfg.struct_hidden = {8, 4};
  cfg.seed = seed;
  return cfg;
}

std::vector<Matrix> values(const SeleneModel& m) {
  std::vector<Matrix> out;
  for (const Parameter* p : m.parameters()) out.push_back(p->value);
  return out;
}

TEST(Trainer, BitwiseDeterministic) {
  const Graph g = toy_graph(1);
  const TrainConfig cfg = small_config(3);
  TrainResult a = train_selene(g, cfg);
  TrainResult b = train_selene(g, cfg);
  EXPECT_EQ(values(a.model), values(b.model));
  EXPECT_EQ(a.epoch_losses, b.epoch_losses);
  EXPECT_EQ(embed_all(a.model, g, cfg), embed_all(b.model, g, cfg));
  TrainResult c = train_selene(g, small_config(4));
  EXPECT_NE(values(a.model), values(c.model));
}

TEST(Trainer, NeverReadsLabels) {
  const Graph g = toy_graph(2);
  const TrainConfig cfg = small_config();
  TrainResult labeled = train_selene(g, cfg);
  TrainResult unlabeled = train_selene(g.without_labels(), cfg);
  EXPECT_EQ(values(labeled.model), values(unlabeled.model));
}

TEST(Trainer, OneOptimizerStepPerBatch) {
  const Graph g = toy_graph(3);  // 10 nodes, batch 4 -> 3 batches
  TrainConfig cfg = small_config();
  cfg.epochs = 3;
  std::size_t calls = 0;
  TrainResult r = train_selene(g, cfg, [&](const TrainProgress& p) {
    ++calls;
    EXPECT_EQ(p.step, calls);
  });
  EXPECT_EQ(calls, 9u);
  EXPECT_EQ(r.step_losses.size(), 9u);
  EXPECT_EQ(r.epoch_losses.size(), 3u);
  cfg.epochs = 0;
  TrainResult untrained = train_selene(g, cfg);
  EXPECT_EQ(values(untrained.model), values(SeleneModel(cfg.model_config(2), cfg.seed)));
}

TEST(Trainer, MicroInstanceGradientsMatchFiniteDifferences) {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const MicroInstance micro = micro_instance(seed);
    EXPECT_EQ(micro.graph.node_count(), 6u);
    const GradCheckReport r = check_objective_gradients(micro.graph, micro.config);
    EXPECT_TRUE(r.passed) << "seed " << seed << " max rel " << r.max_rel_error << " at "
                          << r.worst_param << "[" << r.worst_index << "]";
    EXPECT_GT(r.coords_checked, 100u);
  }
}

TEST(Trainer, TotalGradientIsSumOfTermGradients) {
  const MicroInstance micro = micro_instance(4);
  const TrainConfig& cfg = micro.config;
  const TrainingData data = prepare_training_data(micro.graph, cfg);
  SeleneModel model(cfg.model_config(micro.graph.attribute_dim()), cfg.seed);
  const std::vector<std::size_t> batch = {0, 1, 2, 3, 4, 5};
  auto grads_of = [&](auto pick) {
    for (Parameter* p : model.parameters()) p->zero_grad();
    Tape tape;
    tape.backward(pick(batch_objective(model, data, batch, cfg, tape)));
    std::vector<Matrix> g;
    for (Parameter* p : model.parameters()) g.push_back(p->grad);
    return g;
  };
  const auto total = grads_of([](const LossParts& p) { return total_loss(p); });
  const auto s = grads_of([](const LossParts& p) { return *p.bt_struct; });
  const auto a = grads_of([](const LossParts& p) { return *p.bt_attr; });
  const auto r = grads_of([](const LossParts& p) { return *p.reconstruction; });
  for (std::size_t k = 0; k < total.size(); ++k)
    for (std::size_t i = 0; i < total[k].size(); ++i)
      EXPECT_NEAR(total[k].data()[i], s[k].data()[i] + a[k].data()[i] + r[k].data()[i], 1e-12);
}

TEST(Trainer, AblationFlagsSelectLossTerms) {
  const Graph g = toy_graph(5);
  TrainConfig cfg = small_config();
  cfg.ablation.disable_rec_loss = true;
  const TrainingData data = prepare_training_data(g, cfg);
  SeleneModel model(cfg.model_config(g.attribute_dim()), cfg.seed);
  Tape tape;
  const std::vector<std::size_t> batch = {0, 1, 2, 3};
  const LossParts parts = batch_objective(model, data, batch, cfg, tape);
  EXPECT_TRUE(parts.bt_attr && parts.bt_struct);
  EXPECT_FALSE(parts.reconstruction);

  cfg.ablation = {};
  cfg.ablation.disable_struct_channel = true;
  TrainResult attr_only = train_selene(g, cfg);
  EXPECT_FALSE(attr_only.model.has_struct_channel());
  EXPECT_EQ(embed_all(attr_only.model, g, cfg).cols(), 4u);

  cfg.ablation = {};
  cfg.ablation.disable_attr_channel = true;
  TrainResult struct_only = train_selene(g, cfg);
  EXPECT_EQ(embed_all(struct_only.model, g, cfg).cols(), 4u);

  cfg.ablation.disable_struct_channel = true;
  EXPECT_THROW(train_selene(g, cfg), ConfigError);
  EXPECT_THROW(ablation_run(g, small_config(), cfg.ablation, default_eval_seeds()), ConfigError);
  cfg.ablation = {};
  cfg.ablation.disable_bt_attr = cfg.ablation.disable_bt_struct = cfg.ablation.disable_rec_loss =
      true;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Trainer, DefaultEmbeddingWidthIs26) {
  const Graph g = toy_graph(6);
  TrainConfig cfg;
  cfg.epochs = 0;
  TrainResult r = train_selene(g, cfg);
  const Matrix z = embed_all(r.model, g, cfg);
  EXPECT_EQ(z.rows(), 10u);
  EXPECT_EQ(z.cols(), 26u);
  EXPECT_TRUE(z.all_finite());
  TrainConfig other = cfg;
  other.radius = 2;
  EXPECT_THROW(embed_all(r.model, g, other), DimensionError);
}

TEST(Trainer, ConfigValidation) {
  TrainConfig cfg = small_config();
  cfg.batch_size = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.p_x = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.radius = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Batches, CoverAllNodesAndMergeSingletonTail) {
  const auto plain = make_batches(10, 4, false, 0, 0);
  ASSERT_EQ(plain.size(), 3u);
  EXPECT_EQ(plain[2], (std::vector<std::size_t>{8, 9}));
  const auto merged = make_batches(9, 4, false, 0, 0);
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[1].size(), 5u);
  for (int epoch = 0; epoch < 3; ++epoch) {
    const auto b = make_batches(1037, 512, true, 7, epoch);
    std::set<std::size_t> seen;
    for (const auto& batch : b) {
      EXPECT_GE(batch.size(), 2u);
      seen.insert(batch.begin(), batch.end());
    }
    EXPECT_EQ(seen.size(), 1037u);
    EXPECT_EQ(b, make_batches(1037, 512, true, 7, epoch));
  }
  EXPECT_NE(make_batches(100, 10, true, 7, 0), make_batches(100, 10, true, 7, 1));
}

TEST(Trainer, LossDecreasesOnHomophilousGraph) {
  SynthConfig sc;
  sc.nodes_per_class = 50;
  sc.pin_fraction = 0.9;
  sc.seed = 1;
  const Graph g = generate_synthetic(sc);
  TrainConfig cfg;
  cfg.radius = 2;
  cfg.epochs = 10;
  cfg.batch_size = 128;
  cfg.seed = 1;
  TrainResult r = train_selene(g.without_labels(), cfg);
  ASSERT_EQ(r.epoch_losses.size(), 10u);
  EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
  for (const LossValues& v : r.step_losses) EXPECT_TRUE(std::isfinite(v.total));
}

TEST(Trainer, RestartsPickLowestFinalLoss) {
  const Graph g = toy_graph(7);
  const TrainConfig cfg = small_config(2);
  TrainResult best = train_with_restarts(g, cfg, 3);
  TrainResult again = train_with_restarts(g, cfg, 3);
  EXPECT_EQ(values(best.model), values(again.model));
  EXPECT_THROW(train_with_restarts(g, cfg, 0), ConfigError);
}

}  // namespace
}  // namespace selene
