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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "selene/cluster.hpp"
#include "selene/ego.hpp"
#include "selene/matrix.hpp"
#include "selene/model.hpp"
#include "selene/objectives.hpp"
#include "selene/syngen.hpp"
#include "selene/trainer.hpp"

namespace selene {
namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = 2.0 * uniform01(rng) - 1.0;
  return m;
}

const Graph& sweep_graph() {
  static const Graph g = [] {
    SynthConfig cfg;
    cfg.nodes_per_class = 200;
    cfg.pin_fraction = 0.5;
    return generate_synthetic(cfg);
  }();
  return g;
}

void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gemm(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * n * n));
}
BENCHMARK(BM_Gemm)->Arg(16)->Arg(128)->Arg(512);

void BM_GenerateSynthetic(benchmark::State& state) {
  SynthConfig cfg;
  cfg.nodes_per_class = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_synthetic(cfg));
}
BENCHMARK(BM_GenerateSynthetic)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ExtractEgo(benchmark::State& state) {
  const Graph& g = sweep_graph();
  const int radius = static_cast<int>(state.range(0));
  Rng rng(0);
  NodeId v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_ego(g, v, radius, kDefaultHopCap, rng));
    v = (v + 1) % static_cast<NodeId>(g.node_count());
  }
}
BENCHMARK(BM_ExtractEgo)->Arg(2)->Arg(3);

void BM_GcnForwardBackward(benchmark::State& state) {
  const Graph& g = sweep_graph();
  Rng rng(0);
  const EgoNetwork ego = extract_ego(g, 0, 3, kDefaultHopCap, rng);
  SeleneModel model(ModelConfig{{}, {4, 256, 16}, Activation::kRelu}, 0);
  for (auto _ : state) {
    Tape tape;
    tape.backward(sum(gcn_forward(model, ego, tape)));
  }
  state.counters["ego_nodes"] = static_cast<double>(ego.node_count());
}
BENCHMARK(BM_GcnForwardBackward);

void BM_BarlowTwins(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Parameter h1("h1", random_matrix(512, d, 3)), h2("h2", random_matrix(512, d, 4));
  for (auto _ : state) {
    Tape tape;
    tape.backward(barlow_twins_loss(tape.parameter(h1), tape.parameter(h2), {}));
  }
}
BENCHMARK(BM_BarlowTwins)->Arg(10)->Arg(16)->Arg(128);

void BM_TrainingStep(benchmark::State& state) {
  const Graph& g = sweep_graph();
  TrainConfig cfg;
  cfg.radius = 2;
  const TrainingData data = prepare_training_data(g, cfg);
  SeleneModel model(cfg.model_config(g.attribute_dim()), 0);
  const auto batches = make_batches(g.node_count(), cfg.batch_size, true, 0, 0);
  for (auto _ : state) {
    Tape tape;
    tape.backward(total_loss(batch_objective(model, data, batches[0], cfg, tape)));
  }
}
BENCHMARK(BM_TrainingStep)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  const Matrix z = random_matrix(2000, 26, 5);
  for (auto _ : state) {
    Rng rng(0);
    benchmark::DoNotOptimize(kmeans(z, 10, {}, rng));
  }
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace selene

BENCHMARK_MAIN();
