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

#ifndef SELENE_TRAINER_HPP_
#define SELENE_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "selene/cluster.hpp"
#include "selene/ego.hpp"
#include "selene/gradcheck.hpp"
#include "selene/graph.hpp"
#include "selene/model.hpp"
#include "selene/objectives.hpp"

namespace selene {

struct AblationFlags {
  bool disable_attr_channel = false;
  bool disable_struct_channel = false;
  bool disable_rec_loss = false;
  bool disable_bt_attr = false;
  bool disable_bt_struct = false;
};

struct TrainConfig {
  int radius = 3;
  int hop_cap = kDefaultHopCap;
  std::size_t batch_size = 512;
  int epochs = 30;
  double lr = 1e-3;
  double p_x = 0.2;
  double p_e = 0.2;
  double lambda = 5e-3;
  double bt_eps = 1e-12;
  // Widths after the input layer; the input width comes from the data.
  std::vector<std::size_t> attr_hidden = {500, 500, 200, 10};
  std::vector<std::size_t> struct_hidden = {256, 16};
  Activation struct_activation = Activation::kRelu;
  // Visit nodes in a fresh seeded order each epoch.
  bool shuffle = true;
  std::uint64_t seed = 0;
  AblationFlags ablation;

  void validate() const;
  bool attr_enabled() const { return !ablation.disable_attr_channel; }
  bool struct_enabled() const { return !ablation.disable_struct_channel; }
  ModelConfig model_config(std::size_t attribute_dim) const;
  DistortionConfig distortion() const { return {p_x, p_e, seed}; }
  BtConfig bt() const { return {lambda, bt_eps}; }
};

// Everything fixed before the first epoch: the sampled egos and both
// distorted views of attributes and egos. Distortions are drawn once.
struct TrainingData {
  Matrix x;
  Matrix x1;
  Matrix x2;
  std::vector<EgoNetwork> egos;
  std::vector<EgoNetwork> egos1;
  std::vector<EgoNetwork> egos2;
};

// Egos for every node; node v samples from its own substream of `seed`.
std::vector<EgoNetwork> extract_all_egos(const Graph& g, int radius, int hop_cap,
                                         std::uint64_t seed);

TrainingData prepare_training_data(const Graph& g, const TrainConfig& cfg);

// Loss terms for one batch of node indices. Ablated terms are left empty.
LossParts batch_objective(SeleneModel& model, const TrainingData& data,
                          std::span<const std::size_t> batch, const TrainConfig& cfg, Tape& tape);

// Batches of at most batch_size; a trailing batch of one node is merged into
// its predecessor so every batch has at least two rows.
std::vector<std::vector<std::size_t>> make_batches(std::size_t n, std::size_t batch_size,
                                                   bool shuffle, std::uint64_t seed, int epoch);

struct TrainProgress {
  int epoch = 0;
  std::size_t step = 0;
  LossValues batch_loss;
};

struct TrainResult {
  SeleneModel model;
  // Seed the run actually used; differs from the config under restarts.
  std::uint64_t seed = 0;
  std::vector<double> epoch_losses;  // mean batch loss per epoch
  std::vector<LossValues> step_losses;
};

using TrainCallback = std::function<void(const TrainProgress&)>;

// End-to-end training: egos and distortions prepared once, then per epoch one
// Adam step per batch. Never reads labels. Throws NumericError on a
// non-finite loss.
TrainResult train_selene(const Graph& g, const TrainConfig& cfg,
                         const TrainCallback& on_step = nullptr);

// `restarts` independent runs with derived seeds; keeps the one with the
// lowest final epoch loss.
TrainResult train_with_restarts(const Graph& g, const TrainConfig& cfg, int restarts,
                                const TrainCallback& on_step = nullptr);

// Z = [f_theta(X) || f_delta(ego_v)] over undistorted inputs. Egos are
// re-extracted from cfg.seed, so they match the ones used in training.
Matrix embed_all(SeleneModel& model, const Graph& g, const TrainConfig& cfg);

// Attribute embeddings H only, n x d_H.
Matrix embed_attributes(SeleneModel& model, const Matrix& x);
// Structure embeddings U only, n x d_U.
Matrix embed_structure(SeleneModel& model, std::span<const EgoNetwork> egos);

struct AblationOutcome {
  ClusterEvaluation evaluation;
  TrainResult training;
  Matrix embeddings;
};

// Train with `flags` applied, embed, and score K-means (k = number of
// classes) over `eval_seeds`. Labels are only used for scoring.
AblationOutcome ablation_run(const Graph& g, const TrainConfig& cfg, const AblationFlags& flags,
                             std::span<const std::uint64_t> eval_seeds,
                             const KMeansOptions& kmeans_options = {});

// Seeded 6-node graph with 3 attributes and a config small enough (widths
// <= 8, radius 2, one batch) for exhaustive finite-difference checks.
struct MicroInstance {
  Graph graph;
  TrainConfig config;
};
MicroInstance micro_instance(std::uint64_t seed);

// Finite-difference check of the full objective for the first batch of
// epoch 1 at the freshly initialized model, i.e. the gradient of step 1.
GradCheckReport check_objective_gradients(const Graph& g, const TrainConfig& cfg,
                                          const GradCheckOptions& options = {});

}  // namespace selene

#endif  // SELENE_TRAINER_HPP_
