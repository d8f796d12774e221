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

#include "selene/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "selene/adam.hpp"
#include "selene/errors.hpp"
#include "selene/random.hpp"

namespace selene {

void TrainConfig::validate() const {
  if (radius < 1) throw ConfigError("train: radius must be >= 1");
  if (hop_cap < 1) throw ConfigError("train: hop_cap must be >= 1");
  if (batch_size < 2) throw ConfigError("train: batch_size must be >= 2");
  if (epochs < 0) throw ConfigError("train: epochs must be >= 0");
  if (!(lr > 0.0)) throw ConfigError("train: lr must be > 0");
  distortion().validate();
  bt().validate();
  if (!attr_enabled() && !struct_enabled()) {
    throw ConfigError("train: the attribute and structure channels cannot both be disabled");
  }
  const bool any_term = (struct_enabled() && !ablation.disable_bt_struct) ||
                        (attr_enabled() && !ablation.disable_bt_attr) ||
                        (attr_enabled() && !ablation.disable_rec_loss);
  if (!any_term) throw ConfigError("train: every loss term is disabled");
  if (attr_enabled() && attr_hidden.empty()) throw ConfigError("train: empty attribute dims");
  if (struct_enabled() && struct_hidden.empty()) throw ConfigError("train: empty structure dims");
}

ModelConfig TrainConfig::model_config(std::size_t attribute_dim) const {
  ModelConfig mc;
  if (attr_enabled()) {
    if (attribute_dim == 0) throw ConfigError("train: graph has no node attributes");
    mc.attr_dims.push_back(attribute_dim);
    mc.attr_dims.insert(mc.attr_dims.end(), attr_hidden.begin(), attr_hidden.end());
  }
  if (struct_enabled()) {
    mc.struct_dims.push_back(static_cast<std::size_t>(radius) + 1);
    mc.struct_dims.insert(mc.struct_dims.end(), struct_hidden.begin(), struct_hidden.end());
  }
  mc.struct_activation = struct_activation;
  return mc;
}

std::vector<EgoNetwork> extract_all_egos(const Graph& g, int radius, int hop_cap,
                                         std::uint64_t seed) {
  std::vector<EgoNetwork> egos;
  egos.reserve(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    Rng rng = make_rng(seed, Stream::kEgoSampling, v);
    egos.push_back(extract_ego(g, static_cast<NodeId>(v), radius, hop_cap, rng));
  }
  return egos;
}

TrainingData prepare_training_data(const Graph& g, const TrainConfig& cfg) {
  cfg.validate();
  TrainingData data;
  if (cfg.attr_enabled()) {
    data.x = g.attributes();
    std::tie(data.x1, data.x2) = distort_attributes(data.x, cfg.distortion());
  }
  if (cfg.struct_enabled()) {
    data.egos = extract_all_egos(g, cfg.radius, cfg.hop_cap, cfg.seed);
    data.egos1.reserve(data.egos.size());
    data.egos2.reserve(data.egos.size());
    for (const EgoNetwork& ego : data.egos) {
      auto [first, second] = distort_ego(ego, cfg.distortion());
      data.egos1.push_back(std::move(first));
      data.egos2.push_back(std::move(second));
    }
  }
  return data;
}

namespace {

// Stacks per-ego 1 x d rows into a b x d matrix.
Var stack_rows(std::span<const Var> rows) {
  std::vector<Var> columns;
  columns.reserve(rows.size());
  for (const Var& r : rows) columns.push_back(transpose(r));
  return transpose(concat_cols(columns));
}

Var structure_view(SeleneModel& model, const std::vector<EgoNetwork>& egos,
                   std::span<const std::size_t> batch, Tape& tape) {
  std::vector<Var> rows;
  rows.reserve(batch.size());
  for (std::size_t v : batch) rows.push_back(gcn_forward(model, egos[v], tape));
  return stack_rows(rows);
}

}  // namespace

LossParts batch_objective(SeleneModel& model, const TrainingData& data,
                          std::span<const std::size_t> batch, const TrainConfig& cfg, Tape& tape) {
  LossParts parts;
  const BtConfig bt = cfg.bt();
  if (model.has_struct_channel() && !cfg.ablation.disable_bt_struct) {
    Var u1 = structure_view(model, data.egos1, batch, tape);
    Var u2 = structure_view(model, data.egos2, batch, tape);
    parts.bt_struct = barlow_twins_loss(u1, u2, bt);
  }
  if (model.has_attr_channel()) {
    if (!cfg.ablation.disable_bt_attr) {
      Var h1 = encode_attributes(model, tape.constant(gather_rows(data.x1, batch)));
      Var h2 = encode_attributes(model, tape.constant(gather_rows(data.x2, batch)));
      parts.bt_attr = barlow_twins_loss(h1, h2, bt);
    }
    if (!cfg.ablation.disable_rec_loss) {
      Var x = tape.constant(gather_rows(data.x, batch));
      AeOutput ae = ae_forward(model, x);
      parts.reconstruction = reconstruction_loss(x, ae.reconstruction);
    }
  }
  return parts;
}

std::vector<std::vector<std::size_t>> make_batches(std::size_t n, std::size_t batch_size,
                                                   bool shuffle, std::uint64_t seed, int epoch) {
  if (batch_size < 2) throw ConfigError("make_batches: batch_size must be >= 2");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    Rng rng = make_rng(seed, Stream::kShuffle, static_cast<std::uint64_t>(epoch));
    for (std::size_t i = n; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t end = std::min(n, start + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  if (batches.size() > 1 && batches.back().size() < 2) {
    auto tail = std::move(batches.back());
    batches.pop_back();
    batches.back().insert(batches.back().end(), tail.begin(), tail.end());
  }
  return batches;
}

TrainResult train_selene(const Graph& g, const TrainConfig& cfg, const TrainCallback& on_step) {
  cfg.validate();
  if (g.node_count() < 2) throw ConfigError("train: graph needs at least two nodes");
  const TrainingData data = prepare_training_data(g, cfg);

  TrainResult result;
  result.seed = cfg.seed;
  result.model = SeleneModel(cfg.model_config(g.attribute_dim()), cfg.seed);
  std::vector<Parameter*> params = result.model.parameters();
  Adam adam(AdamOptions{.lr = cfg.lr});

  std::size_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_sum = 0.0;
    const auto batches = make_batches(g.node_count(), cfg.batch_size, cfg.shuffle, cfg.seed, epoch);
    for (const auto& batch : batches) {
      Tape tape;
      const LossParts parts = batch_objective(result.model, data, batch, cfg, tape);
      Var loss = total_loss(parts);
      const LossValues values = loss_values(parts);
      if (!std::isfinite(values.total)) {
        throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch + 1) +
                           ", step " + std::to_string(step + 1));
      }
      tape.backward(loss);
      adam.step(params);
      epoch_sum += values.total;
      result.step_losses.push_back(values);
      ++step;
      if (on_step) on_step({epoch + 1, step, values});
    }
    result.epoch_losses.push_back(epoch_sum / static_cast<double>(batches.size()));
  }
  return result;
}

TrainResult train_with_restarts(const Graph& g, const TrainConfig& cfg, int restarts,
                                const TrainCallback& on_step) {
  if (restarts < 1) throw ConfigError("train: restarts must be >= 1");
  if (restarts == 1) return train_selene(g, cfg, on_step);
  TrainResult best;
  double best_loss = 0.0;
  for (int r = 0; r < restarts; ++r) {
    TrainConfig run = cfg;
    run.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(Stream::kRestart),
                           static_cast<std::uint64_t>(r));
    TrainResult candidate = train_selene(g, run, on_step);
    const double final_loss =
        candidate.epoch_losses.empty() ? 0.0 : candidate.epoch_losses.back();
    if (r == 0 || final_loss < best_loss) {
      best_loss = final_loss;
      best = std::move(candidate);
    }
  }
  return best;
}

Matrix embed_attributes(SeleneModel& model, const Matrix& x) {
  if (!model.has_attr_channel()) return Matrix(x.rows(), 0);
  constexpr std::size_t kChunk = 1024;
  Matrix h(x.rows(), model.attr_embedding_dim());
  std::vector<std::size_t> rows;
  for (std::size_t start = 0; start < x.rows(); start += kChunk) {
    const std::size_t end = std::min(x.rows(), start + kChunk);
    rows.resize(end - start);
    std::iota(rows.begin(), rows.end(), start);
    Tape tape;
    Var out = encode_attributes(model, tape.constant(gather_rows(x, rows)));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::copy_n(out.value().row(i).begin(), h.cols(), h.row(start + i).begin());
    }
  }
  return h;
}

Matrix embed_structure(SeleneModel& model, std::span<const EgoNetwork> egos) {
  if (!model.has_struct_channel()) return Matrix(egos.size(), 0);
  Matrix u(egos.size(), model.struct_embedding_dim());
  for (std::size_t v = 0; v < egos.size(); ++v) {
    Tape tape;
    Var row = gcn_forward(model, egos[v], tape);
    std::copy_n(row.value().row(0).begin(), u.cols(), u.row(v).begin());
  }
  return u;
}

Matrix embed_all(SeleneModel& model, const Graph& g, const TrainConfig& cfg) {
  Matrix h = embed_attributes(model, g.attributes());
  Matrix u(g.node_count(), 0);
  if (model.has_struct_channel()) {
    const std::size_t expected = static_cast<std::size_t>(cfg.radius) + 1;
    if (model.gcn().front().weight.value.rows() != expected) {
      throw DimensionError("embed_all: model expects radius " +
                           std::to_string(model.gcn().front().weight.value.rows() - 1) +
                           ", config has " + std::to_string(cfg.radius));
    }
    u = embed_structure(model, extract_all_egos(g, cfg.radius, cfg.hop_cap, cfg.seed));
  }
  return combine(h, u);
}

AblationOutcome ablation_run(const Graph& g, const TrainConfig& cfg, const AblationFlags& flags,
                             std::span<const std::uint64_t> eval_seeds,
                             const KMeansOptions& kmeans_options) {
  if (!g.has_labels()) throw MetricUnavailableError("ablation_run: graph has no labels");
  TrainConfig run = cfg;
  run.ablation = flags;
  run.validate();
  const Graph unlabeled = g.without_labels();
  AblationOutcome out;
  out.training = train_selene(unlabeled, run);
  out.embeddings = embed_all(out.training.model, unlabeled, run);
  out.evaluation =
      evaluate_clustering(out.embeddings, g.labels(), g.num_classes(), eval_seeds, kmeans_options);
  return out;
}

MicroInstance micro_instance(std::uint64_t seed) {
  constexpr std::size_t kNodes = 6;
  Rng rng = make_rng(seed, Stream::kEdges);
  std::vector<Edge> edges;
  // A path keeps the graph connected; extra chords are random.
  for (std::size_t v = 0; v + 1 < kNodes; ++v) {
    edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(v + 1));
  }
  for (std::size_t u = 0; u < kNodes; ++u) {
    for (std::size_t v = u + 2; v < kNodes; ++v) {
      if (bernoulli(rng, 0.35)) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  Matrix x(kNodes, 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  Rng feature_rng = make_rng(seed, Stream::kFeatures);
  for (double& value : x.data()) value = normal(feature_rng);
  std::vector<int> labels = {0, 0, 1, 1, 2, 2};

  MicroInstance micro{Graph::from_edges(edges, std::move(x), std::move(labels)), TrainConfig{}};
  TrainConfig& cfg = micro.config;
  cfg.radius = 2;
  cfg.batch_size = kNodes;
  cfg.epochs = 1;
  cfg.attr_hidden = {8, 4};
  cfg.struct_hidden = {8, 4};
  cfg.p_x = 0.2;
  cfg.p_e = 0.2;
  cfg.seed = seed;
  return micro;
}

GradCheckReport check_objective_gradients(const Graph& g, const TrainConfig& cfg,
                                          const GradCheckOptions& options) {
  cfg.validate();
  const TrainingData data = prepare_training_data(g, cfg);
  SeleneModel model(cfg.model_config(g.attribute_dim()), cfg.seed);
  const auto batches = make_batches(g.node_count(), cfg.batch_size, cfg.shuffle, cfg.seed, 0);
  const std::vector<std::size_t>& batch = batches.front();
  auto loss = [&](bool with_grad) {
    Tape tape;
    Var total = total_loss(batch_objective(model, data, batch, cfg, tape));
    if (with_grad) tape.backward(total);
    return total.value()(0, 0);
  };
  std::vector<Parameter*> params = model.parameters();
  return finite_diff_check(loss, params, options);
}

}  // namespace selene
