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

#ifndef SELENE_CLUSTER_HPP_
#define SELENE_CLUSTER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "selene/matrix.hpp"
#include "selene/random.hpp"

namespace selene {

struct KMeansOptions {
  int n_init = 10;
  int max_iter = 300;
  // Relative to the mean per-feature variance of the data: a run stops once
  // the summed squared center shift drops below tol * mean variance, or when
  // no assignment changes.
  double tol = 1e-4;
};

struct KMeansResult {
  std::vector<int> assignments;
  Matrix centers;  // k x d; each row is the mean of its assigned points
  double inertia = 0.0;
  int iterations = 0;
  int best_restart = 0;
  // Inertia after every assignment step of the selected restart, followed by
  // the inertia against the final centers.
  std::vector<double> inertia_trace;
};

// Lloyd iterations from greedy k-means++ seeds, best of n_init restarts by
// inertia (ties go to the earlier restart). An empty cluster is re-seeded
// with the point farthest from its current center.
KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options, Rng& rng);

// Minimum-cost assignment of rows to distinct columns (rows <= cols);
// returns the chosen column per row.
std::vector<int> linear_assignment(const std::vector<std::vector<double>>& cost);

// Best agreement fraction over injective cluster -> label mappings.
double clustering_accuracy(std::span<const int> truth, std::span<const int> pred);
// Mutual information over the arithmetic mean of the two entropies; 0 if
// either partition is constant.
double normalized_mutual_information(std::span<const int> truth, std::span<const int> pred);
double adjusted_rand_index(std::span<const int> truth, std::span<const int> pred);

struct ClusterReport {
  std::vector<int> assignments;
  double acc = 0.0;
  double nmi = 0.0;
  double ari = 0.0;
  int k = 0;
  double inertia = 0.0;
  std::uint64_t seed = 0;
};

ClusterReport cluster_and_score(const Matrix& embeddings, std::span<const int> truth, int k,
                                std::uint64_t seed, const KMeansOptions& options = {});

// The clustering step repeated over a seed list. `mean` carries averaged
// metrics and the assignments of the lowest-inertia run.
struct ClusterEvaluation {
  ClusterReport mean;
  std::vector<std::uint64_t> seeds;
  std::vector<ClusterReport> per_seed;
};

ClusterEvaluation evaluate_clustering(const Matrix& embeddings, std::span<const int> truth, int k,
                                      std::span<const std::uint64_t> seeds,
                                      const KMeansOptions& options = {});

// {acc, nmi, ari, inertia, k, seed_list, per_seed_metrics}
std::string metrics_json(const ClusterEvaluation& eval);

// Default evaluation seeds 0..9.
std::vector<std::uint64_t> default_eval_seeds();

}  // namespace selene

#endif  // SELENE_CLUSTER_HPP_
