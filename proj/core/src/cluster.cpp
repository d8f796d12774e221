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

#include "selene/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <string>

#include "selene/errors.hpp"

namespace selene {
namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Greedy k-means++: each new center is the best of several D^2-sampled
// candidates by resulting potential.
Matrix kmeans_plus_plus(const Matrix& x, int k, Rng& rng) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Matrix centers(static_cast<std::size_t>(k), d);
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(k)));

  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  const std::size_t c0 = first(rng);
  std::copy_n(x.row(c0).begin(), d, centers.row(0).begin());
  std::vector<double> closest(n);
  for (std::size_t i = 0; i < n; ++i) closest[i] = sq_dist(x.row(i), centers.row(0));

  std::vector<double> candidate_dist(n);
  std::vector<double> best_dist(n);
  for (int c = 1; c < k; ++c) {
    const double potential = std::accumulate(closest.begin(), closest.end(), 0.0);
    std::size_t best_candidate = 0;
    double best_potential = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      std::size_t pick = n - 1;
      if (potential > 0.0) {
        const double target = uniform01(rng) * potential;
        double run = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          run += closest[i];
          if (run > target) {
            pick = i;
            break;
          }
        }
      } else {
        pick = first(rng);
      }
      double pot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        candidate_dist[i] = std::min(closest[i], sq_dist(x.row(i), x.row(pick)));
        pot += candidate_dist[i];
      }
      if (pot < best_potential) {
        best_potential = pot;
        best_candidate = pick;
        best_dist.swap(candidate_dist);
      }
    }
    std::copy_n(x.row(best_candidate).begin(), d, centers.row(static_cast<std::size_t>(c)).begin());
    closest = best_dist;
  }
  return centers;
}

double assign(const Matrix& x, const Matrix& centers, std::vector<int>& labels,
              std::vector<double>& dists) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows(); ++c) {
      const double dd = sq_dist(x.row(i), centers.row(c));
      if (dd < best_d) {
        best_d = dd;
        best = static_cast<int>(c);
      }
    }
    labels[i] = best;
    dists[i] = best_d;
    inertia += best_d;
  }
  return inertia;
}

// Means of assigned points. Empty clusters take the point farthest from its
// center; returns true if any repair happened.
bool update_centers(const Matrix& x, std::vector<int>& labels, std::vector<double>& dists,
                    Matrix& centers) {
  const std::size_t k = centers.rows();
  const std::size_t d = x.cols();
  Matrix sums(k, d);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    auto row = x.row(i);
    auto dst = sums.row(c);
    for (std::size_t j = 0; j < d; ++j) dst[j] += row[j];
  }
  bool repaired = false;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (counts[static_cast<std::size_t>(labels[i])] > 1 && dists[i] > far_d) {
        far_d = dists[i];
        far = i;
      }
    }
    const auto old = static_cast<std::size_t>(labels[far]);
    auto row = x.row(far);
    for (std::size_t j = 0; j < d; ++j) {
      sums(old, j) -= row[j];
      sums(c, j) = row[j];
    }
    --counts[old];
    counts[c] = 1;
    labels[far] = static_cast<int>(c);
    dists[far] = 0.0;
    repaired = true;
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
    }
  }
  return repaired;
}

double inertia_of(const Matrix& x, const Matrix& centers, const std::vector<int>& labels) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    s += sq_dist(x.row(i), centers.row(static_cast<std::size_t>(labels[i])));
  }
  return s;
}

KMeansResult lloyd(const Matrix& x, int k, const KMeansOptions& options, double tol, Rng& rng) {
  KMeansResult r;
  r.centers = kmeans_plus_plus(x, k, rng);
  const std::size_t n = x.rows();
  std::vector<int> labels(n, -1);
  std::vector<int> previous;
  std::vector<double> dists(n);
  for (int it = 0; it < options.max_iter; ++it) {
    previous = labels;
    r.inertia_trace.push_back(assign(x, r.centers, labels, dists));
    r.iterations = it + 1;
    if (labels == previous) break;
    Matrix old = r.centers;
    const bool repaired = update_centers(x, labels, dists, r.centers);
    double shift = 0.0;
    for (std::size_t i = 0; i < old.size(); ++i) {
      const double dd = old.data()[i] - r.centers.data()[i];
      shift += dd * dd;
    }
    if (!repaired && shift <= tol) {
      // One last assignment against the moved centers.
      r.inertia_trace.push_back(assign(x, r.centers, labels, dists));
      break;
    }
  }
  update_centers(x, labels, dists, r.centers);
  r.inertia = inertia_of(x, r.centers, labels);
  r.inertia_trace.push_back(r.inertia);
  r.assignments = std::move(labels);
  return r;
}

struct Dense {
  std::vector<int> ids;
  int count = 0;
};

Dense densify(std::span<const int> labels) {
  std::map<int, int> index;
  for (int y : labels) index.emplace(y, 0);
  int next = 0;
  for (auto& [key, value] : index) value = next++;
  Dense out;
  out.count = next;
  out.ids.reserve(labels.size());
  for (int y : labels) out.ids.push_back(index[y]);
  return out;
}

std::vector<std::vector<double>> contingency(const Dense& a, const Dense& b) {
  std::vector<std::vector<double>> table(static_cast<std::size_t>(a.count),
                                         std::vector<double>(static_cast<std::size_t>(b.count), 0));
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    table[static_cast<std::size_t>(a.ids[i])][static_cast<std::size_t>(b.ids[i])] += 1.0;
  }
  return table;
}

void check_lengths(std::span<const int> a, std::span<const int> b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": label vectors differ in length (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options, Rng& rng) {
  if (k < 1) throw UsageError("kmeans: k must be >= 1");
  if (static_cast<std::size_t>(k) > points.rows()) {
    throw UsageError("kmeans: k=" + std::to_string(k) + " exceeds the number of points (" +
                     std::to_string(points.rows()) + ")");
  }
  if (options.n_init < 1 || options.max_iter < 1) {
    throw ConfigError("kmeans: n_init and max_iter must be >= 1");
  }
  // Scale tol by the mean per-feature variance.
  double mean_var = 0.0;
  const double n = static_cast<double>(points.rows());
  for (std::size_t j = 0; j < points.cols(); ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) mu += points(i, j);
    mu /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) var += (points(i, j) - mu) * (points(i, j) - mu);
    mean_var += var / n;
  }
  if (points.cols() > 0) mean_var /= static_cast<double>(points.cols());
  const double tol = options.tol * mean_var;

  KMeansResult best;
  for (int restart = 0; restart < options.n_init; ++restart) {
    KMeansResult r = lloyd(points, k, options, tol, rng);
    if (restart == 0 || r.inertia < best.inertia) {
      best = std::move(r);
      best.best_restart = restart;
    }
  }
  return best;
}

std::vector<int> linear_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  if (rows == 0) return {};
  const std::size_t cols = cost[0].size();
  if (rows > cols) throw UsageError("linear_assignment: more rows than columns");
  // Shortest augmenting path formulation, 1-based with a dummy column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> p(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(rows, -1);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (p[j] != 0) assignment[p[j] - 1] = static_cast<int>(j - 1);
  }
  return assignment;
}

double clustering_accuracy(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, "clustering_accuracy");
  if (truth.empty()) return 0.0;
  const Dense t = densify(truth);
  const Dense p = densify(pred);
  const auto table = contingency(p, t);  // clusters x labels
  const std::size_t size = static_cast<std::size_t>(std::max(t.count, p.count));
  std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) cost[i][j] = -table[i][j];
  }
  const auto match = linear_assignment(cost);
  double agree = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto j = static_cast<std::size_t>(match[i]);
    if (j < table[i].size()) agree += table[i][j];
  }
  return agree / static_cast<double>(truth.size());
}

double normalized_mutual_information(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, "nmi");
  if (truth.empty()) return 0.0;
  const Dense t = densify(truth);
  const Dense p = densify(pred);
  if (t.count <= 1 || p.count <= 1) return 0.0;
  const auto table = contingency(t, p);
  const double n = static_cast<double>(truth.size());
  std::vector<double> rows(table.size(), 0.0), cols(table[0].size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      rows[i] += table[i][j];
      cols[j] += table[i][j];
    }
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      const double nij = table[i][j];
      if (nij > 0.0) mi += (nij / n) * std::log(nij * n / (rows[i] * cols[j]));
    }
  }
  const double denom = 0.5 * (entropy(rows, n) + entropy(cols, n));
  if (denom <= 0.0) return 0.0;
  return std::clamp(mi / denom, 0.0, 1.0);
}

double adjusted_rand_index(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, "ari");
  const double n = static_cast<double>(truth.size());
  if (truth.size() < 2) return 1.0;
  const auto table = contingency(densify(truth), densify(pred));
  std::vector<double> rows(table.size(), 0.0), cols(table[0].size(), 0.0);
  double index = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      index += choose2(table[i][j]);
      rows[i] += table[i][j];
      cols[j] += table[i][j];
    }
  }
  double sum_rows = 0.0, sum_cols = 0.0;
  for (double r : rows) sum_rows += choose2(r);
  for (double c : cols) sum_cols += choose2(c);
  const double expected = sum_rows * sum_cols / choose2(n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

ClusterReport cluster_and_score(const Matrix& embeddings, std::span<const int> truth, int k,
                                std::uint64_t seed, const KMeansOptions& options) {
  if (truth.size() != embeddings.rows()) {
    throw DimensionError("cluster_and_score: " + std::to_string(truth.size()) + " labels for " +
                         std::to_string(embeddings.rows()) + " embeddings");
  }
  Rng rng = make_rng(seed, Stream::kKMeans);
  KMeansResult km = kmeans(embeddings, k, options, rng);
  ClusterReport r;
  r.acc = clustering_accuracy(truth, km.assignments);
  r.nmi = normalized_mutual_information(truth, km.assignments);
  r.ari = adjusted_rand_index(truth, km.assignments);
  r.k = k;
  r.inertia = km.inertia;
  r.seed = seed;
  r.assignments = std::move(km.assignments);
  return r;
}

ClusterEvaluation evaluate_clustering(const Matrix& embeddings, std::span<const int> truth, int k,
                                      std::span<const std::uint64_t> seeds,
                                      const KMeansOptions& options) {
  if (seeds.empty()) throw ConfigError("evaluate_clustering: seed list is empty");
  ClusterEvaluation eval;
  eval.seeds.assign(seeds.begin(), seeds.end());
  std::size_t best = 0;
  for (std::uint64_t seed : seeds) {
    eval.per_seed.push_back(cluster_and_score(embeddings, truth, k, seed, options));
    if (eval.per_seed.back().inertia < eval.per_seed[best].inertia) best = eval.per_seed.size() - 1;
  }
  const double count = static_cast<double>(seeds.size());
  ClusterReport& mean = eval.mean;
  for (const auto& r : eval.per_seed) {
    mean.acc += r.acc / count;
    mean.nmi += r.nmi / count;
    mean.ari += r.ari / count;
    mean.inertia += r.inertia / count;
  }
  mean.k = k;
  mean.seed = eval.per_seed[best].seed;
  mean.assignments = eval.per_seed[best].assignments;
  return eval;
}

std::string metrics_json(const ClusterEvaluation& eval) {
  nlohmann::json doc;
  doc["acc"] = eval.mean.acc;
  doc["nmi"] = eval.mean.nmi;
  doc["ari"] = eval.mean.ari;
  doc["inertia"] = eval.mean.inertia;
  doc["k"] = eval.mean.k;
  doc["seed_list"] = eval.seeds;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& r : eval.per_seed) {
    per.push_back({{"seed", r.seed},
                   {"acc", r.acc},
                   {"nmi", r.nmi},
                   {"ari", r.ari},
                   {"inertia", r.inertia}});
  }
  doc["per_seed_metrics"] = std::move(per);
  return doc.dump(2);
}

std::vector<std::uint64_t> default_eval_seeds() {
  std::vector<std::uint64_t> seeds(10);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{0});
  return seeds;
}

}  // namespace selene
