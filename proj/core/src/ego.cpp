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

#include "selene/ego.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_set>

#include "selene/errors.hpp"

namespace selene {

EgoNetwork extract_ego(const Graph& g, NodeId v, int radius, int hop_cap, Rng& rng) {
  g.check_node(v);
  if (radius < 1) throw ConfigError("extract_ego: radius must be >= 1");
  if (hop_cap < 1) throw ConfigError("extract_ego: hop_cap must be >= 1");

  EgoNetwork ego;
  ego.ego_global_id = v;
  ego.radius = radius;
  ego.local_to_global.push_back(v);

  std::unordered_set<NodeId> seen{v};
  std::vector<NodeId> frontier{v};
  for (int hop = 1; hop <= radius && !frontier.empty(); ++hop) {
    std::vector<NodeId> candidates;
    for (NodeId u : frontier) {
      for (NodeId w : g.neighbors(u)) {
        if (!seen.contains(w)) candidates.push_back(w);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (NodeId w : candidates) seen.insert(w);

    const auto cap = static_cast<std::size_t>(hop_cap);
    if (candidates.size() > cap) {
      // Partial Fisher-Yates over the sorted candidate list.
      for (std::size_t i = 0; i < cap; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
        std::swap(candidates[i], candidates[pick(rng)]);
      }
      candidates.resize(cap);
      std::sort(candidates.begin(), candidates.end());
    }
    ego.local_to_global.insert(ego.local_to_global.end(), candidates.begin(), candidates.end());
    frontier = std::move(candidates);
  }

  // Induced edges over the sample, via a sorted (global, local) index.
  std::vector<std::pair<NodeId, int>> index;
  index.reserve(ego.node_count());
  for (std::size_t i = 0; i < ego.node_count(); ++i) {
    index.emplace_back(ego.local_to_global[i], static_cast<int>(i));
  }
  std::sort(index.begin(), index.end());
  for (std::size_t i = 0; i < ego.node_count(); ++i) {
    for (NodeId w : g.neighbors(ego.local_to_global[i])) {
      auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(w, -1));
      if (it == index.end() || it->first != w) continue;
      const int j = it->second;
      if (j > static_cast<int>(i)) ego.local_edges.emplace_back(static_cast<int>(i), j);
    }
  }
  std::sort(ego.local_edges.begin(), ego.local_edges.end());
  rebuild_ego_features(ego);
  return ego;
}

std::vector<int> local_hop_distances(std::size_t node_count,
                                     const std::vector<LocalEdge>& edges) {
  std::vector<std::vector<int>> adj(node_count);
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> dist(node_count, -1);
  if (node_count == 0) return dist;
  std::queue<int> queue;
  dist[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push(w);
    }
  }
  return dist;
}

void rebuild_ego_features(EgoNetwork& ego) {
  const std::size_t m = ego.node_count();
  const auto width = static_cast<std::size_t>(ego.radius) + 1;
  ego.hop_distance = local_hop_distances(m, ego.local_edges);
  ego.struct_features = Matrix(m, width);
  for (std::size_t i = 0; i < m; ++i) {
    int hop = ego.hop_distance[i];
    // Unreachable only happens on hand-edited egos; clip like a far node.
    if (hop < 0 || hop > ego.radius) hop = ego.radius;
    ego.struct_features(i, static_cast<std::size_t>(hop)) += 1.0;
  }
  if (m > 0) ego.struct_features(0, 0) += 1.0;
}

Matrix normalized_adjacency(const EgoNetwork& ego) {
  const std::size_t m = ego.node_count();
  Matrix a = Matrix::identity(m);
  for (const auto& [i, j] : ego.local_edges) {
    a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
    a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = 1.0;
  }
  std::vector<double> inv_sqrt_deg(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double d = 0.0;
    for (double x : a.row(i)) d += x;
    inv_sqrt_deg[i] = 1.0 / std::sqrt(d);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a(i, j) *= inv_sqrt_deg[i] * inv_sqrt_deg[j];
  }
  return a;
}

}  // namespace selene
