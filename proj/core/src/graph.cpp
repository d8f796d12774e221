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

#include "selene/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "selene/errors.hpp"

namespace selene {

Graph Graph::from_edges(std::span<const Edge> edges, Matrix attributes,
                        std::optional<std::vector<int>> labels) {
  const std::size_t n = attributes.rows();
  if (labels && labels->size() != n) {
    throw DimensionError("Graph: " + std::to_string(labels->size()) + " labels for " +
                         std::to_string(n) + " nodes");
  }
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InvalidNodeError("Graph: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& arc : arcs) ++g.offsets_[static_cast<std::size_t>(arc.first) + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.reserve(arcs.size());
  for (const auto& arc : arcs) g.neighbors_.push_back(arc.second);
  g.attributes_ = std::move(attributes);
  if (labels) {
    for (int y : *labels) {
      if (y < 0) throw ConfigError("Graph: negative class label");
      g.num_classes_ = std::max(g.num_classes_, y + 1);
    }
    g.labels_ = std::move(labels);
  }
  return g;
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::optional<std::vector<int>> labels) {
  return from_edges(edges, Matrix(node_count, 0), std::move(labels));
}

void Graph::check_node(NodeId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= node_count()) {
    throw InvalidNodeError("node " + std::to_string(v) + " outside [0, " +
                           std::to_string(node_count()) + ")");
  }
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  const auto i = static_cast<std::size_t>(v);
  return offsets_[i + 1] - offsets_[i];
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  const auto i = static_cast<std::size_t>(v);
  return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  check_node(v);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      if (static_cast<std::size_t>(neighbors_[k]) > u) {
        out.emplace_back(static_cast<NodeId>(u), neighbors_[k]);
      }
    }
  }
  return out;
}

std::span<const int> Graph::labels() const {
  if (!labels_) return {};
  return *labels_;
}

Graph Graph::without_labels() const {
  Graph copy = *this;
  copy.labels_.reset();
  copy.num_classes_ = 0;
  return copy;
}

std::vector<NodeId> khop_neighborhood(const Graph& g, NodeId v, int radius) {
  g.check_node(v);
  if (radius < 0) throw ConfigError("khop_neighborhood: radius must be >= 0");
  std::vector<int> dist(g.node_count(), -1);
  std::vector<NodeId> reached{v};
  std::queue<NodeId> queue;
  dist[static_cast<std::size_t>(v)] = 0;
  queue.push(v);
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    const int du = dist[static_cast<std::size_t>(u)];
    if (du == radius) continue;
    for (NodeId w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = du + 1;
      reached.push_back(w);
      queue.push(w);
    }
  }
  std::sort(reached.begin(), reached.end());
  return reached;
}

HomophilyReport homophily_metrics(const Graph& g) {
  if (!g.has_labels()) throw MetricUnavailableError("homophily_metrics: graph has no labels");
  if (g.edge_count() == 0) throw UndefinedMetricError("homophily_metrics: graph has no edges");
  const auto labels = g.labels();
  std::size_t same_edges = 0;
  double node_sum = 0.0;
  std::size_t counted_nodes = 0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(static_cast<NodeId>(u));
    if (nb.empty()) continue;
    std::size_t same = 0;
    for (NodeId w : nb) {
      if (labels[static_cast<std::size_t>(w)] == labels[u]) {
        ++same;
        if (static_cast<std::size_t>(w) > u) ++same_edges;
      }
    }
    node_sum += static_cast<double>(same) / static_cast<double>(nb.size());
    ++counted_nodes;
  }
  HomophilyReport r;
  r.h_edge = static_cast<double>(same_edges) / static_cast<double>(g.edge_count());
  r.h_node = node_sum / static_cast<double>(counted_nodes);
  r.hhat_edge = 1.0 - r.h_edge;
  r.hhat_node = 1.0 - r.h_node;
  return r;
}

}  // namespace selene
