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

#ifndef SELENE_GRAPH_HPP_
#define SELENE_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "selene/matrix.hpp"

namespace selene {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable undirected attributed graph stored as sorted, deduplicated,
// symmetric neighbor lists (CSR). Self-loops are never stored.
class Graph {
 public:
  Graph() = default;

  // Symmetrizes and deduplicates `edges`; drops self-loops. Node count is
  // attributes.rows(). Throws InvalidNodeError for out-of-range endpoints and
  // DimensionError when label length disagrees with the node count.
  static Graph from_edges(std::span<const Edge> edges, Matrix attributes,
                          std::optional<std::vector<int>> labels = std::nullopt);
  // Attribute-free convenience: n x 0 attribute matrix.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  // Undirected edge count (each edge once).
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t degree(NodeId v) const;
  std::span<const NodeId> neighbors(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;
  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  const Matrix& attributes() const { return attributes_; }
  std::size_t attribute_dim() const { return attributes_.cols(); }

  bool has_labels() const { return labels_.has_value(); }
  // Empty span when unlabeled.
  std::span<const int> labels() const;
  int num_classes() const { return num_classes_; }

  // Copy without labels (the trainer must never look at them).
  Graph without_labels() const;

  void check_node(NodeId v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  Matrix attributes_;
  std::optional<std::vector<int>> labels_;
  int num_classes_ = 0;
};

// {u : d(u, v) <= radius}, sorted ascending; always contains v.
std::vector<NodeId> khop_neighborhood(const Graph& g, NodeId v, int radius);

struct HomophilyReport {
  double h_edge = 0.0;
  double h_node = 0.0;
  double hhat_edge = 0.0;
  double hhat_node = 0.0;
};

// Edge and node homophily plus their complements. Node homophily averages
// over nodes with at least one neighbor.
HomophilyReport homophily_metrics(const Graph& g);

}  // namespace selene

#endif  // SELENE_GRAPH_HPP_
