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

#ifndef SELENE_EGO_HPP_
#define SELENE_EGO_HPP_

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "selene/graph.hpp"
#include "selene/matrix.hpp"
#include "selene/random.hpp"

namespace selene {

inline constexpr int kDefaultHopCap = 15;
inline constexpr int kUnlimitedHopCap = std::numeric_limits<int>::max();

using LocalEdge = std::pair<int, int>;

// Sampled r-ego network in local indexing. Local index 0 is the ego; the
// remaining nodes are ordered by hop, then by global id.
//   hop_distance[i]   shortest-path distance to the ego inside the sample
//   struct_features   m x (radius + 1); row i is one-hot at hop_distance[i],
//                     and the ego row carries an extra +1 at column 0.
struct EgoNetwork {
  NodeId ego_global_id = 0;
  int radius = 0;
  std::vector<NodeId> local_to_global;
  std::vector<LocalEdge> local_edges;  // i < j
  std::vector<int> hop_distance;
  Matrix struct_features;

  std::size_t node_count() const { return local_to_global.size(); }
};

// BFS from `v`; when a hop has more than `hop_cap` unseen candidates, `hop_cap`
// of them are drawn uniformly without replacement. Candidates that lose the
// draw are excluded from later hops, which keeps every hop within the cap.
EgoNetwork extract_ego(const Graph& g, NodeId v, int radius, int hop_cap, Rng& rng);

// Builds hop distances and SPD + identity features for an ego network whose
// node order and edges are already set. Used after relabeling or edge edits.
void rebuild_ego_features(EgoNetwork& ego);

// Distances from local index 0 by BFS over `local_edges`; unreachable nodes
// get -1.
std::vector<int> local_hop_distances(std::size_t node_count,
                                     const std::vector<LocalEdge>& edges);

// D^-1/2 (A + I) D^-1/2 over the ego's local edges, dense m x m.
Matrix normalized_adjacency(const EgoNetwork& ego);

}  // namespace selene

#endif  // SELENE_EGO_HPP_
