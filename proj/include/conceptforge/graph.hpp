// Copyright 2026 The ConceptForge Authors.
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

#ifndef CONCEPTFORGE_GRAPH_HPP_
#define CONCEPTFORGE_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace conceptforge {

using NodeIndex = std::uint32_t;

// Hop count marker for nodes that a traversal did not reach.
inline constexpr int kUnreachable = -1;

// Immutable undirected unit-weight graph in compressed adjacency form.
// Duplicate edges and self loops are dropped; neighbor lists are sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(std::size_t node_count,
                  std::span<const std::pair<NodeIndex, NodeIndex>> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  // Multi-source BFS. Result[v] is the hop count from the nearest source or
  // kUnreachable. A negative max_depth means unbounded.
  std::vector<int> bfs(std::span<const NodeIndex> sources, int max_depth = -1) const;
  std::vector<int> bfs(NodeIndex source, int max_depth = -1) const;

  // Single-pair shortest path, stopping as soon as `to` is settled.
  std::optional<int> hops(NodeIndex from, NodeIndex to) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> targets_;
};

// d = h / (h + 1); unreachable pairs map to 1.0.
double normalized_distance(std::optional<int> hops);
double normalized_distance(int hops);

// All-pairs hop matrix, one BFS per source. Rows are distributed over
// `threads` OpenMP threads (0 = runtime default, 1 = serial).
std::vector<std::vector<int>> all_pairs_hops(const UndirectedGraph& graph, int threads = 0);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_GRAPH_HPP_
