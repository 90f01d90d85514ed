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

#include "conceptforge/graph.hpp"

#include <algorithm>

#include "conceptforge/parallel.hpp"

namespace conceptforge {

UndirectedGraph::UndirectedGraph(std::size_t node_count,
                                 std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
  std::vector<std::vector<NodeIndex>> adjacency(node_count);
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    offsets_[v + 1] = offsets_[v] + list.size();
  }
  targets_.reserve(offsets_.back());
  for (const auto& list : adjacency) targets_.insert(targets_.end(), list.begin(), list.end());
}

std::vector<int> UndirectedGraph::bfs(std::span<const NodeIndex> sources, int max_depth) const {
  std::vector<int> dist(node_count(), kUnreachable);
  std::vector<NodeIndex> frontier;
  for (NodeIndex s : sources) {
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<NodeIndex> next;
  for (int depth = 1; !frontier.empty() && (max_depth < 0 || depth <= max_depth); ++depth) {
    next.clear();
    for (NodeIndex v : frontier) {
      for (NodeIndex w : neighbors(v)) {
        if (dist[w] != kUnreachable) continue;
        dist[w] = depth;
        next.push_back(w);
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::vector<int> UndirectedGraph::bfs(NodeIndex source, int max_depth) const {
  return bfs(std::span<const NodeIndex>(&source, 1), max_depth);
}

std::optional<int> UndirectedGraph::hops(NodeIndex from, NodeIndex to) const {
  if (from == to) return 0;
  std::vector<bool> seen(node_count(), false);
  std::vector<NodeIndex> frontier{from}, next;
  seen[from] = true;
  for (int depth = 1; !frontier.empty(); ++depth) {
    next.clear();
    for (NodeIndex v : frontier) {
      for (NodeIndex w : neighbors(v)) {
        if (seen[w]) continue;
        if (w == to) return depth;
        seen[w] = true;
        next.push_back(w);
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

double normalized_distance(int hops) {
  if (hops < 0) return 1.0;
  return static_cast<double>(hops) / (static_cast<double>(hops) + 1.0);
}

double normalized_distance(std::optional<int> hops) {
  return hops ? normalized_distance(*hops) : 1.0;
}

std::vector<std::vector<int>> all_pairs_hops(const UndirectedGraph& graph, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(graph.node_count());
  std::vector<std::vector<int>> matrix(graph.node_count());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    matrix[v] = graph.bfs(static_cast<NodeIndex>(v));
  }
  return matrix;
}

}  // namespace conceptforge
