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

#include "conceptforge/combiner.hpp"

#include <algorithm>
#include <map>

#include "conceptforge/error.hpp"

namespace conceptforge {

KeywordSet combine(const KeywordSet& ml, const KeywordSet& onto, const EnrichedOntology& eo,
                   double tau, std::size_t fallback_n) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(tau), "tau must lie in [0, 1]");
  }
  std::map<ConceptId, double> ml_score, onto_score, best;
  for (int side = 0; side < 2; ++side) {
    auto& own = side == 0 ? ml_score : onto_score;
    for (const auto& k : (side == 0 ? ml : onto).keywords) {
      if (!eo.base().contains(k.concept_id)) throw Error(ErrorCode::kUnknownConcept, k.concept_id);
      auto [it, fresh] = own.emplace(k.concept_id, k.score);
      if (!fresh) it->second = std::max(it->second, k.score);
      auto [b, bfresh] = best.emplace(k.concept_id, k.score);
      if (!bfresh) b->second = std::max(b->second, k.score);
    }
  }

  KeywordSet out{ml.doc_id.empty() ? onto.doc_id : ml.doc_id, {}};
  std::vector<NodeIndex> anchors;
  for (const auto& [id, s] : ml_score) {
    if (onto_score.count(id)) anchors.push_back(eo.node_of(id));
  }

  if (anchors.empty()) {
    std::map<ConceptId, double> picked;
    for (const auto* set : {&ml, &onto}) {
      KeywordSet sorted = *set;
      canonicalize(sorted);
      for (std::size_t i = 0; i < sorted.keywords.size() && i < fallback_n; ++i) {
        const auto& id = sorted.keywords[i].concept_id;
        picked[id] = best[id];
      }
    }
    for (const auto& [id, s] : picked) out.keywords.push_back({id, s, Provenance::kCombined, -1});
    canonicalize(out);
    return out;
  }

  const auto dist = eo.union_graph().bfs(std::span<const NodeIndex>(anchors));
  for (const auto& [id, s] : best) {
    const int h = dist[eo.node_of(id)];
    if (h == 0 || normalized_distance(h) <= tau) {
      out.keywords.push_back({id, s, Provenance::kCombined, h});
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace conceptforge
