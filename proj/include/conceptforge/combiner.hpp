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

#ifndef CONCEPTFORGE_COMBINER_HPP_
#define CONCEPTFORGE_COMBINER_HPP_

#include <cstddef>

#include "conceptforge/enrichment.hpp"
#include "conceptforge/keyword_set.hpp"

namespace conceptforge {

inline constexpr std::size_t kDefaultFallback = 3;

// Merges two keyword sets for the same document.
//
// With I = ml ∩ onto non-empty, the result is I plus every other member k of
// the union whose enriched distance to the nearest member of I is <= tau.
// With I empty, the result is the top `fallback_n` keywords of each input.
// Scores are the maximum over the inputs; `hops` is the union-graph hop count
// to I (0 for members of I, -1 when unreachable or in fallback mode).
//
// Throws kUnknownConcept, kInvalidArgument for tau outside [0, 1].
KeywordSet combine(const KeywordSet& ml, const KeywordSet& onto, const EnrichedOntology& eo,
                   double tau, std::size_t fallback_n = kDefaultFallback);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_COMBINER_HPP_
