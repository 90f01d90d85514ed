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

#ifndef CONCEPTFORGE_RECOGNIZER_HPP_
#define CONCEPTFORGE_RECOGNIZER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptforge/corpus.hpp"
#include "conceptforge/enrichment.hpp"
#include "conceptforge/keyword_set.hpp"
#include "conceptforge/textproc.hpp"

namespace conceptforge {

inline constexpr double kLabelPatternWeight = 1.0;
inline constexpr double kNeighborhoodPatternWeight = 0.5;

struct PatternOwner {
  ConceptId concept_id;
  double weight = kLabelPatternWeight;

  bool operator==(const PatternOwner&) const = default;
};

// A stemmed token sequence and the concepts it signals.
struct Pattern {
  std::vector<std::string> tokens;
  std::vector<PatternOwner> owners;  // sorted by concept ID

  bool operator==(const Pattern&) const = default;
};

// One pattern hit over token positions [start, start + length).
struct PatternMatch {
  std::uint32_t pattern = 0;
  std::size_t start = 0;
  std::size_t length = 0;

  bool operator==(const PatternMatch&) const = default;
};

struct DirectAnnotation {
  ConceptId concept_id;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // byte offsets, ascending
  int match_count = 0;        // == spans.size()
  double weighted_count = 0;  // sum of pattern weights over spans

  bool operator==(const DirectAnnotation&) const = default;
};

struct MatcherOptions {
  TextConfig text;
  bool use_neighborhood_terms = false;
  // Minimum relative frequency of a term within a concept's term bag.
  double min_term_weight = 0.2;
};

// Dictionary of stemmed label patterns compiled into an Aho-Corasick
// automaton over token IDs.
//
// Construction:
//   1. every prefLabel and altLabel is tokenized with the configured
//      TextConfig; the token sequence maps to its concept with weight 1.0
//   2. with neighborhood terms enabled, every term whose count divided by the
//      concept's term-bag total reaches min_term_weight becomes a one-token
//      pattern with weight 0.5 (a label pattern for the same concept wins)
//   3. distinct tokens are interned; patterns are inserted into a trie over
//      token IDs; failure links are set breadth first, and each state keeps a
//      dictionary link to the nearest proper suffix state that ends a pattern
//
// Immutable after build; safe to share across threads.
class Matcher {
 public:
  // Throws kEmptyDictionary when no pattern survives.
  static Matcher build(const EnrichedOntology& eo, const MatcherOptions& options);
  static Matcher from_patterns(std::vector<Pattern> patterns, TextConfig text);

  const std::vector<Pattern>& patterns() const { return patterns_; }
  const TextConfig& text_config() const { return text_; }

  // Every occurrence of every pattern, ordered by end position, then longer
  // patterns first.
  std::vector<PatternMatch> find_all(std::span<const std::string> tokens) const;

 private:
  struct State {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> next;  // (token, state), sorted
    std::uint32_t fail = 0;
    std::uint32_t dict = 0;  // 0 means none
    std::int32_t pattern = -1;
    std::uint32_t depth = 0;
  };

  void compile();
  std::optional<std::uint32_t> step(std::uint32_t state, std::uint32_t token) const;
  std::uint32_t transition(std::uint32_t state, std::uint32_t token) const;

  std::vector<Pattern> patterns_;
  TextConfig text_;
  std::map<std::string, std::uint32_t> token_ids_;
  std::vector<State> states_;
};

// Greedily keeps non-overlapping matches, longest first, then leftmost.
// Result is ordered by start position.
std::vector<PatternMatch> resolve_longest_leftmost(std::vector<PatternMatch> matches);

// Concept recognition on title + abstract. Result is sorted by concept ID.
std::vector<DirectAnnotation> recognize(const Matcher& m, const Document& doc);
std::vector<DirectAnnotation> recognize_text(const Matcher& m, std::string_view text);

// Batch recognition; documents are distributed over OpenMP threads
// (0 = runtime default, 1 = serial). Output order follows input order.
std::vector<std::vector<DirectAnnotation>> recognize_batch(const Matcher& m,
                                                           std::span<const Document> docs,
                                                           int threads = 0);

struct ExpandedAnnotation {
  ConceptId concept_id;
  double score = 0.0;
  int hops = 0;
  Provenance provenance = Provenance::kDirect;

  bool operator==(const ExpandedAnnotation&) const = default;
};

// Spreads every direct annotation over the enriched union graph up to `depth`
// hops. score(c) = sum over anchors a of weighted_count(a) * decay^hops(a, c).
// Concepts reachable within `depth` over ontology edges alone are
// ontology-expansion; those reached only through encyclopedia nodes are
// encyclopedia-expansion. Encyclopedia nodes never appear in the output.
// Result is sorted by concept ID.
std::vector<ExpandedAnnotation> expand(std::span<const DirectAnnotation> direct,
                                       const EnrichedOntology& eo, int depth, double decay);

struct SuggestParams {
  int depth = 2;
  double decay = 0.5;
  std::optional<std::size_t> top_n;
  std::optional<double> min_score;
};

KeywordSet suggest_keywords(const Document& doc, const Matcher& m, const EnrichedOntology& eo,
                            const SuggestParams& params);

std::vector<KeywordSet> suggest_keywords_batch(std::span<const Document> docs, const Matcher& m,
                                               const EnrichedOntology& eo,
                                               const SuggestParams& params, int threads = 0);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_RECOGNIZER_HPP_
