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

#include "conceptforge/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "conceptforge/error.hpp"
#include "conceptforge/parallel.hpp"

namespace conceptforge {

// --- Matcher construction ---------------------------------------------------

Matcher Matcher::build(const EnrichedOntology& eo, const MatcherOptions& options) {
  std::map<std::vector<std::string>, std::map<ConceptId, double>> dict;
  auto add = [&](std::vector<std::string> tokens, const ConceptId& cid, double weight) {
    if (tokens.empty()) return;
    double& w = dict[std::move(tokens)][cid];
    w = std::max(w, weight);
  };
  for (const auto& [cid, c] : eo.base().concepts()) {
    add(tokenize_terms(c.pref_label, options.text), cid, kLabelPatternWeight);
    for (const auto& alt : c.alt_labels) {
      add(tokenize_terms(alt, options.text), cid, kLabelPatternWeight);
    }
  }
  if (options.use_neighborhood_terms) {
    for (const auto& [cid, ec] : eo.enriched()) {
      const std::size_t total = ec.term_total();
      if (total == 0) continue;
      for (const auto& [term, count] : ec.neighborhood_terms) {
        const double rel = static_cast<double>(count) / static_cast<double>(total);
        if (rel >= options.min_term_weight) add({term}, cid, kNeighborhoodPatternWeight);
      }
    }
  }
  std::vector<Pattern> patterns;
  for (auto& [tokens, owners] : dict) {
    Pattern p{tokens, {}};
    for (const auto& [cid, w] : owners) p.owners.push_back({cid, w});
    patterns.push_back(std::move(p));
  }
  return from_patterns(std::move(patterns), options.text);
}

Matcher Matcher::from_patterns(std::vector<Pattern> patterns, TextConfig text) {
  patterns.erase(std::remove_if(patterns.begin(), patterns.end(),
                                [](const Pattern& p) { return p.tokens.empty() || p.owners.empty(); }),
                 patterns.end());
  if (patterns.empty()) throw Error(ErrorCode::kEmptyDictionary, "matcher");
  std::sort(patterns.begin(), patterns.end(),
            [](const Pattern& a, const Pattern& b) { return a.tokens < b.tokens; });
  for (std::size_t i = 1; i < patterns.size(); ++i) {
    if (patterns[i].tokens == patterns[i - 1].tokens) {
      throw Error(ErrorCode::kDuplicateId, patterns[i].tokens.front(), "duplicate pattern");
    }
  }
  Matcher m;
  m.patterns_ = std::move(patterns);
  m.text_ = std::move(text);
  m.compile();
  return m;
}

std::optional<std::uint32_t> Matcher::step(std::uint32_t state, std::uint32_t token) const {
  const auto& next = states_[state].next;
  auto it = std::lower_bound(next.begin(), next.end(), std::make_pair(token, std::uint32_t{0}));
  if (it == next.end() || it->first != token) return std::nullopt;
  return it->second;
}

std::uint32_t Matcher::transition(std::uint32_t state, std::uint32_t token) const {
  while (true) {
    if (auto s = step(state, token)) return *s;
    if (state == 0) return 0;
    state = states_[state].fail;
  }
}

void Matcher::compile() {
  states_.assign(1, State{});
  for (std::uint32_t p = 0; p < patterns_.size(); ++p) {
    std::uint32_t cur = 0;
    for (const auto& tok : patterns_[p].tokens) {
      auto [it, fresh] = token_ids_.try_emplace(tok, static_cast<std::uint32_t>(token_ids_.size()));
      const std::uint32_t id = it->second;
      if (auto s = step(cur, id)) {
        cur = *s;
        continue;
      }
      const auto child = static_cast<std::uint32_t>(states_.size());
      State st;
      st.depth = states_[cur].depth + 1;
      states_.push_back(std::move(st));
      auto& next = states_[cur].next;
      next.insert(std::lower_bound(next.begin(), next.end(), std::make_pair(id, std::uint32_t{0})),
                  {id, child});
      cur = child;
    }
    states_[cur].pattern = static_cast<std::int32_t>(p);
  }

  std::deque<std::uint32_t> queue;
  for (const auto& [tok, child] : states_[0].next) {
    states_[child].fail = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    const std::uint32_t s = queue.front();
    queue.pop_front();
    for (const auto& [tok, child] : states_[s].next) {
      std::uint32_t f = states_[s].fail;
      std::uint32_t target = 0;
      while (true) {
        if (auto t = step(f, tok)) {
          target = *t;
          break;
        }
        if (f == 0) break;
        f = states_[f].fail;
      }
      states_[child].fail = target;
      states_[child].dict = states_[target].pattern >= 0 ? target : states_[target].dict;
      queue.push_back(child);
    }
  }
}

std::vector<PatternMatch> Matcher::find_all(std::span<const std::string> tokens) const {
  std::vector<PatternMatch> out;
  std::uint32_t state = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = token_ids_.find(tokens[i]);
    if (it == token_ids_.end()) {
      state = 0;
      continue;
    }
    state = transition(state, it->second);
    for (std::uint32_t s = state; s != 0; s = states_[s].dict) {
      if (states_[s].pattern < 0) continue;
      const std::size_t len = states_[s].depth;
      out.push_back({static_cast<std::uint32_t>(states_[s].pattern), i + 1 - len, len});
    }
  }
  return out;
}

// --- Recognition -----------------------------------------------------------

std::vector<PatternMatch> resolve_longest_leftmost(std::vector<PatternMatch> matches) {
  std::sort(matches.begin(), matches.end(), [](const PatternMatch& a, const PatternMatch& b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.start != b.start) return a.start < b.start;
    return a.pattern < b.pattern;
  });
  std::size_t extent = 0;
  for (const auto& m : matches) extent = std::max(extent, m.start + m.length);
  std::vector<bool> occupied(extent, false);
  std::vector<PatternMatch> kept;
  for (const auto& m : matches) {
    const auto first = occupied.begin() + static_cast<std::ptrdiff_t>(m.start);
    const auto last = first + static_cast<std::ptrdiff_t>(m.length);
    if (std::find(first, last, true) != last) continue;
    std::fill(first, last, true);
    kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(), [](const PatternMatch& a, const PatternMatch& b) {
    return a.start != b.start ? a.start < b.start : a.pattern < b.pattern;
  });
  return kept;
}

std::vector<DirectAnnotation> recognize_text(const Matcher& m, std::string_view text) {
  const auto tokens = tokenize(text, m.text_config());
  std::vector<std::string> terms;
  terms.reserve(tokens.size());
  for (const auto& t : tokens) terms.push_back(t.text);

  std::map<ConceptId, DirectAnnotation> by_concept;
  for (const auto& match : resolve_longest_leftmost(m.find_all(terms))) {
    const std::pair<std::size_t, std::size_t> span{tokens[match.start].begin,
                                                   tokens[match.start + match.length - 1].end};
    for (const auto& owner : m.patterns()[match.pattern].owners) {
      auto& ann = by_concept[owner.concept_id];
      ann.concept_id = owner.concept_id;
      ann.spans.push_back(span);
      ann.weighted_count += owner.weight;
    }
  }
  std::vector<DirectAnnotation> out;
  out.reserve(by_concept.size());
  for (auto& [cid, ann] : by_concept) {
    std::sort(ann.spans.begin(), ann.spans.end());
    ann.match_count = static_cast<int>(ann.spans.size());
    out.push_back(std::move(ann));
  }
  return out;
}

std::vector<DirectAnnotation> recognize(const Matcher& m, const Document& doc) {
  return recognize_text(m, document_text(doc));
}

std::vector<std::vector<DirectAnnotation>> recognize_batch(const Matcher& m,
                                                           std::span<const Document> docs,
                                                           int threads) {
  std::vector<std::vector<DirectAnnotation>> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = recognize(m, docs[i]);
  return out;
}

// --- Expansion -------------------------------------------------------------

std::vector<ExpandedAnnotation> expand(std::span<const DirectAnnotation> direct,
                                       const EnrichedOntology& eo, int depth, double decay) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, std::to_string(depth), "depth < 1");
  if (!(decay > 0.0 && decay < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(decay), "decay must lie in (0, 1)");
  }
  if (direct.empty()) return {};

  const OntologyGraph& base = eo.base();
  const std::size_t n_onto = base.node_count();
  std::vector<double> score(n_onto, 0.0);
  std::vector<int> hops(n_onto, kUnreachable);
  std::vector<bool> via_ontology(n_onto, false);
  std::vector<bool> anchor(n_onto, false);

  for (const auto& ann : direct) {
    const NodeIndex a = eo.node_of(ann.concept_id);
    anchor[a] = true;
    const auto dist_union = eo.union_graph().bfs(a, depth);
    const auto dist_onto = base.graph().bfs(a, depth);
    for (NodeIndex v = 0; v < n_onto; ++v) {
      if (dist_union[v] == kUnreachable) continue;
      score[v] += ann.weighted_count * std::pow(decay, dist_union[v]);
      if (hops[v] == kUnreachable || dist_union[v] < hops[v]) hops[v] = dist_union[v];
      if (dist_onto[v] != kUnreachable) via_ontology[v] = true;
    }
  }

  std::vector<ExpandedAnnotation> out;
  for (NodeIndex v = 0; v < n_onto; ++v) {
    if (hops[v] == kUnreachable) continue;
    const ConceptId& id = base.id_of(v);
    if (!base.find_concept(id)) continue;
    Provenance prov = anchor[v]          ? Provenance::kDirect
                      : via_ontology[v] ? Provenance::kOntologyExpansion
                                        : Provenance::kEncyclopediaExpansion;
    out.push_back({id, score[v], anchor[v] ? 0 : hops[v], prov});
  }
  // Node indices follow sorted IDs, so `out` is already in concept-ID order.
  return out;
}

KeywordSet suggest_keywords(const Document& doc, const Matcher& m, const EnrichedOntology& eo,
                            const SuggestParams& params) {
  KeywordSet set{doc.doc_id, {}};
  if (params.top_n && *params.top_n == 0) return set;
  const auto direct = recognize(m, doc);
  for (const auto& e : expand(direct, eo, params.depth, params.decay)) {
    if (params.min_score && e.score < *params.min_score) continue;
    set.keywords.push_back({e.concept_id, e.score, e.provenance, e.hops});
  }
  canonicalize(set);
  if (params.top_n && set.keywords.size() > *params.top_n) set.keywords.resize(*params.top_n);
  return set;
}

std::vector<KeywordSet> suggest_keywords_batch(std::span<const Document> docs, const Matcher& m,
                                               const EnrichedOntology& eo,
                                               const SuggestParams& params, int threads) {
  if (params.depth < 1 || !(params.decay > 0.0 && params.decay < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "depth/decay",
                "depth must be >= 1 and decay in (0, 1)");
  }
  std::vector<KeywordSet> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = suggest_keywords(docs[i], m, eo, params);
  return out;
}

}  // namespace conceptforge
