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

#ifndef CONCEPTFORGE_ENRICHMENT_HPP_
#define CONCEPTFORGE_ENRICHMENT_HPP_

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conceptforge/graph.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/ontology.hpp"
#include "conceptforge/textproc.hpp"

namespace conceptforge {

using EntryId = std::string;

struct EncyclopediaEntry {
  EntryId entry_id;
  std::string title;
  std::string abstract;
  std::vector<EntryId> outlinks;  // only links that resolve
  std::vector<std::string> categories;
};

// Encyclopedia store indexed by entry ID and by normalized title. Outlinks to
// unknown entries are dropped at load and counted.
class Encyclopedia {
 public:
  // Throws kDuplicateEntryId or kMalformedRecord(line).
  static Encyclopedia load(std::istream& in);
  static Encyclopedia load_file(const std::string& path);
  static Encyclopedia from_entries(std::vector<EncyclopediaEntry> entries);

  std::size_t size() const { return entries_.size(); }
  std::size_t dropped_links() const { return dropped_links_; }
  const std::vector<EncyclopediaEntry>& entries() const { return entries_; }

  const EncyclopediaEntry* find(const EntryId& id) const;
  std::optional<NodeIndex> index_of(const EntryId& id) const;
  const EncyclopediaEntry& at(NodeIndex i) const { return entries_[i]; }

  // Entry IDs whose normalized title equals `normalized_title`, sorted.
  const std::vector<EntryId>& by_title(const std::string& normalized_title) const;

  // Link graph with every outlink as an undirected edge.
  const UndirectedGraph& link_graph() const { return links_; }

 private:
  void build();

  std::vector<EncyclopediaEntry> entries_;  // sorted by entry_id
  std::map<EntryId, NodeIndex> index_;
  std::map<std::string, std::vector<EntryId>> title_index_;
  UndirectedGraph links_;
  std::size_t dropped_links_ = 0;
};

// Lowercased letter-run tokens joined by single spaces.
std::string normalize_label(std::string_view label);

enum class MatchKind { kExact, kAlias, kMulti, kUnmapped };

std::string_view match_kind_name(MatchKind kind);
MatchKind parse_match_kind(std::string_view name);

// exact/alias hold one entry, multi two or more, unmapped none.
struct ConceptMapping {
  ConceptId concept_id;
  std::vector<EntryId> entry_ids;
  MatchKind kind = MatchKind::kUnmapped;

  bool operator==(const ConceptMapping&) const = default;
};

// Manual concept -> entry rows; they replace automatic matching for the
// concepts they name.
using MappingOverrides = std::map<ConceptId, std::vector<EntryId>>;

// TSV `concept_id<TAB>entry_id`, repeatable rows, '#' comments.
MappingOverrides load_mapping_overrides(std::istream& in);

inline constexpr std::size_t kMaxMultiEntries = 5;

// Matching cascade, per concept in ID order:
//   1. normalized prefLabel equals a normalized title        -> exact
//   2. an altLabel equals a title (first altLabel that hits)  -> alias
//   3. title-token Jaccard >= min_jaccard against any label,
//      top kMaxMultiEntries by Jaccard then entry ID          -> multi
//      (a single qualifying entry is recorded as alias)
//   4. otherwise                                              -> unmapped
// Where several entries share a title the smallest entry ID wins.
std::vector<ConceptMapping> map_concepts(const OntologyGraph& ont, const Encyclopedia& enc,
                                         double min_jaccard,
                                         const MappingOverrides& overrides = {});

struct SupportNode {
  EntryId entry_id;
  int hop = 0;

  bool operator==(const SupportNode&) const = default;
};

struct SupportRelation {
  EntryId from;
  EntryId to;
  std::string type = "link";

  bool operator==(const SupportRelation&) const = default;
};

struct EnrichedConcept {
  ConceptId concept_id;
  std::vector<SupportNode> support_nodes;          // by hop, then entry ID
  std::vector<SupportRelation> support_relations;  // sorted (from, to)
  std::map<std::string, int> neighborhood_terms;

  std::size_t term_total() const;
  bool operator==(const EnrichedConcept&) const = default;
};

struct NeighborhoodParams {
  int radius = 1;
  std::size_t cap = 50;
};

// BFS over undirected outlinks from the mapped entries, admitting at most
// `cap` new nodes per hop in entry-ID order. Support relations are all
// encyclopedia links between support nodes. The term bag covers the
// abstracts of every support node.
EnrichedConcept build_neighborhood(const ConceptMapping& mapping, const Encyclopedia& enc,
                                   const NeighborhoodParams& params, const TextConfig& text);

struct EnrichParams {
  double min_jaccard = 0.4;
  NeighborhoodParams neighborhood;
  TextConfig text;
  MappingOverrides overrides;
  int threads = 0;
};

struct MappingStats {
  std::size_t exact = 0;
  std::size_t alias = 0;
  std::size_t multi = 0;
  std::size_t unmapped = 0;

  bool operator==(const MappingStats&) const = default;
};

// Base ontology plus one EnrichedConcept per thesaurus concept. Distances run
// over the union graph: ontology edges, concept <-> hop-0 support node edges
// and support relations, all weight 1. Ontology nodes keep their
// OntologyGraph indices; encyclopedia nodes follow.
class EnrichedOntology {
 public:
  EnrichedOntology(std::shared_ptr<const OntologyGraph> base,
                   std::vector<ConceptMapping> mappings,
                   std::map<ConceptId, EnrichedConcept> enriched);

  const OntologyGraph& base() const { return *base_; }
  std::shared_ptr<const OntologyGraph> base_ptr() const { return base_; }
  const std::vector<ConceptMapping>& mappings() const { return mappings_; }
  const std::map<ConceptId, EnrichedConcept>& enriched() const { return enriched_; }
  const EnrichedConcept& enriched(const ConceptId& id) const;
  MappingStats mapping_stats() const;

  const UndirectedGraph& union_graph() const { return union_; }
  bool is_ontology_node(NodeIndex node) const { return node < base_->node_count(); }
  // Throws kUnknownConcept.
  NodeIndex node_of(const ConceptId& id) const { return base_->node_of(id); }

  Json to_json() const;
  // Reads the output of to_json() against the given base ontology.
  static EnrichedOntology from_json(const Json& doc, std::shared_ptr<const OntologyGraph> base);

 private:
  std::shared_ptr<const OntologyGraph> base_;
  std::vector<ConceptMapping> mappings_;
  std::map<ConceptId, EnrichedConcept> enriched_;
  std::vector<EntryId> entry_nodes_;
  UndirectedGraph union_;
};

// map_concepts followed by build_neighborhood for every concept; concepts are
// distributed over OpenMP threads.
EnrichedOntology enrich_ontology(std::shared_ptr<const OntologyGraph> ont, const Encyclopedia& enc,
                                 const EnrichParams& params);

// Normalized union-graph distance. Throws kUnknownConcept.
std::optional<int> enriched_hops(const EnrichedOntology& eo, const ConceptId& a,
                                 const ConceptId& b);
double enriched_distance(const EnrichedOntology& eo, const ConceptId& a, const ConceptId& b);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_ENRICHMENT_HPP_
