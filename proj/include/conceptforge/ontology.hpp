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

#ifndef CONCEPTFORGE_ONTOLOGY_HPP_
#define CONCEPTFORGE_ONTOLOGY_HPP_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conceptforge/graph.hpp"

namespace conceptforge {

using ConceptId = std::string;

// Thesaurus concept.
struct Concept {
  ConceptId id;
  std::string pref_label;
  std::vector<std::string> alt_labels;
  std::vector<ConceptId> broader;
  std::vector<ConceptId> related;
};

// Node of the hierarchical classification system. Root children have level 1.
struct ClassNode {
  ConceptId id;
  std::string label;
  std::optional<ConceptId> parent;
  int level = 1;
};

struct OntologyStats {
  std::size_t concepts = 0;
  std::size_t classes = 0;
  std::size_t broader_edges = 0;
  std::size_t related_edges = 0;
  std::size_t class_edges = 0;
};

// Thesaurus plus classification system. Concepts and classes share one ID
// space but live in separate maps. Immutable once loaded.
//
// Every ID is also a node of an undirected unit-weight graph whose edges are
// broader/narrower, related and class parent links.
class OntologyGraph {
 public:
  // Reads ontology-jsonl. Throws Error with kDuplicateId, kDanglingReference,
  // kBroaderCycle or kMalformedRecord.
  static OntologyGraph load(std::istream& in);
  static OntologyGraph load_file(const std::string& path);
  static OntologyGraph from_records(std::vector<Concept> concepts, std::vector<ClassNode> classes);

  const std::map<ConceptId, Concept>& concepts() const { return concepts_; }
  const std::map<ConceptId, ClassNode>& classes() const { return classes_; }
  const OntologyStats& stats() const { return stats_; }

  const Concept* find_concept(const ConceptId& id) const;
  const ClassNode* find_class(const ConceptId& id) const;
  bool contains(const ConceptId& id) const { return index_.count(id) > 0; }

  // Inverse of broader, sorted by ID.
  const std::vector<ConceptId>& narrower(const ConceptId& id) const;

  // Throws kUnknownClass.
  int hierarchy_level(const ConceptId& class_id) const;

  // Ancestor of a class at exactly `level`, or nullopt when the class is
  // shallower than `level`. Throws kUnknownClass.
  std::optional<ConceptId> ancestor_at_level(const ConceptId& class_id, int level) const;

  // Display label for a concept or class ID.
  const std::string& label_of(const ConceptId& id) const;

  const UndirectedGraph& graph() const { return graph_; }
  std::size_t node_count() const { return ids_.size(); }
  // Throws kUnknownConcept.
  NodeIndex node_of(const ConceptId& id) const;
  std::optional<NodeIndex> find_node(const ConceptId& id) const;
  const ConceptId& id_of(NodeIndex node) const { return ids_[node]; }

 private:
  void build();

  std::map<ConceptId, Concept> concepts_;
  std::map<ConceptId, ClassNode> classes_;
  std::map<ConceptId, std::vector<ConceptId>> narrower_;
  std::map<ConceptId, NodeIndex> index_;
  std::vector<ConceptId> ids_;
  UndirectedGraph graph_;
  OntologyStats stats_;
};

// Shortest path length over the undirected ontology graph, nullopt when
// unreachable. Throws kUnknownConcept.
std::optional<int> hop_distance(const OntologyGraph& g, const ConceptId& a, const ConceptId& b);

// hops / (hops + 1), 1.0 when unreachable.
double semantic_distance(const OntologyGraph& g, const ConceptId& a, const ConceptId& b);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_ONTOLOGY_HPP_
