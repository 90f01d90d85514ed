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

#include "conceptforge/ontology.hpp"

#include <algorithm>
#include <set>

#include "conceptforge/error.hpp"
#include "conceptforge/io.hpp"

namespace conceptforge {

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// Returns an ID on a broader cycle, if any. Iterative three-colour DFS.
std::optional<ConceptId> find_broader_cycle(const std::map<ConceptId, Concept>& concepts) {
  enum Colour { kWhite, kGrey, kBlack };
  std::map<ConceptId, Colour> colour;
  for (const auto& [id, c] : concepts) colour[id] = kWhite;
  for (const auto& [root, unused] : concepts) {
    if (colour[root] != kWhite) continue;
    std::vector<std::pair<const Concept*, std::size_t>> stack{{&concepts.at(root), 0}};
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < node->broader.size()) {
        const ConceptId& up = node->broader[next++];
        if (colour[up] == kGrey) return up;
        if (colour[up] == kWhite) {
          colour[up] = kGrey;
          stack.emplace_back(&concepts.at(up), 0);
        }
      } else {
        colour[node->id] = kBlack;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

OntologyGraph OntologyGraph::load(std::istream& in) {
  std::vector<Concept> concepts;
  std::vector<ClassNode> classes;
  std::map<ConceptId, int> declared_levels;
  std::set<ConceptId> seen;
  for_each_json_line(in, [&](const Json& rec, std::size_t line) {
    std::string id = required_string(rec, "id", line);
    if (blank(id)) throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "blank id");
    if (!seen.insert(id).second) throw Error(ErrorCode::kDuplicateId, id);
    std::string kind = optional_string(rec, "kind", line);
    std::string label = required_string(rec, "prefLabel", line);
    if (label.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "empty prefLabel");
    }
    if (kind.empty() || kind == "concept") {
      concepts.push_back(Concept{id, label, string_list(rec, "altLabels", line),
                                 string_list(rec, "broader", line),
                                 string_list(rec, "related", line)});
    } else if (kind == "class") {
      ClassNode node{id, label, std::nullopt, 1};
      if (std::string parent = optional_string(rec, "parent", line); !parent.empty()) {
        node.parent = parent;
      }
      if (auto lv = rec.find("level"); lv != rec.end() && !lv->is_null()) {
        if (!lv->is_number_integer() || lv->get<int>() < 1) {
          throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                      "level must be a positive integer");
        }
        declared_levels[id] = lv->get<int>();
      }
      classes.push_back(std::move(node));
    } else {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "unknown kind '" + kind + "'");
    }
  });
  OntologyGraph g = from_records(std::move(concepts), std::move(classes));
  for (const auto& [id, level] : declared_levels) {
    if (g.classes_.at(id).level != level) {
      throw Error(ErrorCode::kInvalidRecord, id,
                  "declared level " + std::to_string(level) + " but parent chain gives " +
                      std::to_string(g.classes_.at(id).level));
    }
  }
  return g;
}

OntologyGraph OntologyGraph::load_file(const std::string& path) {
  auto in = open_input(path);
  return load(in);
}

OntologyGraph OntologyGraph::from_records(std::vector<Concept> concepts,
                                          std::vector<ClassNode> classes) {
  OntologyGraph g;
  for (auto& c : concepts) {
    ConceptId id = c.id;
    if (g.concepts_.count(id)) throw Error(ErrorCode::kDuplicateId, id);
    g.concepts_.emplace(std::move(id), std::move(c));
  }
  for (auto& c : classes) {
    ConceptId id = c.id;
    if (g.concepts_.count(id) || g.classes_.count(id)) throw Error(ErrorCode::kDuplicateId, id);
    g.classes_.emplace(std::move(id), std::move(c));
  }
  g.build();
  return g;
}

void OntologyGraph::build() {
  for (const auto& [id, c] : concepts_) {
    for (const auto* refs : {&c.broader, &c.related}) {
      for (const auto& ref : *refs) {
        if (!concepts_.count(ref)) throw Error(ErrorCode::kDanglingReference, ref);
      }
    }
    if (std::find(c.related.begin(), c.related.end(), id) != c.related.end()) {
      throw Error(ErrorCode::kInvalidRecord, id, "related self-loop");
    }
    if (std::find(c.broader.begin(), c.broader.end(), id) != c.broader.end()) {
      throw Error(ErrorCode::kBroaderCycle, id);
    }
  }
  if (auto cyc = find_broader_cycle(concepts_)) throw Error(ErrorCode::kBroaderCycle, *cyc);

  for (const auto& [id, node] : classes_) {
    if (node.parent && !classes_.count(*node.parent)) {
      throw Error(ErrorCode::kDanglingReference, *node.parent);
    }
  }
  // Levels from parent chains; a chain longer than the class count is a cycle.
  for (auto& [id, node] : classes_) {
    int level = 1;
    const ClassNode* cur = &node;
    while (cur->parent) {
      cur = &classes_.at(*cur->parent);
      if (++level > static_cast<int>(classes_.size())) throw Error(ErrorCode::kBroaderCycle, id);
    }
    node.level = level;
  }

  ids_.clear();
  for (const auto& [id, c] : concepts_) ids_.push_back(id);
  for (const auto& [id, c] : classes_) ids_.push_back(id);
  std::sort(ids_.begin(), ids_.end());
  for (NodeIndex i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;

  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  std::set<std::pair<NodeIndex, NodeIndex>> broader_pairs, related_pairs;
  for (const auto& [id, c] : concepts_) {
    NodeIndex self = index_.at(id);
    for (const auto& b : c.broader) {
      narrower_[b].push_back(id);
      NodeIndex other = index_.at(b);
      broader_pairs.insert({self, other});
      edges.emplace_back(self, other);
    }
    for (const auto& r : c.related) {
      NodeIndex other = index_.at(r);
      related_pairs.insert({std::min(self, other), std::max(self, other)});
      edges.emplace_back(self, other);
    }
  }
  for (auto& [id, list] : narrower_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::size_t class_edges = 0;
  for (const auto& [id, node] : classes_) {
    if (!node.parent) continue;
    edges.emplace_back(index_.at(id), index_.at(*node.parent));
    ++class_edges;
  }
  graph_ = UndirectedGraph(ids_.size(), edges);
  stats_ = OntologyStats{concepts_.size(), classes_.size(), broader_pairs.size(),
                         related_pairs.size(), class_edges};
}

const Concept* OntologyGraph::find_concept(const ConceptId& id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const ClassNode* OntologyGraph::find_class(const ConceptId& id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

const std::vector<ConceptId>& OntologyGraph::narrower(const ConceptId& id) const {
  static const std::vector<ConceptId> kEmpty;
  auto it = narrower_.find(id);
  return it == narrower_.end() ? kEmpty : it->second;
}

int OntologyGraph::hierarchy_level(const ConceptId& class_id) const {
  const ClassNode* node = find_class(class_id);
  if (!node) throw Error(ErrorCode::kUnknownClass, class_id);
  return node->level;
}

std::optional<ConceptId> OntologyGraph::ancestor_at_level(const ConceptId& class_id,
                                                          int level) const {
  const ClassNode* node = find_class(class_id);
  if (!node) throw Error(ErrorCode::kUnknownClass, class_id);
  if (level < 1 || node->level < level) return std::nullopt;
  while (node->level > level) node = &classes_.at(*node->parent);
  return node->id;
}

const std::string& OntologyGraph::label_of(const ConceptId& id) const {
  if (const Concept* c = find_concept(id)) return c->pref_label;
  if (const ClassNode* n = find_class(id)) return n->label;
  throw Error(ErrorCode::kUnknownConcept, id);
}

NodeIndex OntologyGraph::node_of(const ConceptId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownConcept, id);
  return it->second;
}

std::optional<NodeIndex> OntologyGraph::find_node(const ConceptId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> hop_distance(const OntologyGraph& g, const ConceptId& a, const ConceptId& b) {
  return g.graph().hops(g.node_of(a), g.node_of(b));
}

double semantic_distance(const OntologyGraph& g, const ConceptId& a, const ConceptId& b) {
  return normalized_distance(hop_distance(g, a, b));
}

}  // namespace conceptforge
