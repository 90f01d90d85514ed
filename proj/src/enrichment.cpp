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

#include "conceptforge/enrichment.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "conceptforge/error.hpp"
#include "conceptforge/parallel.hpp"

namespace conceptforge {

namespace {

const TextConfig& label_config() {
  static const TextConfig kCfg{{}, Stemmer::kNone, true};
  return kCfg;
}

std::vector<std::string> label_tokens(std::string_view label) {
  auto terms = tokenize_terms(label, label_config());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  const double inter = static_cast<double>(common.size());
  return inter / (static_cast<double>(a.size() + b.size()) - inter);
}

}  // namespace

// --- Encyclopedia ----------------------------------------------------------

Encyclopedia Encyclopedia::load(std::istream& in) {
  std::vector<EncyclopediaEntry> entries;
  std::set<EntryId> seen;
  for_each_json_line(in, [&](const Json& rec, std::size_t line) {
    EncyclopediaEntry e;
    e.entry_id = required_string(rec, "entry_id", line);
    if (e.entry_id.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "empty entry_id");
    }
    if (!seen.insert(e.entry_id).second) throw Error(ErrorCode::kDuplicateEntryId, e.entry_id);
    e.title = required_string(rec, "title", line);
    if (e.title.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "empty title");
    }
    e.abstract = optional_string(rec, "abstract", line);
    e.outlinks = string_list(rec, "outlinks", line);
    e.categories = string_list(rec, "categories", line);
    entries.push_back(std::move(e));
  });
  return from_entries(std::move(entries));
}

Encyclopedia Encyclopedia::load_file(const std::string& path) {
  auto in = open_input(path);
  return load(in);
}

Encyclopedia Encyclopedia::from_entries(std::vector<EncyclopediaEntry> entries) {
  Encyclopedia enc;
  enc.entries_ = std::move(entries);
  std::sort(enc.entries_.begin(), enc.entries_.end(),
            [](const auto& a, const auto& b) { return a.entry_id < b.entry_id; });
  for (std::size_t i = 1; i < enc.entries_.size(); ++i) {
    if (enc.entries_[i].entry_id == enc.entries_[i - 1].entry_id) {
      throw Error(ErrorCode::kDuplicateEntryId, enc.entries_[i].entry_id);
    }
  }
  enc.build();
  return enc;
}

void Encyclopedia::build() {
  for (NodeIndex i = 0; i < entries_.size(); ++i) index_[entries_[i].entry_id] = i;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex i = 0; i < entries_.size(); ++i) {
    auto& links = entries_[i].outlinks;
    std::vector<EntryId> kept;
    for (auto& target : links) {
      auto it = index_.find(target);
      if (it == index_.end()) {
        ++dropped_links_;
        continue;
      }
      edges.emplace_back(i, it->second);
      kept.push_back(std::move(target));
    }
    links = std::move(kept);
    title_index_[normalize_label(entries_[i].title)].push_back(entries_[i].entry_id);
  }
  links_ = UndirectedGraph(entries_.size(), edges);
}

const EncyclopediaEntry* Encyclopedia::find(const EntryId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::optional<NodeIndex> Encyclopedia::index_of(const EntryId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<EntryId>& Encyclopedia::by_title(const std::string& normalized_title) const {
  static const std::vector<EntryId> kNone;
  auto it = title_index_.find(normalized_title);
  return it == title_index_.end() ? kNone : it->second;
}

std::string normalize_label(std::string_view label) {
  std::string out;
  for (const auto& t : tokenize_terms(label, label_config())) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// --- Mapping ---------------------------------------------------------------

std::string_view match_kind_name(MatchKind kind) {
  switch (kind) {
    case MatchKind::kExact: return "exact";
    case MatchKind::kAlias: return "alias";
    case MatchKind::kMulti: return "multi";
    case MatchKind::kUnmapped: return "unmapped";
  }
  return "unmapped";
}

MatchKind parse_match_kind(std::string_view name) {
  if (name == "exact") return MatchKind::kExact;
  if (name == "alias") return MatchKind::kAlias;
  if (name == "multi") return MatchKind::kMulti;
  if (name == "unmapped") return MatchKind::kUnmapped;
  throw Error(ErrorCode::kInvalidArgument, std::string(name), "unknown match kind");
}

MappingOverrides load_mapping_overrides(std::istream& in) {
  MappingOverrides out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no),
                  "expected concept_id<TAB>entry_id");
    }
    auto& ids = out[line.substr(0, tab)];
    std::string entry = line.substr(tab + 1);
    if (std::find(ids.begin(), ids.end(), entry) == ids.end()) ids.push_back(std::move(entry));
  }
  return out;
}

std::vector<ConceptMapping> map_concepts(const OntologyGraph& ont, const Encyclopedia& enc,
                                         double min_jaccard, const MappingOverrides& overrides) {
  if (!(min_jaccard > 0.0 && min_jaccard <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(min_jaccard),
                "min_jaccard must lie in (0, 1]");
  }
  for (const auto& [cid, entries] : overrides) {
    if (!ont.find_concept(cid)) throw Error(ErrorCode::kDanglingReference, cid);
    for (const auto& e : entries) {
      if (!enc.find(e)) throw Error(ErrorCode::kDanglingReference, e);
    }
  }

  std::vector<std::vector<std::string>> title_tokens(enc.size());
  std::map<std::string, std::vector<NodeIndex>> postings;
  for (NodeIndex i = 0; i < enc.size(); ++i) {
    title_tokens[i] = label_tokens(enc.at(i).title);
    for (const auto& t : title_tokens[i]) postings[t].push_back(i);
  }

  std::vector<ConceptMapping> out;
  out.reserve(ont.concepts().size());
  for (const auto& [cid, con] : ont.concepts()) {
    ConceptMapping m{cid, {}, MatchKind::kUnmapped};
    if (auto it = overrides.find(cid); it != overrides.end()) {
      m.entry_ids = it->second;
      std::sort(m.entry_ids.begin(), m.entry_ids.end());
      m.kind = m.entry_ids.size() == 1 ? MatchKind::kExact : MatchKind::kMulti;
      out.push_back(std::move(m));
      continue;
    }
    if (const auto& hits = enc.by_title(normalize_label(con.pref_label)); !hits.empty()) {
      m.entry_ids = {hits.front()};
      m.kind = MatchKind::kExact;
      out.push_back(std::move(m));
      continue;
    }
    for (const auto& alt : con.alt_labels) {
      if (const auto& hits = enc.by_title(normalize_label(alt)); !hits.empty()) {
        m.entry_ids = {hits.front()};
        m.kind = MatchKind::kAlias;
        break;
      }
    }
    if (m.kind == MatchKind::kAlias) {
      out.push_back(std::move(m));
      continue;
    }

    std::vector<std::vector<std::string>> labels{label_tokens(con.pref_label)};
    for (const auto& alt : con.alt_labels) labels.push_back(label_tokens(alt));
    std::set<NodeIndex> candidates;
    for (const auto& tokens : labels) {
      for (const auto& t : tokens) {
        if (auto p = postings.find(t); p != postings.end()) {
          candidates.insert(p->second.begin(), p->second.end());
        }
      }
    }
    std::vector<std::pair<double, NodeIndex>> scored;
    for (NodeIndex e : candidates) {
      double best = 0.0;
      for (const auto& tokens : labels) best = std::max(best, jaccard(tokens, title_tokens[e]));
      if (best >= min_jaccard) scored.emplace_back(best, e);
    }
    // Entry indices follow entry-ID order, so ties resolve lexicographically.
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (scored.size() > kMaxMultiEntries) scored.resize(kMaxMultiEntries);
    for (const auto& [score, e] : scored) m.entry_ids.push_back(enc.at(e).entry_id);
    if (m.entry_ids.size() == 1) m.kind = MatchKind::kAlias;
    else if (m.entry_ids.size() > 1) m.kind = MatchKind::kMulti;
    out.push_back(std::move(m));
  }
  return out;
}

// --- Neighborhoods ---------------------------------------------------------

std::size_t EnrichedConcept::term_total() const {
  std::size_t total = 0;
  for (const auto& [term, count] : neighborhood_terms) total += static_cast<std::size_t>(count);
  return total;
}

EnrichedConcept build_neighborhood(const ConceptMapping& mapping, const Encyclopedia& enc,
                                   const NeighborhoodParams& params, const TextConfig& text) {
  if (params.radius < 0) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(params.radius), "negative radius");
  }
  EnrichedConcept ec;
  ec.concept_id = mapping.concept_id;
  if (mapping.entry_ids.empty()) return ec;

  const UndirectedGraph& links = enc.link_graph();
  std::vector<bool> visited(enc.size(), false);
  std::vector<NodeIndex> frontier;
  for (const auto& id : mapping.entry_ids) {
    auto idx = enc.index_of(id);
    if (!idx) throw Error(ErrorCode::kDanglingReference, id);
    if (visited[*idx]) continue;
    visited[*idx] = true;
    frontier.push_back(*idx);
  }
  std::sort(frontier.begin(), frontier.end());
  std::vector<NodeIndex> members = frontier;
  for (NodeIndex v : frontier) ec.support_nodes.push_back({enc.at(v).entry_id, 0});

  for (int hop = 1; hop <= params.radius && !frontier.empty(); ++hop) {
    std::vector<NodeIndex> next;
    for (NodeIndex v : frontier) {
      for (NodeIndex w : links.neighbors(v)) {
        if (!visited[w]) next.push_back(w);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > params.cap) next.resize(params.cap);
    for (NodeIndex w : next) {
      visited[w] = true;
      members.push_back(w);
      ec.support_nodes.push_back({enc.at(w).entry_id, hop});
    }
    frontier = std::move(next);
  }

  for (NodeIndex v : members) {
    for (const auto& target : enc.at(v).outlinks) {
      auto t = enc.index_of(target);
      if (t && visited[*t] && *t != v) {
        ec.support_relations.push_back({enc.at(v).entry_id, target, "link"});
      }
    }
    for (auto& term : tokenize_terms(enc.at(v).abstract, text)) ++ec.neighborhood_terms[term];
  }
  std::sort(ec.support_relations.begin(), ec.support_relations.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.from, a.to) < std::tie(b.from, b.to);
            });
  ec.support_relations.erase(
      std::unique(ec.support_relations.begin(), ec.support_relations.end()),
      ec.support_relations.end());
  return ec;
}

// --- Enriched ontology -----------------------------------------------------

EnrichedOntology::EnrichedOntology(std::shared_ptr<const OntologyGraph> base,
                                   std::vector<ConceptMapping> mappings,
                                   std::map<ConceptId, EnrichedConcept> enriched)
    : base_(std::move(base)), mappings_(std::move(mappings)), enriched_(std::move(enriched)) {
  for (const auto& [cid, c] : base_->concepts()) {
    if (!enriched_.count(cid)) enriched_.emplace(cid, EnrichedConcept{cid, {}, {}, {}});
  }
  std::set<EntryId> entries;
  for (const auto& [cid, ec] : enriched_) {
    if (!base_->find_concept(cid)) throw Error(ErrorCode::kUnknownConcept, cid);
    for (const auto& n : ec.support_nodes) entries.insert(n.entry_id);
  }
  entry_nodes_.assign(entries.begin(), entries.end());
  const auto offset = static_cast<NodeIndex>(base_->node_count());
  auto entry_node = [&](const EntryId& id) {
    auto it = std::lower_bound(entry_nodes_.begin(), entry_nodes_.end(), id);
    return offset + static_cast<NodeIndex>(it - entry_nodes_.begin());
  };

  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  const UndirectedGraph& g = base_->graph();
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    for (NodeIndex w : g.neighbors(v)) {
      if (v < w) edges.emplace_back(v, w);
    }
  }
  for (const auto& [cid, ec] : enriched_) {
    NodeIndex c = base_->node_of(cid);
    std::set<EntryId> members;
    for (const auto& n : ec.support_nodes) {
      members.insert(n.entry_id);
      if (n.hop == 0) edges.emplace_back(c, entry_node(n.entry_id));
    }
    for (const auto& r : ec.support_relations) {
      if (!members.count(r.from) || !members.count(r.to)) {
        throw Error(ErrorCode::kDanglingReference, r.from + "->" + r.to,
                    "support relation endpoint is not a support node");
      }
      edges.emplace_back(entry_node(r.from), entry_node(r.to));
    }
  }
  union_ = UndirectedGraph(base_->node_count() + entry_nodes_.size(), edges);
}

const EnrichedConcept& EnrichedOntology::enriched(const ConceptId& id) const {
  auto it = enriched_.find(id);
  if (it == enriched_.end()) throw Error(ErrorCode::kUnknownConcept, id);
  return it->second;
}

MappingStats EnrichedOntology::mapping_stats() const {
  MappingStats s;
  for (const auto& m : mappings_) {
    switch (m.kind) {
      case MatchKind::kExact: ++s.exact; break;
      case MatchKind::kAlias: ++s.alias; break;
      case MatchKind::kMulti: ++s.multi; break;
      case MatchKind::kUnmapped: ++s.unmapped; break;
    }
  }
  return s;
}

Json EnrichedOntology::to_json() const {
  MappingStats s = mapping_stats();
  Json doc;
  doc["version"] = 1;
  doc["mapping_stats"] = {{"exact", s.exact}, {"alias", s.alias}, {"multi", s.multi},
                          {"unmapped", s.unmapped}};
  std::map<ConceptId, const ConceptMapping*> by_concept;
  for (const auto& m : mappings_) by_concept[m.concept_id] = &m;
  Json concepts = Json::array();
  for (const auto& [cid, ec] : enriched_) {
    Json c;
    c["concept_id"] = cid;
    const ConceptMapping* m = by_concept.count(cid) ? by_concept[cid] : nullptr;
    c["match_kind"] = match_kind_name(m ? m->kind : MatchKind::kUnmapped);
    c["entry_ids"] = m ? m->entry_ids : std::vector<EntryId>{};
    Json nodes = Json::array();
    for (const auto& n : ec.support_nodes) nodes.push_back({{"entry_id", n.entry_id}, {"hop", n.hop}});
    c["support_nodes"] = std::move(nodes);
    Json rels = Json::array();
    for (const auto& r : ec.support_relations) {
      rels.push_back({{"from", r.from}, {"to", r.to}, {"type", r.type}});
    }
    c["support_relations"] = std::move(rels);
    c["neighborhood_terms"] = ec.neighborhood_terms;
    concepts.push_back(std::move(c));
  }
  doc["concepts"] = std::move(concepts);
  return doc;
}

EnrichedOntology EnrichedOntology::from_json(const Json& doc,
                                             std::shared_ptr<const OntologyGraph> base) {
  try {
    if (doc.at("version").get<int>() != 1) {
      throw Error(ErrorCode::kMalformedRecord, "version", "unsupported enriched ontology version");
    }
    std::vector<ConceptMapping> mappings;
    std::map<ConceptId, EnrichedConcept> enriched;
    for (const auto& c : doc.at("concepts")) {
      EnrichedConcept ec;
      ec.concept_id = c.at("concept_id").get<std::string>();
      mappings.push_back({ec.concept_id, c.at("entry_ids").get<std::vector<EntryId>>(),
                          parse_match_kind(c.at("match_kind").get<std::string>())});
      for (const auto& n : c.at("support_nodes")) {
        ec.support_nodes.push_back({n.at("entry_id").get<std::string>(), n.at("hop").get<int>()});
      }
      for (const auto& r : c.at("support_relations")) {
        ec.support_relations.push_back({r.at("from").get<std::string>(),
                                        r.at("to").get<std::string>(),
                                        r.value("type", std::string("link"))});
      }
      ec.neighborhood_terms = c.at("neighborhood_terms").get<std::map<std::string, int>>();
      enriched.emplace(ec.concept_id, std::move(ec));
    }
    return EnrichedOntology(std::move(base), std::move(mappings), std::move(enriched));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, "enriched-ontology", e.what());
  }
}

EnrichedOntology enrich_ontology(std::shared_ptr<const OntologyGraph> ont, const Encyclopedia& enc,
                                 const EnrichParams& params) {
  if (params.neighborhood.radius < 0) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(params.neighborhood.radius),
                "negative radius");
  }
  auto mappings = map_concepts(*ont, enc, params.min_jaccard, params.overrides);
  std::vector<EnrichedConcept> built(mappings.size());
  const auto n = static_cast<std::ptrdiff_t>(mappings.size());
  const int nthreads = resolve_threads(params.threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    built[i] = build_neighborhood(mappings[i], enc, params.neighborhood, params.text);
  }
  std::map<ConceptId, EnrichedConcept> enriched;
  for (auto& ec : built) {
    ConceptId id = ec.concept_id;
    enriched.emplace(std::move(id), std::move(ec));
  }
  return EnrichedOntology(std::move(ont), std::move(mappings), std::move(enriched));
}

std::optional<int> enriched_hops(const EnrichedOntology& eo, const ConceptId& a,
                                 const ConceptId& b) {
  return eo.union_graph().hops(eo.node_of(a), eo.node_of(b));
}

double enriched_distance(const EnrichedOntology& eo, const ConceptId& a, const ConceptId& b) {
  return normalized_distance(enriched_hops(eo, a, b));
}

}  // namespace conceptforge
