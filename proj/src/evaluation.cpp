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

#include "conceptforge/evaluation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "conceptforge/error.hpp"

namespace conceptforge {

namespace {

std::vector<ConceptId> unique_sorted(std::span<const ConceptId> ids) {
  std::vector<ConceptId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ratio(std::size_t num, std::size_t den, bool both_empty) {
  if (den == 0) return both_empty ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Counts confusion(std::span<const ConceptId> predicted, std::span<const ConceptId> gold) {
  const auto p = unique_sorted(predicted);
  const auto g = unique_sorted(gold);
  std::vector<ConceptId> common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(common));
  return {common.size(), p.size() - common.size(), g.size() - common.size()};
}

PRF prf(const Counts& c) {
  const bool both_empty = c.tp + c.fp + c.fn == 0;
  PRF r;
  r.precision = ratio(c.tp, c.tp + c.fp, both_empty);
  r.recall = ratio(c.tp, c.tp + c.fn, both_empty);
  const double s = r.precision + r.recall;
  r.f1 = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

PRF prf(std::span<const ConceptId> predicted, std::span<const ConceptId> gold) {
  return prf(confusion(predicted, gold));
}

PRF aggregate(std::span<const Counts> per_doc, Averaging mode) {
  if (per_doc.empty()) throw Error(ErrorCode::kInvalidArgument, "aggregate", "no documents");
  if (mode == Averaging::kMicro) {
    Counts pooled;
    for (const auto& c : per_doc) pooled += c;
    return prf(pooled);
  }
  PRF sum;
  for (const auto& c : per_doc) {
    const PRF p = prf(c);
    sum.precision += p.precision;
    sum.recall += p.recall;
    sum.f1 += p.f1;
  }
  const double n = static_cast<double>(per_doc.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

OrderedJson prf_to_json(const PRF& p) {
  OrderedJson j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  return j;
}

// --- Set distance -------------------------------------------------------------

double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const DistanceFn& d) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptySet, a.empty() ? "A" : "B");
  const auto ua = unique_sorted(a);
  const auto ub = unique_sorted(b);
  std::vector<double> col_min(ub.size(), 1.0);
  double row_sum = 0.0;
  for (const auto& x : ua) {
    double row_min = 1.0;
    for (std::size_t j = 0; j < ub.size(); ++j) {
      const double v = d(x, ub[j]);
      row_min = std::min(row_min, v);
      col_min[j] = std::min(col_min[j], v);
    }
    row_sum += row_min;
  }
  double col_sum = 0.0;
  for (double v : col_min) col_sum += v;
  return 0.5 * (row_sum / static_cast<double>(ua.size()) + col_sum / static_cast<double>(ub.size()));
}

namespace {

template <typename NodeOf>
double graph_set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                          const UndirectedGraph& graph, const NodeOf& node_of) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptySet, a.empty() ? "A" : "B");
  auto nodes = [&](std::span<const ConceptId> ids) {
    std::vector<NodeIndex> out;
    for (const auto& id : unique_sorted(ids)) out.push_back(node_of(id));
    return out;
  };
  const auto na = nodes(a);
  const auto nb = nodes(b);
  // min_b d(x, b) = normalized(min_b hops(x, b)) since d is increasing in h.
  auto one_side = [&](const std::vector<NodeIndex>& from, const std::vector<NodeIndex>& to) {
    const auto dist = graph.bfs(std::span<const NodeIndex>(to));
    double sum = 0.0;
    for (NodeIndex v : from) sum += normalized_distance(dist[v]);
    return sum / static_cast<double>(from.size());
  };
  return 0.5 * (one_side(na, nb) + one_side(nb, na));
}

}  // namespace

double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const OntologyGraph& g) {
  return graph_set_distance(a, b, g.graph(), [&](const ConceptId& id) { return g.node_of(id); });
}

double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const EnrichedOntology& eo) {
  return graph_set_distance(a, b, eo.union_graph(),
                            [&](const ConceptId& id) { return eo.node_of(id); });
}

SetDistanceFn ontology_set_distance(const OntologyGraph& g) {
  return [&g](std::span<const ConceptId> a, std::span<const ConceptId> b) {
    return set_distance(a, b, g);
  };
}

SetDistanceFn enriched_set_distance(const EnrichedOntology& eo) {
  return [&eo](std::span<const ConceptId> a, std::span<const ConceptId> b) {
    return set_distance(a, b, eo);
  };
}

InterExpertReport inter_expert_report(std::span<const std::vector<ConceptId>> expert_sets,
                                      std::span<const ConceptId> model_set,
                                      const SetDistanceFn& distance) {
  if (expert_sets.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(expert_sets.size()),
                "at least two expert sets required");
  }
  InterExpertReport r;
  r.experts = expert_sets.size();
  double pair_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < expert_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < expert_sets.size(); ++j) {
      pair_sum += distance(expert_sets[i], expert_sets[j]);
      ++pairs;
    }
  }
  double model_sum = 0.0;
  for (const auto& e : expert_sets) model_sum += distance(model_set, e);
  r.expert_mean = pair_sum / static_cast<double>(pairs);
  r.model_mean = model_sum / static_cast<double>(expert_sets.size());
  r.difference = r.model_mean - r.expert_mean;
  return r;
}

// --- Judgments ----------------------------------------------------------------

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAppropriate: return "appropriate";
    case Verdict::kWrong: return "wrong";
    case Verdict::kMissing: return "missing";
  }
  return "appropriate";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "appropriate") return Verdict::kAppropriate;
  if (name == "wrong") return Verdict::kWrong;
  if (name == "missing") return Verdict::kMissing;
  throw Error(ErrorCode::kMalformedRecord, std::string(name), "unknown verdict");
}

OrderedJson judgment_to_json(const Judgment& j) {
  OrderedJson out;
  out["doc_id"] = j.doc_id;
  out["concept_id"] = j.concept_id;
  out["verdict"] = verdict_name(j.verdict);
  out["annotator_id"] = j.annotator_id;
  out["timestamp"] = j.timestamp;
  return out;
}

Judgment judgment_from_json(const Json& record, std::size_t line) {
  if (!record.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "judgment must be an object");
  }
  Judgment j;
  j.doc_id = required_string(record, "doc_id", line);
  j.concept_id = required_string(record, "concept_id", line);
  try {
    j.verdict = parse_verdict(required_string(record, "verdict", line));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line), e.what());
  }
  j.annotator_id = required_string(record, "annotator_id", line);
  j.timestamp = optional_string(record, "timestamp", line);
  return j;
}

std::vector<Judgment> load_judgments(std::istream& in) {
  std::vector<Judgment> out;
  for_each_json_line(in, [&](const Json& record, std::size_t line) {
    out.push_back(judgment_from_json(record, line));
  });
  return out;
}

std::vector<Judgment> load_judgments_file(const std::string& path) {
  auto in = open_input(path);
  return load_judgments(in);
}

std::vector<JudgmentReport> judgment_metrics(const KeywordSet& suggested,
                                             std::span<const Judgment> judgments,
                                             const SetDistanceFn& distance) {
  const auto ids = suggested.ids();
  const std::set<ConceptId> suggested_ids(ids.begin(), ids.end());

  std::map<std::string, std::map<ConceptId, Verdict>> by_annotator;
  for (const auto& j : judgments) {
    if (j.doc_id != suggested.doc_id) continue;
    if (j.verdict != Verdict::kMissing && !suggested_ids.count(j.concept_id)) {
      throw Error(ErrorCode::kInvalidRecord, j.concept_id,
                  "verdict '" + std::string(verdict_name(j.verdict)) +
                      "' on a concept that was not suggested");
    }
    if (!by_annotator[j.annotator_id].emplace(j.concept_id, j.verdict).second) {
      throw Error(ErrorCode::kDuplicateId, j.doc_id + "/" + j.concept_id + "/" + j.annotator_id,
                  "duplicate judgment");
    }
  }

  std::vector<JudgmentReport> out;
  for (const auto& [annotator, verdicts] : by_annotator) {
    std::vector<ConceptId> unjudged;
    for (const auto& id : suggested_ids) {
      auto it = verdicts.find(id);
      if (it == verdicts.end() || it->second == Verdict::kMissing) unjudged.push_back(id);
    }
    if (!unjudged.empty()) {
      std::string list;
      for (const auto& id : unjudged) list += (list.empty() ? "" : ", ") + id;
      throw Error(ErrorCode::kIncompleteJudgments, suggested.doc_id + "/" + annotator,
                  "unjudged: " + list);
    }
    JudgmentReport r;
    r.doc_id = suggested.doc_id;
    r.annotator_id = annotator;
    for (const auto& [id, v] : verdicts) {
      if (v != Verdict::kWrong) r.corrected.push_back(id);
    }
    r.counts = confusion(ids, r.corrected);
    r.prf = prf(r.counts);
    if (!ids.empty() && !r.corrected.empty()) r.distance = distance(ids, r.corrected);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

JudgmentGroupSummary summarize_group(std::string annotator,
                                     const std::vector<const JudgmentReport*>& reports) {
  JudgmentGroupSummary g;
  g.annotator_id = std::move(annotator);
  g.tasks = reports.size();
  std::vector<Counts> counts;
  double dist_sum = 0.0;
  for (const auto* r : reports) {
    counts.push_back(r->counts);
    g.counts += r->counts;
    if (r->distance) {
      dist_sum += *r->distance;
      ++g.distance_count;
    }
  }
  g.micro = aggregate(counts, Averaging::kMicro);
  g.macro = aggregate(counts, Averaging::kMacro);
  if (g.distance_count > 0) g.mean_distance = dist_sum / static_cast<double>(g.distance_count);
  return g;
}

OrderedJson group_to_json(const JudgmentGroupSummary& g) {
  OrderedJson j;
  if (!g.annotator_id.empty()) j["annotator_id"] = g.annotator_id;
  j["tasks"] = g.tasks;
  j["counts"] = {{"tp", g.counts.tp}, {"fp", g.counts.fp}, {"fn", g.counts.fn}};
  j["micro"] = prf_to_json(g.micro);
  j["macro"] = prf_to_json(g.macro);
  j["mean_distance"] = g.mean_distance ? OrderedJson(*g.mean_distance) : OrderedJson(nullptr);
  j["distance_count"] = g.distance_count;
  return j;
}

}  // namespace

JudgmentSummary summarize_judgments(std::span<const JudgmentReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::kInvalidArgument, "judgments", "no reports");
  std::map<std::string, std::vector<const JudgmentReport*>> groups;
  std::vector<const JudgmentReport*> all;
  for (const auto& r : reports) {
    groups[r.annotator_id].push_back(&r);
    all.push_back(&r);
  }
  JudgmentSummary s;
  for (const auto& [annotator, group] : groups) s.annotators.push_back(summarize_group(annotator, group));
  s.pooled = summarize_group("", all);
  return s;
}

OrderedJson judgment_summary_to_json(const JudgmentSummary& s) {
  OrderedJson j;
  j["annotators"] = OrderedJson::array();
  for (const auto& g : s.annotators) j["annotators"].push_back(group_to_json(g));
  j["pooled"] = group_to_json(s.pooled);
  return j;
}

// --- Label statistics ----------------------------------------------------------

LabelKind parse_label_kind(std::string_view name) {
  if (name == "classes") return LabelKind::kClasses;
  if (name == "concepts") return LabelKind::kConcepts;
  throw Error(ErrorCode::kInvalidArgument, std::string(name), "expected classes or concepts");
}

Histogram class_distribution(const Corpus& corpus, LabelKind kind) {
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : corpus.docs()) {
    const auto& labels = kind == LabelKind::kClasses ? doc.gold_classes : doc.gold_concepts;
    for (const auto& l : unique_sorted(labels)) ++counts[l];
  }
  Histogram h;
  h.documents = corpus.size();
  h.entries.assign(counts.begin(), counts.end());
  std::stable_sort(h.entries.begin(), h.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [label, n] : h.entries) h.total_assignments += n;
  return h;
}

OrderedJson histogram_to_json(const Histogram& h) {
  OrderedJson j;
  j["documents"] = h.documents;
  j["distinct_labels"] = h.entries.size();
  j["total_assignments"] = h.total_assignments;
  j["histogram"] = OrderedJson::array();
  for (std::size_t i = 0; i < h.entries.size(); ++i) {
    j["histogram"].push_back(
        {{"rank", i + 1}, {"label", h.entries[i].first}, {"count", h.entries[i].second}});
  }
  return j;
}

}  // namespace conceptforge
