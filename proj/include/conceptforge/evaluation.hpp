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

#ifndef CONCEPTFORGE_EVALUATION_HPP_
#define CONCEPTFORGE_EVALUATION_HPP_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptforge/corpus.hpp"
#include "conceptforge/enrichment.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/keyword_set.hpp"
#include "conceptforge/ontology.hpp"

namespace conceptforge {

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const PRF&) const = default;
};

// Set semantics: duplicates in either input count once.
Counts confusion(std::span<const ConceptId> predicted, std::span<const ConceptId> gold);

// An undefined ratio (zero denominator) is 1 when both sets are empty and 0
// otherwise. f1 = 2PR / (P + R), or 0 when P + R = 0.
PRF prf(const Counts& c);
PRF prf(std::span<const ConceptId> predicted, std::span<const ConceptId> gold);

enum class Averaging { kMicro, kMacro };

// Micro pools the counts; macro averages per-document PRF. Throws
// kInvalidArgument on an empty input.
PRF aggregate(std::span<const Counts> per_doc, Averaging mode);

OrderedJson prf_to_json(const PRF& p);

// --- Set distance -------------------------------------------------------------

using DistanceFn = std::function<double(const ConceptId&, const ConceptId&)>;
using SetDistanceFn =
    std::function<double(std::span<const ConceptId>, std::span<const ConceptId>)>;

// 1/2 (mean_a min_b d(a, b) + mean_b min_a d(a, b)). Duplicates are ignored.
// Throws kEmptySet.
double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const DistanceFn& d);
// Graph forms use one multi-source BFS per side. Throw kEmptySet and
// kUnknownConcept.
double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const OntologyGraph& g);
double set_distance(std::span<const ConceptId> a, std::span<const ConceptId> b,
                    const EnrichedOntology& eo);

SetDistanceFn ontology_set_distance(const OntologyGraph& g);
SetDistanceFn enriched_set_distance(const EnrichedOntology& eo);

struct InterExpertReport {
  std::size_t experts = 0;
  double expert_mean = 0.0;  // over unordered expert pairs
  double model_mean = 0.0;   // over experts
  double difference = 0.0;   // model_mean - expert_mean
};

// Throws kInvalidArgument for fewer than two experts; kEmptySet propagates.
InterExpertReport inter_expert_report(std::span<const std::vector<ConceptId>> expert_sets,
                                      std::span<const ConceptId> model_set,
                                      const SetDistanceFn& distance);

// --- Judgments ----------------------------------------------------------------

enum class Verdict { kAppropriate, kWrong, kMissing };

std::string_view verdict_name(Verdict v);
// Throws kMalformedRecord.
Verdict parse_verdict(std::string_view name);

struct Judgment {
  std::string doc_id;
  ConceptId concept_id;
  Verdict verdict = Verdict::kAppropriate;
  std::string annotator_id;
  std::string timestamp;  // RFC 3339

  bool operator==(const Judgment&) const = default;
};

OrderedJson judgment_to_json(const Judgment& j);
// Throws kMalformedRecord(line).
Judgment judgment_from_json(const Json& record, std::size_t line = 0);
std::vector<Judgment> load_judgments(std::istream& in);
std::vector<Judgment> load_judgments_file(const std::string& path);

struct JudgmentReport {
  std::string doc_id;
  std::string annotator_id;
  std::vector<ConceptId> corrected;  // sorted
  Counts counts;
  PRF prf;
  // Absent when the suggested or the corrected set is empty.
  std::optional<double> distance;
};

// One report per annotator (sorted by annotator ID) over the judgments of
// `suggested.doc_id`; judgments for other documents are ignored.
// corrected = (suggested \ wrong) ∪ missing; PRF compares suggested against
// corrected.
// Throws kIncompleteJudgments listing unjudged suggestions, kInvalidRecord for
// an appropriate/wrong verdict outside the suggestions, kDuplicateId for a
// repeated (doc, concept, annotator), and kUnknownConcept from `distance`.
std::vector<JudgmentReport> judgment_metrics(const KeywordSet& suggested,
                                             std::span<const Judgment> judgments,
                                             const SetDistanceFn& distance);

struct JudgmentGroupSummary {
  std::string annotator_id;  // empty for the pooled group
  std::size_t tasks = 0;
  Counts counts;
  PRF micro;
  PRF macro;
  std::optional<double> mean_distance;
  std::size_t distance_count = 0;
};

struct JudgmentSummary {
  std::vector<JudgmentGroupSummary> annotators;  // sorted by ID
  JudgmentGroupSummary pooled;
};

// Throws kInvalidArgument on empty input.
JudgmentSummary summarize_judgments(std::span<const JudgmentReport> reports);
OrderedJson judgment_summary_to_json(const JudgmentSummary& s);

// --- Label statistics ----------------------------------------------------------

enum class LabelKind { kClasses, kConcepts };

LabelKind parse_label_kind(std::string_view name);

struct Histogram {
  // (label, document count), by count descending then label.
  std::vector<std::pair<std::string, std::size_t>> entries;
  std::size_t documents = 0;
  std::size_t total_assignments = 0;  // == sum of counts
};

// A label repeated within one document counts once.
Histogram class_distribution(const Corpus& corpus, LabelKind kind);
OrderedJson histogram_to_json(const Histogram& h);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_EVALUATION_HPP_
