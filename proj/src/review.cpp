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

#include "conceptforge/review.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <set>
#include <tuple>

#include "conceptforge/error.hpp"
#include "conceptforge/textproc.hpp"

namespace conceptforge {

std::string_view task_status_name(TaskStatus s) {
  switch (s) {
    case TaskStatus::kPending: return "pending";
    case TaskStatus::kInProgress: return "in_progress";
    case TaskStatus::kDone: return "done";
  }
  return "pending";
}

namespace {

ApiResponse error_response(int status, std::string_view code, const std::string& detail) {
  OrderedJson j;
  j["error"] = code;
  j["detail"] = detail;
  return {status, j.dump()};
}

std::string utc_now_rfc3339() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

// --- DurableLog ---------------------------------------------------------------

DurableLog::DurableLog(std::string path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(ErrorCode::kIo, path_, std::strerror(errno));
}

DurableLog::~DurableLog() {
  if (fd_ >= 0) ::close(fd_);
}

void DurableLog::append(const std::vector<std::string>& lines) {
  std::string buf;
  for (const auto& l : lines) buf += l + '\n';
  std::size_t off = 0;
  while (off < buf.size()) {
    const ssize_t n = ::write(fd_, buf.data() + off, buf.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIo, path_, std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw Error(ErrorCode::kIo, path_, std::strerror(errno));
}

// --- ReviewStore ----------------------------------------------------------------

ReviewStore::ReviewStore(std::shared_ptr<const OntologyGraph> ontology,
                         std::shared_ptr<const EnrichedOntology> eo, Corpus corpus,
                         std::vector<KeywordSet> tasks, ReviewConfig config)
    : ontology_(std::move(ontology)),
      eo_(std::move(eo)),
      corpus_(std::move(corpus)),
      config_(std::move(config)) {
  if (config_.judgment_log.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "judgment_log", "path required");
  }
  if (config_.claims_log.empty()) config_.claims_log = config_.judgment_log + ".claims";
  for (auto& ks : tasks) {
    if (ks.keywords.empty()) continue;
    const Document* doc = corpus_.find(ks.doc_id);
    if (!doc) throw Error(ErrorCode::kInvalidRecord, ks.doc_id, "task document not in corpus");
    if (!task_index_.emplace(ks.doc_id, tasks_.size()).second) {
      throw Error(ErrorCode::kDuplicateDocId, ks.doc_id);
    }
    for (const auto& k : ks.keywords) {
      if (!ontology_->find_concept(k.concept_id)) {
        throw Error(ErrorCode::kUnknownConcept, k.concept_id);
      }
    }
    tasks_.push_back({std::move(ks), doc});
  }
  replay();
  judgment_log_ = std::make_unique<DurableLog>(config_.judgment_log);
  claims_log_ = std::make_unique<DurableLog>(config_.claims_log);
}

void ReviewStore::replay() {
  namespace fs = std::filesystem;
  if (fs::exists(config_.claims_log)) {
    auto in = open_input(config_.claims_log);
    for_each_json_line(in, [&](const Json& r, std::size_t line) {
      const auto key = std::make_pair(required_string(r, "doc_id", line),
                                      required_string(r, "annotator_id", line));
      status_.try_emplace(key, TaskStatus::kInProgress);
    });
  }
  if (fs::exists(config_.judgment_log)) {
    for (const auto& j : load_judgments_file(config_.judgment_log)) apply(j);
  }
}

TaskStatus ReviewStore::status_of(const std::string& doc_id, const std::string& annotator) const {
  std::shared_lock lock(mu_);
  auto it = status_.find({doc_id, annotator});
  return it == status_.end() ? TaskStatus::kPending : it->second;
}

OrderedJson ReviewStore::task_json(const Task& t, TaskStatus s) const {
  OrderedJson j;
  j["doc_id"] = t.suggestions.doc_id;
  j["title"] = t.doc->title;
  j["abstract"] = t.doc->abstract;
  j["status"] = task_status_name(s);
  j["suggestions"] = OrderedJson::array();
  for (const auto& k : t.suggestions.keywords) {
    OrderedJson kj;
    kj["concept_id"] = k.concept_id;
    kj["label"] = ontology_->label_of(k.concept_id);
    kj["score"] = k.score;
    kj["provenance"] = provenance_name(k.provenance);
    kj["hops"] = k.hops;
    j["suggestions"].push_back(std::move(kj));
  }
  return j;
}

ApiResponse ReviewStore::next_task(const std::string& annotator) {
  if (annotator.empty()) return error_response(400, "missing_annotator", "annotator is required");
  std::unique_lock lock(mu_);
  for (const auto& t : tasks_) {
    const auto key = std::make_pair(t.suggestions.doc_id, annotator);
    auto it = status_.find(key);
    if (it != status_.end() && it->second == TaskStatus::kDone) continue;
    if (it == status_.end()) {
      OrderedJson claim;
      claim["doc_id"] = key.first;
      claim["annotator_id"] = annotator;
      claims_log_->append({claim.dump()});
      status_.emplace(key, TaskStatus::kInProgress);
    }
    return {200, task_json(t, TaskStatus::kInProgress).dump()};
  }
  return {204, ""};
}

std::optional<ApiResponse> ReviewStore::check_batch(const std::vector<Judgment>& batch) const {
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& j : batch) {
    if (j.annotator_id.empty()) {
      return error_response(422, "malformed_judgment", "annotator_id must be non-empty");
    }
    auto ti = task_index_.find(j.doc_id);
    if (ti == task_index_.end()) {
      return error_response(422, "unknown_document", "no review task for doc_id " + j.doc_id);
    }
    const bool suggested = tasks_[ti->second].suggestions.contains(j.concept_id);
    if (j.verdict == Verdict::kMissing) {
      if (!ontology_->find_concept(j.concept_id)) {
        return error_response(422, "unknown_concept", "unknown concept " + j.concept_id);
      }
      if (suggested) {
        return error_response(422, "unjudgeable_reference",
                              j.concept_id + " was suggested; judge it appropriate or wrong");
      }
    } else if (!suggested) {
      return error_response(422, "unjudgeable_reference",
                            j.concept_id + " is not among the suggestions for " + j.doc_id);
    }
    const auto key = std::make_tuple(j.doc_id, j.concept_id, j.annotator_id);
    auto prior = judged_.find({j.doc_id, j.annotator_id});
    if (!seen.insert(key).second ||
        (prior != judged_.end() && prior->second.count(j.concept_id))) {
      return error_response(409, "duplicate_judgment",
                            j.doc_id + "/" + j.concept_id + "/" + j.annotator_id +
                                " already judged");
    }
  }
  return std::nullopt;
}

void ReviewStore::apply(const Judgment& j) {
  const auto key = std::make_pair(j.doc_id, j.annotator_id);
  judged_[key][j.concept_id] = j;
  auto ti = task_index_.find(j.doc_id);
  if (ti == task_index_.end()) return;
  const auto& verdicts = judged_[key];
  bool complete = true;
  for (const auto& k : tasks_[ti->second].suggestions.keywords) {
    auto it = verdicts.find(k.concept_id);
    if (it == verdicts.end() || it->second.verdict == Verdict::kMissing) {
      complete = false;
      break;
    }
  }
  auto& s = status_[key];
  if (complete) {
    s = TaskStatus::kDone;
  } else if (s == TaskStatus::kPending) {
    s = TaskStatus::kInProgress;
  }
}

ApiResponse ReviewStore::submit(const std::string& body) {
  std::vector<Judgment> batch;
  try {
    const Json doc = Json::parse(body);
    const Json& list = doc.is_object() && doc.contains("judgments") ? doc.at("judgments") : doc;
    if (!list.is_array()) {
      return error_response(400, "malformed_body", "expected a JSON array of judgments");
    }
    std::size_t i = 0;
    for (const auto& r : list) batch.push_back(judgment_from_json(r, ++i));
  } catch (const Json::exception& e) {
    return error_response(400, "malformed_body", e.what());
  } catch (const Error& e) {
    return error_response(422, "malformed_judgment", e.what());
  }
  if (batch.empty()) return error_response(422, "empty_batch", "no judgments submitted");
  for (auto& j : batch) {
    if (j.timestamp.empty()) j.timestamp = utc_now_rfc3339();
  }

  std::unique_lock lock(mu_);
  if (auto err = check_batch(batch)) return *err;
  std::vector<std::string> lines;
  for (const auto& j : batch) lines.push_back(judgment_to_json(j).dump());
  try {
    judgment_log_->append(lines);
  } catch (const Error& e) {
    return error_response(500, "log_write_failed", e.what());
  }
  OrderedJson out;
  out["accepted"] = batch.size();
  out["tasks"] = OrderedJson::array();
  std::set<std::pair<std::string, std::string>> touched;
  for (const auto& j : batch) {
    apply(j);
    touched.emplace(j.doc_id, j.annotator_id);
  }
  for (const auto& [doc, annotator] : touched) {
    out["tasks"].push_back({{"doc_id", doc},
                            {"annotator_id", annotator},
                            {"status", task_status_name(status_[{doc, annotator}])}});
  }
  return {201, out.dump()};
}

ApiResponse ReviewStore::concepts(const std::string& query) const {
  const std::string q = to_lower(query);
  if (q.empty()) return error_response(400, "empty_query", "q must be non-empty");
  std::vector<std::pair<std::string, const Concept*>> hits;
  for (const auto& [id, c] : ontology_->concepts()) {
    bool match = to_lower(c.pref_label).rfind(q, 0) == 0;
    for (const auto& alt : c.alt_labels) match = match || to_lower(alt).rfind(q, 0) == 0;
    if (match) hits.emplace_back(to_lower(c.pref_label), &c);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second->id < b.second->id;
  });
  OrderedJson out = OrderedJson::array();
  for (std::size_t i = 0; i < hits.size() && i < kConceptSearchLimit; ++i) {
    out.push_back({{"id", hits[i].second->id}, {"pref_label", hits[i].second->pref_label}});
  }
  return {200, out.dump()};
}

std::string ReviewStore::metrics_body() const {
  const SetDistanceFn distance =
      eo_ ? enriched_set_distance(*eo_) : ontology_set_distance(*ontology_);
  std::vector<JudgmentReport> reports;
  for (const auto& t : tasks_) {
    std::vector<Judgment> judgments;
    for (const auto& [key, verdicts] : judged_) {
      if (key.first != t.suggestions.doc_id) continue;
      auto st = status_.find(key);
      if (st == status_.end() || st->second != TaskStatus::kDone) continue;
      for (const auto& [cid, j] : verdicts) judgments.push_back(j);
    }
    if (judgments.empty()) continue;
    for (auto& r : judgment_metrics(t.suggestions, judgments, distance)) {
      reports.push_back(std::move(r));
    }
  }
  if (reports.empty()) return {};
  OrderedJson out;
  out["completed_tasks"] = reports.size();
  out["reports"] = OrderedJson::array();
  for (const auto& r : reports) {
    OrderedJson rj;
    rj["doc_id"] = r.doc_id;
    rj["annotator_id"] = r.annotator_id;
    rj["corrected"] = r.corrected;
    rj["counts"] = {{"tp", r.counts.tp}, {"fp", r.counts.fp}, {"fn", r.counts.fn}};
    rj["prf"] = prf_to_json(r.prf);
    rj["distance"] = r.distance ? OrderedJson(*r.distance) : OrderedJson(nullptr);
    out["reports"].push_back(std::move(rj));
  }
  const auto summary = summarize_judgments(reports);
  const auto sj = judgment_summary_to_json(summary);
  out["annotators"] = sj.at("annotators");
  out["pooled"] = sj.at("pooled");
  return out.dump();
}

ApiResponse ReviewStore::metrics() const {
  std::shared_lock lock(mu_);
  std::string body;
  try {
    body = metrics_body();
  } catch (const Error& e) {
    return error_response(500, std::string(error_code_name(e.code())), e.what());
  }
  if (body.empty()) return error_response(404, "no_completed_tasks", "no task has been completed");
  return {200, body};
}

ApiResponse ReviewStore::status() const {
  std::shared_lock lock(mu_);
  std::map<std::string, std::array<std::size_t, 3>> per;
  for (const auto& [key, s] : status_) ++per[key.second][static_cast<int>(s)];
  OrderedJson out;
  out["tasks"] = tasks_.size();
  out["annotators"] = OrderedJson::array();
  for (const auto& [annotator, c] : per) {
    OrderedJson a;
    a["annotator_id"] = annotator;
    a["pending"] = tasks_.size() - c[1] - c[2];
    a["in_progress"] = c[1];
    a["done"] = c[2];
    out["annotators"].push_back(std::move(a));
  }
  return {200, out.dump()};
}

}  // namespace conceptforge
