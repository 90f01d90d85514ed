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

#ifndef CONCEPTFORGE_REVIEW_HPP_
#define CONCEPTFORGE_REVIEW_HPP_

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "conceptforge/corpus.hpp"
#include "conceptforge/enrichment.hpp"
#include "conceptforge/evaluation.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/keyword_set.hpp"
#include "conceptforge/ontology.hpp"

namespace httplib {
class Server;
}

namespace conceptforge {

inline constexpr int kDefaultReviewPort = 8765;
inline constexpr std::size_t kConceptSearchLimit = 20;

enum class TaskStatus { kPending, kInProgress, kDone };

std::string_view task_status_name(TaskStatus s);

// Outcome of an API call: HTTP status plus JSON body (empty for 204).
struct ApiResponse {
  int status = 200;
  std::string body;
};

// Appends lines to a file and fsyncs before returning.
class DurableLog {
 public:
  explicit DurableLog(std::string path);
  ~DurableLog();
  DurableLog(const DurableLog&) = delete;
  DurableLog& operator=(const DurableLog&) = delete;

  void append(const std::vector<std::string>& lines);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  int fd_ = -1;
};

struct ReviewConfig {
  std::string judgment_log;
  // Defaults to judgment_log + ".claims".
  std::string claims_log;
};

// Task store behind the review API. Tasks are the keyword sets in input order;
// every task has one status per annotator. State lives in two append-only
// JSON-lines logs (judgments and task claims), replayed on construction.
//
// Thread safety: reads take a shared lock, claims and submissions an exclusive
// one.
class ReviewStore {
 public:
  // `eo` may be null; distances then use the plain ontology graph.
  ReviewStore(std::shared_ptr<const OntologyGraph> ontology,
              std::shared_ptr<const EnrichedOntology> eo, Corpus corpus,
              std::vector<KeywordSet> tasks, ReviewConfig config);

  ApiResponse next_task(const std::string& annotator);
  ApiResponse submit(const std::string& body);
  ApiResponse concepts(const std::string& query) const;
  ApiResponse metrics() const;
  ApiResponse status() const;

  TaskStatus status_of(const std::string& doc_id, const std::string& annotator) const;
  std::size_t task_count() const { return tasks_.size(); }

 private:
  struct Task {
    KeywordSet suggestions;
    const Document* doc = nullptr;
  };

  void replay();
  // Returns an error response when the batch is rejected.
  std::optional<ApiResponse> check_batch(const std::vector<Judgment>& batch) const;
  void apply(const Judgment& j);
  OrderedJson task_json(const Task& t, TaskStatus s) const;
  std::string metrics_body() const;

  std::shared_ptr<const OntologyGraph> ontology_;
  std::shared_ptr<const EnrichedOntology> eo_;
  Corpus corpus_;
  std::vector<Task> tasks_;
  std::map<std::string, std::size_t> task_index_;
  ReviewConfig config_;

  mutable std::shared_mutex mu_;
  // (doc_id, annotator) -> status; absent means pending.
  std::map<std::pair<std::string, std::string>, TaskStatus> status_;
  // (doc_id, annotator) -> concept -> judgment
  std::map<std::pair<std::string, std::string>, std::map<ConceptId, Judgment>> judged_;
  std::unique_ptr<DurableLog> judgment_log_;
  std::unique_ptr<DurableLog> claims_log_;
};

// Registers the API routes. Static files are served from `static_dir` when it
// is non-empty.
void install_review_routes(httplib::Server& server, ReviewStore& store,
                           const std::string& static_dir = {});

// Blocks serving on host:port until the server is stopped.
bool run_review_server(ReviewStore& store, const std::string& host, int port,
                       const std::string& static_dir = {});

}  // namespace conceptforge

#endif  // CONCEPTFORGE_REVIEW_HPP_
