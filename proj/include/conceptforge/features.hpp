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

#ifndef CONCEPTFORGE_FEATURES_HPP_
#define CONCEPTFORGE_FEATURES_HPP_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptforge/io.hpp"
#include "conceptforge/rng.hpp"

namespace conceptforge {

using TermIndex = std::uint32_t;

// Terms kept with their document frequencies; indices follow lexicographic
// term order.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> df, std::size_t num_docs);

  std::size_t size() const { return terms_.size(); }
  std::size_t num_docs() const { return num_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::uint32_t df(TermIndex i) const { return df_[i]; }
  std::optional<TermIndex> index_of(const std::string& term) const;

  // Maps terms to indices, dropping out-of-vocabulary ones.
  std::vector<TermIndex> encode(std::span<const std::string> terms) const;

  // term<TAB>index<TAB>df lines preceded by a `#docs<TAB>N` header.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::istream& in);

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::size_t num_docs_ = 0;
  std::map<std::string, TermIndex> index_;
};

// Throws kEmptyCorpus.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs, std::size_t min_df);

// (index, value) pairs with strictly increasing index and no zero values.
struct SparseVector {
  std::vector<std::pair<TermIndex, double>> entries;

  double dot(std::span<const double> dense) const;
  double norm() const;
  bool operator==(const SparseVector&) const = default;
};

SparseVector to_sparse(std::span<const double> dense);

// idf(t) = ln((1 + N) / (1 + df(t))) + 1.
double smoothed_idf(std::size_t num_docs, std::uint32_t df);

// Raw tf times smoothed idf, L2-normalized. Out-of-vocabulary terms are
// ignored; a document with none yields the empty vector.
SparseVector tfidf(std::span<const std::string> doc_terms, const Vocabulary& vocab);

std::vector<SparseVector> tfidf_batch(std::span<const std::vector<std::string>> docs,
                                      const Vocabulary& vocab, int threads = 0);

// --- Labeled LDA -------------------------------------------------------------

struct LldaParams {
  // Non-positive alpha selects 50 / |T|.
  double alpha = 0.0;
  double beta = 0.01;
  int iterations = 500;
  std::uint64_t seed = 42;
};

// Training document: vocabulary indices and topic (label) indices.
struct LldaDocument {
  std::vector<TermIndex> words;
  std::vector<std::uint32_t> labels;
};

// Collapsed Gibbs state. Counts are dense row-major arrays.
struct LldaModel {
  std::vector<std::string> topics;  // label IDs
  std::size_t vocab_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::vector<std::uint32_t> topic_word;   // |T| x |V|
  std::vector<std::uint32_t> topic_total;  // |T|
  std::vector<std::uint32_t> doc_topic;    // |D| x |T|
  std::vector<std::vector<std::uint32_t>> assignments;  // per doc, per token

  std::size_t num_topics() const { return topics.size(); }
  std::uint32_t n_tw(std::size_t t, TermIndex w) const { return topic_word[t * vocab_size + w]; }
  std::uint32_t n_dt(std::size_t d, std::size_t t) const {
    return doc_topic[d * topics.size() + t];
  }

  Json to_json() const;
  static LldaModel from_json(const Json& j);

  bool operator==(const LldaModel&) const = default;
};

// Verifies the count identities against `docs`; returns a description of the
// first violation, if any:
//   sum_w n_tw = n_t, sum_t n_dt = |doc|, counts rebuilt from assignments
//   match, and every assignment names one of the document's labels.
std::optional<std::string> check_llda_state(const LldaModel& model,
                                            std::span<const LldaDocument> docs);

// Called after every sweep with the 1-based sweep number.
using SweepObserver = std::function<void(int sweep, const LldaModel& model)>;

// Constrained collapsed Gibbs sampling: each token's topic is drawn from its
// document's labels with p(t) ∝ (n_dt + alpha)(n_tw + beta) / (n_t + |V| beta).
// Throws kUnlabeledDocument(doc index) or kInvalidArgument.
LldaModel train_llda(std::span<const LldaDocument> docs, std::vector<std::string> topics,
                     std::size_t vocab_size, const LldaParams& params,
                     const SweepObserver& observer = {});

// Unconstrained inference with frozen topic-word counts. Returns
// (n_dt + alpha) / (len + |T| alpha) after the final sweep.
std::vector<double> infer_topics(const LldaModel& model, std::span<const TermIndex> words,
                                 int iterations, std::uint64_t seed);

// Document i uses seed mix_seed(seed, i); parallel over documents.
std::vector<std::vector<double>> infer_topics_batch(const LldaModel& model,
                                                    std::span<const std::vector<TermIndex>> docs,
                                                    int iterations, std::uint64_t seed,
                                                    int threads = 0);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_FEATURES_HPP_
