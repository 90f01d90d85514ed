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

#ifndef CONCEPTFORGE_CLASSIFIER_HPP_
#define CONCEPTFORGE_CLASSIFIER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptforge/corpus.hpp"
#include "conceptforge/evaluation.hpp"
#include "conceptforge/features.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/ontology.hpp"
#include "conceptforge/textproc.hpp"

namespace conceptforge {

struct TrainConfig {
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 42;
  double split_ratio = 0.67;
  int level = 1;
  double threshold = 0.0;

  bool operator==(const TrainConfig&) const = default;
};

OrderedJson train_config_to_json(const TrainConfig& c);
TrainConfig train_config_from_json(const Json& j);

// Throws kInvalidArgument on out-of-range fields.
void validate(const TrainConfig& c);

struct BinaryModel {
  std::string label;
  std::vector<double> weights;  // dense, size == dim
  double bias = 0.0;

  bool operator==(const BinaryModel&) const = default;
};

struct LinearModel {
  std::size_t dim = 0;
  std::vector<BinaryModel> classes;  // sorted by label
  TrainConfig config;

  bool operator==(const LinearModel&) const = default;
};

// Weights are stored as sparse (index, value) pairs.
OrderedJson linear_model_to_json(const LinearModel& m);
LinearModel linear_model_from_json(const Json& j);

struct TrainResult {
  LinearModel model;
  std::vector<std::string> warnings;
};

// One binary Pegasos learner per target class: hinge loss, L2
// penalty lambda, step size 1/(lambda t), epochs * N steps over per-epoch
// shuffles. The bias is an extra constant-1 feature and is regularized too.
// Labels without both positive and negative examples are skipped with a
// warning. Target classes are `classes` when given, otherwise every label seen
// in `labels`. Binary problems are distributed over OpenMP threads; the i-th
// target class uses seed mix_seed(cfg.seed, i).
// Throws kDimensionMismatch, kInvalidArgument.
TrainResult train_ovr(std::span<const SparseVector> features,
                      std::span<const std::vector<std::string>> labels, std::size_t dim,
                      const TrainConfig& cfg, int threads = 0,
                      std::span<const std::string> classes = {});

// Serial reference of the above: one binary problem.
BinaryModel train_binary(std::span<const SparseVector> features, std::span<const int> y,
                         std::size_t dim, const std::string& label, const TrainConfig& cfg,
                         std::uint64_t seed);

struct LabelScore {
  std::string label;
  double margin = 0.0;

  bool operator==(const LabelScore&) const = default;
};

// w·x + b for every class, in class order. Throws kDimensionMismatch.
std::vector<LabelScore> margins(const LinearModel& m, const SparseVector& x);

// Labels with margin > threshold, in class order.
std::vector<LabelScore> predict(const LinearModel& m, const SparseVector& x,
                                std::optional<double> threshold = std::nullopt);

std::vector<std::vector<LabelScore>> predict_batch(const LinearModel& m,
                                                   std::span<const SparseVector> xs,
                                                   int threads = 0);

// --- Splits and label projection -----------------------------------------------

struct Split {
  std::vector<std::size_t> train;  // indices into the corpus, shuffled order
  std::vector<std::size_t> test;
};

// Seeded Fisher-Yates shuffle of 0..n-1; the first ceil(ratio n), capped at
// n - 1, go to train.
// Throws kCorpusTooSmall (n < 2), kInvalidArgument (ratio outside (0, 1)).
Split split_indices(std::size_t n, double ratio, std::uint64_t seed);
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double ratio, std::uint64_t seed);

// Gold classes mapped to their ancestors at `level`; shallower classes are
// dropped. Sorted, unique. Throws kUnknownClass, kInvalidArgument.
std::vector<std::string> project_labels(const Document& doc, const OntologyGraph& ontology,
                                        int level);

// --- Feature pipeline ---------------------------------------------------------

enum class FeatureKind { kTfidf, kLlda };

std::string_view feature_kind_name(FeatureKind k);
FeatureKind parse_feature_kind(std::string_view name);

struct FeatureParams {
  FeatureKind kind = FeatureKind::kTfidf;
  TextConfig text;
  std::size_t min_df = 1;
  LldaParams llda;
  int infer_iterations = 50;
};

// Vocabulary plus, for LLDA features, the topic model. Document features are a
// pure function of the document text; LLDA inference for a document is seeded
// with mix_seed(llda.seed, fnv1a64(doc_id)).
struct FeatureExtractor {
  FeatureKind kind = FeatureKind::kTfidf;
  TextConfig text;
  Vocabulary vocab;
  std::optional<LldaModel> llda;
  int infer_iterations = 50;

  std::size_t dim() const;
  SparseVector transform(const Document& doc) const;
  std::vector<SparseVector> transform_batch(std::span<const Document> docs, int threads = 0) const;
};

// `labels[i]` are the training labels of `docs[i]`; LLDA topics are the sorted
// label union, and unlabeled documents are left out of LLDA training.
FeatureExtractor fit_features(std::span<const Document> docs,
                              std::span<const std::vector<std::string>> labels,
                              const FeatureParams& params);

struct ExperimentResult {
  int level = 1;
  FeatureKind features = FeatureKind::kTfidf;
  std::size_t train_docs = 0;
  std::size_t test_docs = 0;
  PRF micro;
  PRF macro;
  std::vector<std::string> warnings;
  FeatureExtractor extractor;
  LinearModel model;
};

// Split, project gold classes to cfg.level, fit features on the training part,
// train, predict the held-out part and score it.
ExperimentResult run_experiment(const Corpus& corpus, const OntologyGraph& ontology,
                                const TrainConfig& cfg, const FeatureParams& features,
                                int threads = 0);

OrderedJson experiment_to_json(const ExperimentResult& r);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_CLASSIFIER_HPP_
