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

#include "conceptforge/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "conceptforge/error.hpp"
#include "conceptforge/parallel.hpp"

namespace conceptforge {

OrderedJson train_config_to_json(const TrainConfig& c) {
  OrderedJson j;
  j["lambda"] = c.lambda;
  j["epochs"] = c.epochs;
  j["seed"] = c.seed;
  j["split_ratio"] = c.split_ratio;
  j["level"] = c.level;
  j["threshold"] = c.threshold;
  return j;
}

TrainConfig train_config_from_json(const Json& j) {
  TrainConfig c;
  c.lambda = j.value("lambda", c.lambda);
  c.epochs = j.value("epochs", c.epochs);
  c.seed = j.value("seed", c.seed);
  c.split_ratio = j.value("split_ratio", c.split_ratio);
  c.level = j.value("level", c.level);
  c.threshold = j.value("threshold", c.threshold);
  return c;
}

void validate(const TrainConfig& c) {
  if (!(c.lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda", "must be > 0");
  if (c.epochs < 1) throw Error(ErrorCode::kInvalidArgument, "epochs", "must be >= 1");
  if (!(c.split_ratio > 0.0 && c.split_ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "split_ratio", "must lie in (0, 1)");
  }
  if (c.level < 1) throw Error(ErrorCode::kInvalidArgument, "level", "must be >= 1");
}

OrderedJson linear_model_to_json(const LinearModel& m) {
  OrderedJson j;
  j["format"] = "conceptforge-linear";
  j["version"] = 1;
  j["dim"] = m.dim;
  j["config"] = train_config_to_json(m.config);
  j["classes"] = OrderedJson::array();
  for (const auto& c : m.classes) {
    OrderedJson cj;
    cj["label"] = c.label;
    cj["bias"] = c.bias;
    cj["weights"] = OrderedJson::array();
    for (std::size_t i = 0; i < c.weights.size(); ++i) {
      if (c.weights[i] != 0.0) cj["weights"].push_back({i, c.weights[i]});
    }
    j["classes"].push_back(std::move(cj));
  }
  return j;
}

LinearModel linear_model_from_json(const Json& j) {
  try {
    if (j.at("version").get<int>() != 1) {
      throw Error(ErrorCode::kMalformedRecord, "version", "unsupported linear model version");
    }
    LinearModel m;
    m.dim = j.at("dim").get<std::size_t>();
    m.config = train_config_from_json(j.at("config"));
    for (const auto& cj : j.at("classes")) {
      BinaryModel b;
      b.label = cj.at("label").get<std::string>();
      b.bias = cj.at("bias").get<double>();
      b.weights.assign(m.dim, 0.0);
      for (const auto& pair : cj.at("weights")) {
        const auto i = pair.at(0).get<std::size_t>();
        if (i >= m.dim) throw Error(ErrorCode::kDimensionMismatch, b.label, "weight index >= dim");
        b.weights[i] = pair.at(1).get<double>();
      }
      m.classes.push_back(std::move(b));
    }
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, "linear model", e.what());
  }
}

// --- Training -------------------------------------------------------------------

namespace {

void check_dims(std::span<const SparseVector> features, std::size_t dim) {
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& e = features[i].entries;
    if (!e.empty() && e.back().first >= dim) {
      throw Error(ErrorCode::kDimensionMismatch, std::to_string(i),
                  "feature index " + std::to_string(e.back().first) + " >= dim " +
                      std::to_string(dim));
    }
  }
}

}  // namespace

BinaryModel train_binary(std::span<const SparseVector> features, std::span<const int> y,
                         std::size_t dim, const std::string& label, const TrainConfig& cfg,
                         std::uint64_t seed) {
  const std::size_t n = features.size();
  // w = scale * v; v[dim] is the bias weight on a constant-1 feature.
  std::vector<double> v(dim + 1, 0.0);
  double scale = 1.0;
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
      double dot = v[dim];
      for (const auto& [k, x] : features[i].entries) dot += v[k] * x;
      const double margin = y[i] * scale * dot;
      const double shrink = 1.0 - eta * cfg.lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * y[i] / scale;
        for (const auto& [k, x] : features[i].entries) v[k] += step * x;
        v[dim] += step;
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
  }
  BinaryModel b;
  b.label = label;
  b.weights.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) b.weights[k] = v[k] * scale;
  b.bias = v[dim] * scale;
  return b;
}

TrainResult train_ovr(std::span<const SparseVector> features,
                      std::span<const std::vector<std::string>> labels, std::size_t dim,
                      const TrainConfig& cfg, int threads,
                      std::span<const std::string> classes) {
  validate(cfg);
  if (features.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "train",
                std::to_string(features.size()) + " feature rows vs " +
                    std::to_string(labels.size()) + " label rows");
  }
  check_dims(features, dim);

  std::map<std::string, std::vector<int>> targets;
  for (const auto& c : classes) targets.emplace(c, std::vector<int>(labels.size(), -1));
  if (classes.empty()) {
    for (const auto& ls : labels) {
      for (const auto& l : ls) targets.emplace(l, std::vector<int>(labels.size(), -1));
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& l : labels[i]) {
      auto it = targets.find(l);
      if (it != targets.end()) it->second[i] = 1;
    }
  }

  TrainResult result;
  result.model.dim = dim;
  result.model.config = cfg;
  std::vector<std::pair<std::string, const std::vector<int>*>> jobs;
  for (const auto& [label, y] : targets) {
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0) {
      result.warnings.push_back("class " + label + " skipped: no positive examples");
      continue;
    }
    if (pos == static_cast<std::ptrdiff_t>(y.size())) {
      result.warnings.push_back("class " + label + " skipped: no negative examples");
      continue;
    }
    jobs.emplace_back(label, &y);
  }

  std::vector<BinaryModel> models(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    models[c] = train_binary(features, *jobs[c].second, dim, jobs[c].first, cfg,
                             mix_seed(cfg.seed, static_cast<std::uint64_t>(c)));
  }
  result.model.classes = std::move(models);
  return result;
}

std::vector<LabelScore> margins(const LinearModel& m, const SparseVector& x) {
  if (!x.entries.empty() && x.entries.back().first >= m.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "predict",
                "feature index " + std::to_string(x.entries.back().first) + " >= dim " +
                    std::to_string(m.dim));
  }
  std::vector<LabelScore> out;
  out.reserve(m.classes.size());
  for (const auto& c : m.classes) out.push_back({c.label, x.dot(c.weights) + c.bias});
  return out;
}

std::vector<LabelScore> predict(const LinearModel& m, const SparseVector& x,
                                std::optional<double> threshold) {
  const double th = threshold.value_or(m.config.threshold);
  auto all = margins(m, x);
  std::erase_if(all, [th](const LabelScore& s) { return !(s.margin > th); });
  return all;
}

std::vector<std::vector<LabelScore>> predict_batch(const LinearModel& m,
                                                   std::span<const SparseVector> xs,
                                                   int threads) {
  for (const auto& x : xs) {
    if (!x.entries.empty() && x.entries.back().first >= m.dim) {
      throw Error(ErrorCode::kDimensionMismatch, "predict", "feature index >= dim");
    }
  }
  std::vector<std::vector<LabelScore>> out(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = predict(m, xs[i]);
  return out;
}

// --- Splits and label projection -----------------------------------------------

Split split_indices(std::size_t n, double ratio, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kCorpusTooSmall, std::to_string(n), "need at least 2 documents");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(ratio), "ratio must lie in (0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  // The test side keeps at least one document.
  auto cut = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9));
  cut = std::clamp<std::size_t>(cut, 1, n - 1);
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  return s;
}

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double ratio, std::uint64_t seed) {
  const Split s = split_indices(corpus.size(), ratio, seed);
  std::vector<Document> train, test;
  for (auto i : s.train) train.push_back(corpus[i]);
  for (auto i : s.test) test.push_back(corpus[i]);
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

std::vector<std::string> project_labels(const Document& doc, const OntologyGraph& ontology,
                                        int level) {
  if (level < 1) throw Error(ErrorCode::kInvalidArgument, std::to_string(level), "level < 1");
  std::set<std::string> out;
  for (const auto& c : doc.gold_classes) {
    if (auto a = ontology.ancestor_at_level(c, level)) out.insert(*a);
  }
  return {out.begin(), out.end()};
}

// --- Feature pipeline ---------------------------------------------------------

std::string_view feature_kind_name(FeatureKind k) {
  return k == FeatureKind::kLlda ? "llda" : "tfidf";
}

FeatureKind parse_feature_kind(std::string_view name) {
  if (name == "tfidf") return FeatureKind::kTfidf;
  if (name == "llda") return FeatureKind::kLlda;
  throw Error(ErrorCode::kInvalidArgument, std::string(name), "expected tfidf or llda");
}

std::size_t FeatureExtractor::dim() const {
  return kind == FeatureKind::kLlda && llda ? llda->num_topics() : vocab.size();
}

SparseVector FeatureExtractor::transform(const Document& doc) const {
  const auto terms = tokenize_terms(document_text(doc), text);
  if (kind == FeatureKind::kTfidf) return tfidf(terms, vocab);
  const auto words = vocab.encode(terms);
  const auto dist = infer_topics(*llda, words, infer_iterations,
                                 mix_seed(llda->seed, fnv1a64(doc.doc_id)));
  return to_sparse(dist);
}

std::vector<SparseVector> FeatureExtractor::transform_batch(std::span<const Document> docs,
                                                            int threads) const {
  std::vector<SparseVector> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = transform(docs[i]);
  return out;
}

FeatureExtractor fit_features(std::span<const Document> docs,
                              std::span<const std::vector<std::string>> labels,
                              const FeatureParams& params) {
  if (docs.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "features", "documents and label rows differ");
  }
  std::vector<std::vector<std::string>> terms;
  terms.reserve(docs.size());
  for (const auto& d : docs) terms.push_back(tokenize_terms(document_text(d), params.text));

  FeatureExtractor fx;
  fx.kind = params.kind;
  fx.text = params.text;
  fx.infer_iterations = params.infer_iterations;
  fx.vocab = build_vocabulary(terms, params.min_df);
  if (params.kind == FeatureKind::kTfidf) return fx;

  std::set<std::string> topic_set;
  for (const auto& ls : labels) topic_set.insert(ls.begin(), ls.end());
  std::vector<std::string> topics(topic_set.begin(), topic_set.end());
  std::map<std::string, std::uint32_t> topic_index;
  for (std::uint32_t t = 0; t < topics.size(); ++t) topic_index[topics[t]] = t;

  std::vector<LldaDocument> ldocs;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (labels[i].empty()) continue;
    LldaDocument ld;
    ld.words = fx.vocab.encode(terms[i]);
    std::set<std::uint32_t> ls;
    for (const auto& l : labels[i]) ls.insert(topic_index[l]);
    ld.labels.assign(ls.begin(), ls.end());
    ldocs.push_back(std::move(ld));
  }
  fx.llda = train_llda(ldocs, std::move(topics), fx.vocab.size(), params.llda);
  return fx;
}

ExperimentResult run_experiment(const Corpus& corpus, const OntologyGraph& ontology,
                                const TrainConfig& cfg, const FeatureParams& features,
                                int threads) {
  validate(cfg);
  const Split split = split_indices(corpus.size(), cfg.split_ratio, cfg.seed);
  std::vector<Document> train_docs, test_docs;
  std::vector<std::vector<std::string>> train_labels, test_labels;
  for (auto i : split.train) {
    train_docs.push_back(corpus[i]);
    train_labels.push_back(project_labels(corpus[i], ontology, cfg.level));
  }
  for (auto i : split.test) {
    test_docs.push_back(corpus[i]);
    test_labels.push_back(project_labels(corpus[i], ontology, cfg.level));
  }

  ExperimentResult r;
  r.level = cfg.level;
  r.features = features.kind;
  r.train_docs = train_docs.size();
  r.test_docs = test_docs.size();
  r.extractor = fit_features(train_docs, train_labels, features);
  const auto x_train = r.extractor.transform_batch(train_docs, threads);
  auto trained = train_ovr(x_train, train_labels, r.extractor.dim(), cfg, threads);
  r.model = std::move(trained.model);
  r.warnings = std::move(trained.warnings);

  const auto x_test = r.extractor.transform_batch(test_docs, threads);
  const auto predicted = predict_batch(r.model, x_test, threads);
  std::vector<Counts> counts;
  for (std::size_t i = 0; i < test_docs.size(); ++i) {
    std::vector<std::string> p;
    for (const auto& s : predicted[i]) p.push_back(s.label);
    counts.push_back(confusion(p, test_labels[i]));
  }
  r.micro = aggregate(counts, Averaging::kMicro);
  r.macro = aggregate(counts, Averaging::kMacro);
  return r;
}

OrderedJson experiment_to_json(const ExperimentResult& r) {
  OrderedJson j;
  j["level"] = r.level;
  j["features"] = feature_kind_name(r.features);
  j["train_docs"] = r.train_docs;
  j["test_docs"] = r.test_docs;
  j["classes"] = r.model.classes.size();
  j["micro"] = prf_to_json(r.micro);
  j["macro"] = prf_to_json(r.macro);
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace conceptforge
