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

#include "conceptforge/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conceptforge/error.hpp"
#include "conceptforge/parallel.hpp"

namespace conceptforge {

// --- Vocabulary --------------------------------------------------------------

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> df,
                       std::size_t num_docs)
    : terms_(std::move(terms)), df_(std::move(df)), num_docs_(num_docs) {
  if (terms_.size() != df_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary", "terms and df differ in length");
  }
  for (TermIndex i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw Error(ErrorCode::kInvalidRecord, terms_[i], "vocabulary terms must be sorted and unique");
    }
    index_.emplace(terms_[i], i);
  }
}

std::optional<TermIndex> Vocabulary::index_of(const std::string& term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TermIndex> Vocabulary::encode(std::span<const std::string> terms) const {
  std::vector<TermIndex> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (auto i = index_of(t)) out.push_back(*i);
  }
  return out;
}

std::string Vocabulary::to_tsv() const {
  std::ostringstream out;
  out << "#docs\t" << num_docs_ << '\n';
  for (TermIndex i = 0; i < terms_.size(); ++i) out << terms_[i] << '\t' << i << '\t' << df_[i] << '\n';
  return out.str();
}

Vocabulary Vocabulary::from_tsv(std::istream& in) {
  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;
  std::size_t num_docs = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string term;
    if (line.rfind("#docs\t", 0) == 0) {
      num_docs = std::stoull(line.substr(6));
      continue;
    }
    std::size_t index;
    std::uint32_t count;
    if (!std::getline(fields, term, '\t') || !(fields >> index >> count) || index != terms.size()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "bad vocabulary row");
    }
    terms.push_back(std::move(term));
    df.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(df), num_docs);
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs, std::size_t min_df) {
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, "vocabulary");
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : docs) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& t : unique) ++df[std::move(t)];
  }
  std::vector<std::string> terms;
  std::vector<std::uint32_t> counts;
  for (auto& [term, count] : df) {
    if (count < std::max<std::size_t>(min_df, 1)) continue;
    terms.push_back(term);
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts), docs.size());
}

// --- TF-IDF ------------------------------------------------------------------

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& [i, v] : entries) {
    if (i < dense.size()) s += v * dense[i];
  }
  return s;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += v * v;
  return std::sqrt(s);
}

SparseVector to_sparse(std::span<const double> dense) {
  SparseVector out;
  for (TermIndex i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) out.entries.emplace_back(i, dense[i]);
  }
  return out;
}

double smoothed_idf(std::size_t num_docs, std::uint32_t df) {
  return std::log((1.0 + static_cast<double>(num_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

SparseVector tfidf(std::span<const std::string> doc_terms, const Vocabulary& vocab) {
  std::map<TermIndex, std::uint32_t> tf;
  for (const auto& t : doc_terms) {
    if (auto i = vocab.index_of(t)) ++tf[*i];
  }
  SparseVector v;
  double sq = 0.0;
  for (const auto& [i, count] : tf) {
    const double w = static_cast<double>(count) * smoothed_idf(vocab.num_docs(), vocab.df(i));
    v.entries.emplace_back(i, w);
    sq += w * w;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& [i, w] : v.entries) w *= inv;
  }
  return v;
}

std::vector<SparseVector> tfidf_batch(std::span<const std::vector<std::string>> docs,
                                      const Vocabulary& vocab, int threads) {
  std::vector<SparseVector> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = tfidf(docs[i], vocab);
  return out;
}

// --- Labeled LDA -------------------------------------------------------------

Json LldaModel::to_json() const {
  Json j;
  j["format"] = "conceptforge-llda";
  j["version"] = 1;
  j["topics"] = topics;
  j["vocab_size"] = vocab_size;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["seed"] = seed;
  j["iterations"] = iterations;
  j["topic_word"] = topic_word;
  j["topic_total"] = topic_total;
  j["doc_topic"] = doc_topic;
  j["assignments"] = assignments;
  return j;
}

LldaModel LldaModel::from_json(const Json& j) {
  try {
    if (j.at("version").get<int>() != 1) {
      throw Error(ErrorCode::kMalformedRecord, "version", "unsupported LLDA model version");
    }
    LldaModel m;
    m.topics = j.at("topics").get<std::vector<std::string>>();
    m.vocab_size = j.at("vocab_size").get<std::size_t>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.iterations = j.at("iterations").get<int>();
    m.topic_word = j.at("topic_word").get<std::vector<std::uint32_t>>();
    m.topic_total = j.at("topic_total").get<std::vector<std::uint32_t>>();
    m.doc_topic = j.at("doc_topic").get<std::vector<std::uint32_t>>();
    m.assignments = j.at("assignments").get<std::vector<std::vector<std::uint32_t>>>();
    if (m.topic_word.size() != m.topics.size() * m.vocab_size ||
        m.topic_total.size() != m.topics.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "llda", "count arrays do not match dimensions");
    }
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, "llda", e.what());
  }
}

std::optional<std::string> check_llda_state(const LldaModel& model,
                                            std::span<const LldaDocument> docs) {
  const std::size_t T = model.num_topics();
  const std::size_t V = model.vocab_size;
  if (model.assignments.size() != docs.size()) return "assignment rows != documents";
  std::vector<std::uint32_t> tw(T * V, 0), tt(T, 0), dt(docs.size() * T, 0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& z = model.assignments[d];
    if (z.size() != docs[d].words.size()) return "doc " + std::to_string(d) + ": length mismatch";
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto& labels = docs[d].labels;
      if (std::find(labels.begin(), labels.end(), z[i]) == labels.end()) {
        return "doc " + std::to_string(d) + " token " + std::to_string(i) +
               ": topic outside the document's labels";
      }
      ++tw[z[i] * V + docs[d].words[i]];
      ++tt[z[i]];
      ++dt[d * T + z[i]];
    }
    std::uint64_t row = 0;
    for (std::size_t t = 0; t < T; ++t) row += model.doc_topic[d * T + t];
    if (row != z.size()) return "doc " + std::to_string(d) + ": sum_t n_dt != token count";
  }
  for (std::size_t t = 0; t < T; ++t) {
    std::uint64_t row = 0;
    for (std::size_t w = 0; w < V; ++w) row += model.topic_word[t * V + w];
    if (row != model.topic_total[t]) return "topic " + std::to_string(t) + ": sum_w n_tw != n_t";
  }
  if (tw != model.topic_word) return "topic-word counts disagree with assignments";
  if (tt != model.topic_total) return "topic totals disagree with assignments";
  if (dt != model.doc_topic) return "doc-topic counts disagree with assignments";
  return std::nullopt;
}

LldaModel train_llda(std::span<const LldaDocument> docs, std::vector<std::string> topics,
                     std::size_t vocab_size, const LldaParams& params,
                     const SweepObserver& observer) {
  const std::size_t T = topics.size();
  if (T == 0) throw Error(ErrorCode::kInvalidArgument, "topics", "no topics");
  if (params.iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(params.iterations), "iterations < 1");
  }
  if (!(params.beta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta", "beta must be > 0");
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].labels.empty()) throw Error(ErrorCode::kUnlabeledDocument, std::to_string(d));
    for (auto t : docs[d].labels) {
      if (t >= T) throw Error(ErrorCode::kInvalidArgument, std::to_string(t), "label out of range");
    }
    for (auto w : docs[d].words) {
      if (w >= vocab_size) throw Error(ErrorCode::kInvalidArgument, std::to_string(w), "word out of range");
    }
  }

  LldaModel m;
  m.topics = std::move(topics);
  m.vocab_size = vocab_size;
  m.alpha = params.alpha > 0.0 ? params.alpha : 50.0 / static_cast<double>(T);
  m.beta = params.beta;
  m.seed = params.seed;
  m.topic_word.assign(T * vocab_size, 0);
  m.topic_total.assign(T, 0);
  m.doc_topic.assign(docs.size() * T, 0);
  m.assignments.resize(docs.size());

  Rng rng(params.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& labels = docs[d].labels;
    auto& z = m.assignments[d];
    z.resize(docs[d].words.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = labels[rng.below(labels.size())];
      ++m.topic_word[z[i] * vocab_size + docs[d].words[i]];
      ++m.topic_total[z[i]];
      ++m.doc_topic[d * T + z[i]];
    }
  }

  const double vbeta = static_cast<double>(vocab_size) * m.beta;
  std::vector<double> weights;
  for (int sweep = 1; sweep <= params.iterations; ++sweep) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto& labels = docs[d].labels;
      auto& z = m.assignments[d];
      weights.resize(labels.size());
      for (std::size_t i = 0; i < z.size(); ++i) {
        const TermIndex w = docs[d].words[i];
        --m.topic_word[z[i] * vocab_size + w];
        --m.topic_total[z[i]];
        --m.doc_topic[d * T + z[i]];
        for (std::size_t k = 0; k < labels.size(); ++k) {
          const std::size_t t = labels[k];
          weights[k] = (m.doc_topic[d * T + t] + m.alpha) *
                       (m.topic_word[t * vocab_size + w] + m.beta) / (m.topic_total[t] + vbeta);
        }
        z[i] = labels[rng.categorical(weights)];
        ++m.topic_word[z[i] * vocab_size + w];
        ++m.topic_total[z[i]];
        ++m.doc_topic[d * T + z[i]];
      }
    }
    m.iterations = sweep;
    if (observer) observer(sweep, m);
  }
  return m;
}

std::vector<double> infer_topics(const LldaModel& model, std::span<const TermIndex> words,
                                 int iterations, std::uint64_t seed) {
  const std::size_t T = model.num_topics();
  const double alpha = model.alpha;
  std::vector<double> dist(T);
  std::vector<std::uint32_t> counts(T, 0);
  std::vector<TermIndex> kept;
  for (auto w : words) {
    if (w < model.vocab_size) kept.push_back(w);
  }
  if (!kept.empty()) {
    Rng rng(seed);
    std::vector<std::uint32_t> z(kept.size());
    for (auto& t : z) {
      t = static_cast<std::uint32_t>(rng.below(T));
      ++counts[t];
    }
    const double vbeta = static_cast<double>(model.vocab_size) * model.beta;
    // Word likelihoods are frozen, so precompute them per token.
    std::vector<double> phi(kept.size() * T);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t t = 0; t < T; ++t) {
        phi[i * T + t] = (model.n_tw(t, kept[i]) + model.beta) / (model.topic_total[t] + vbeta);
      }
    }
    std::vector<double> weights(T);
    for (int it = 0; it < iterations; ++it) {
      for (std::size_t i = 0; i < kept.size(); ++i) {
        --counts[z[i]];
        for (std::size_t t = 0; t < T; ++t) weights[t] = (counts[t] + alpha) * phi[i * T + t];
        z[i] = static_cast<std::uint32_t>(rng.categorical(weights));
        ++counts[z[i]];
      }
    }
  }
  const double denom = static_cast<double>(kept.size()) + static_cast<double>(T) * alpha;
  for (std::size_t t = 0; t < T; ++t) dist[t] = (counts[t] + alpha) / denom;
  return dist;
}

std::vector<std::vector<double>> infer_topics_batch(const LldaModel& model,
                                                    std::span<const std::vector<TermIndex>> docs,
                                                    int iterations, std::uint64_t seed,
                                                    int threads) {
  std::vector<std::vector<double>> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = infer_topics(model, docs[i], iterations, mix_seed(seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace conceptforge
