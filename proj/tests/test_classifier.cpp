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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "conceptforge/classifier.hpp"
#include "conceptforge/error.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace conceptforge;

namespace {

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::size_t> out;
  std::size_t x;
  while (in >> x) out.push_back(x);
  return out;
}

TrainConfig toy_config() {
  TrainConfig cfg;
  cfg.epochs = 100;
  cfg.lambda = 0.01;
  return cfg;
}

}  // namespace

TEST(Split, CeilingArithmetic) {
  auto s = split_indices(3, 0.67, 1);
  EXPECT_EQ(s.train.size(), 2u);
  EXPECT_EQ(s.test.size(), 1u);
  EXPECT_EQ(split_indices(100, 0.67, 1).train.size(), 67u);
  EXPECT_EQ(split_indices(10, 0.5, 1).train.size(), 5u);
}

TEST(Split, PartitionAndDeterminism) {
  auto a = split_indices(57, 0.67, 9), b = split_indices(57, 0.67, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  std::vector<std::size_t> all(a.train);
  all.insert(all.end(), a.test.begin(), a.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
}

TEST(Split, CommittedSplitFile) {
  std::ifstream in(cftest::fixture("expected/split_100_0.67_seed7.tsv"));
  std::string line, train, test;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    (line.substr(0, tab) == "train" ? train : test) = line.substr(tab + 1);
  }
  auto s = split_indices(100, 0.67, 7);
  EXPECT_EQ(s.train, parse_indices(train));
  EXPECT_EQ(s.test, parse_indices(test));
}

TEST(Split, Errors) {
  try {
    split_indices(1, 0.67, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorpusTooSmall);
  }
  EXPECT_THROW(split_indices(10, 1.0, 1), Error);
  EXPECT_THROW(split_indices(10, 0.0, 1), Error);
}

TEST(Split, CorpusSplitKeepsDocuments) {
  auto corpus = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  auto [train, test] = split_corpus(corpus, 0.67, 42);
  EXPECT_EQ(train.size(), 7u);
  EXPECT_EQ(test.size(), 3u);
  for (const auto& d : test.docs()) EXPECT_EQ(train.find(d.doc_id), nullptr);
}

TEST(ProjectLabels, CommittedTable) {
  auto ont = cftest::load_onto5();
  auto corpus = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  std::ifstream in(cftest::fixture("expected/corpus10_levels.tsv"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string doc_id, level, classes;
    std::getline(fields, doc_id, '\t');
    std::getline(fields, level, '\t');
    std::getline(fields, classes, '\t');
    std::vector<std::string> expected;
    std::istringstream parts(classes);
    for (std::string c; std::getline(parts, c, ',');) expected.push_back(c);
    EXPECT_EQ(project_labels(*corpus.find(doc_id), *ont, std::stoi(level)), expected)
        << doc_id << " level " << level;
    ++rows;
  }
  EXPECT_EQ(rows, 30);
}

TEST(ProjectLabels, UnknownClass) {
  auto ont = cftest::load_onto5();
  Document d;
  d.gold_classes = {"k_nope"};
  try {
    project_labels(d, *ont, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownClass);
  }
}

TEST(Pegasos, SeparableToyHasNoHingeViolations) {
  auto toy = cftest::separable_toy_set();
  auto res = train_ovr(toy.x, toy.labels, 2, toy_config());
  ASSERT_EQ(res.model.classes.size(), 2u);
  EXPECT_TRUE(res.warnings.empty());
  for (const auto& cls : res.model.classes) {
    for (std::size_t i = 0; i < toy.x.size(); ++i) {
      const double y = toy.labels[i][0] == cls.label ? 1.0 : -1.0;
      const double margin = toy.x[i].dot(cls.weights) + cls.bias;
      EXPECT_GE(y * margin, 1.0 - 1e-9) << cls.label << " point " << i;
    }
  }
  for (std::size_t i = 0; i < toy.x.size(); ++i) {
    auto pred = predict(res.model, toy.x[i]);
    ASSERT_EQ(pred.size(), 1u);
    EXPECT_EQ(pred[0].label, toy.labels[i][0]);
  }
}

TEST(Pegasos, ClassWithoutPositivesSkipped) {
  auto toy = cftest::separable_toy_set();
  std::vector<std::string> classes{"ghost", "neg", "pos"};
  auto res = train_ovr(toy.x, toy.labels, 2, toy_config(), 1, classes);
  EXPECT_EQ(res.model.classes.size(), 2u);
  ASSERT_EQ(res.warnings.size(), 1u);
  EXPECT_NE(res.warnings[0].find("ghost"), std::string::npos);
}

TEST(Pegasos, SeedDeterminismAndThreadIndependence) {
  auto toy = cftest::separable_toy_set();
  auto a = train_ovr(toy.x, toy.labels, 2, toy_config(), 1).model;
  auto b = train_ovr(toy.x, toy.labels, 2, toy_config(), 4).model;
  EXPECT_EQ(a, b);
  auto c = train_ovr(toy.x, toy.labels, 2, toy_config(), 1).model;
  EXPECT_EQ(a, c);
}

TEST(Pegasos, OvrMatchesSerialBinaryReference) {
  auto toy = cftest::separable_toy_set();
  auto cfg = toy_config();
  auto m = train_ovr(toy.x, toy.labels, 2, cfg).model;
  std::vector<int> y{-1, -1, 1, 1};
  EXPECT_EQ(m.classes[0], train_binary(toy.x, y, 2, "neg", cfg, mix_seed(cfg.seed, 0)));
}

TEST(Pegasos, DimensionMismatch) {
  auto toy = cftest::separable_toy_set();
  try {
    train_ovr(toy.x, toy.labels, 1, toy_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Predict, ZeroVectorUsesBias) {
  LinearModel m;
  m.dim = 2;
  m.classes = {{"a", {1.0, 0.0}, 0.5}, {"b", {0.0, 1.0}, -0.5}, {"c", {0.0, 0.0}, 0.0}};
  auto p = predict(m, SparseVector{});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], (LabelScore{"a", 0.5}));
  EXPECT_EQ(margins(m, SparseVector{}), margins(LinearModel(m), SparseVector{}));
  EXPECT_EQ(predict(m, SparseVector{}, -1.0).size(), 3u);
  EXPECT_THROW(margins(m, SparseVector{{{5, 1.0}}}), Error);
}

TEST(Predict, NeverEmitsUnknownLabels) {
  auto toy = cftest::separable_toy_set();
  auto m = train_ovr(toy.x, toy.labels, 2, toy_config()).model;
  for (const auto& preds : predict_batch(m, toy.x, 2))
    for (const auto& p : preds) EXPECT_TRUE(p.label == "pos" || p.label == "neg");
}

TEST(LinearModel, JsonRoundTrip) {
  auto toy = cftest::separable_toy_set();
  auto m = train_ovr(toy.x, toy.labels, 2, toy_config()).model;
  auto j = linear_model_to_json(m);
  EXPECT_EQ(j.at("format"), "conceptforge-linear");
  EXPECT_EQ(linear_model_from_json(Json::parse(j.dump())), m);
}

TEST(TrainConfig, ValidateAndJson) {
  TrainConfig c;
  EXPECT_NO_THROW(validate(c));
  EXPECT_EQ(train_config_from_json(Json::parse(train_config_to_json(c).dump())), c);
  c.split_ratio = 1.0;
  EXPECT_THROW(validate(c), Error);
  c = {};
  c.lambda = 0;
  EXPECT_THROW(validate(c), Error);
}

TEST(Experiment, DeterministicEndToEnd) {
  auto syn = cftest::flat_class_corpus(60, 3, 5);
  FeatureParams fp;
  fp.text = cftest::english();
  auto a = run_experiment(syn.corpus, syn.ontology, {}, fp, 1);
  auto b = run_experiment(syn.corpus, syn.ontology, {}, fp, 4);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.micro, b.micro);
  EXPECT_EQ(a.train_docs, 41u);
  EXPECT_EQ(a.test_docs, 19u);
  EXPECT_GT(a.micro.f1, 0.8);
}

TEST(Experiment, LldaFeatures) {
  auto syn = cftest::flat_class_corpus(60, 3, 5);
  FeatureParams fp;
  fp.kind = FeatureKind::kLlda;
  fp.text = cftest::english();
  fp.llda.iterations = 50;
  auto r = run_experiment(syn.corpus, syn.ontology, {}, fp, 1);
  EXPECT_EQ(r.extractor.dim(), 3u);
  EXPECT_GT(r.micro.f1, 0.8);
  auto x = r.extractor.transform(syn.corpus[0]);
  EXPECT_EQ(x, r.extractor.transform(syn.corpus[0]));
}
