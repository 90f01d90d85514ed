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

#include <cmath>
#include <sstream>

#include "conceptforge/corpus.hpp"
#include "conceptforge/error.hpp"
#include "conceptforge/features.hpp"
#include "fixtures.hpp"
#include "reference.hpp"
#include "synthetic.hpp"

using namespace conceptforge;

namespace {

using Docs = std::vector<std::vector<std::string>>;

std::vector<std::vector<TermIndex>> words_of(const cftest::LldaCorpus& c) {
  std::vector<std::vector<TermIndex>> out;
  for (const auto& d : c.docs) out.push_back(d.words);
  return out;
}

}  // namespace

TEST(Vocabulary, SingleDoc) {
  Docs docs{{"a", "b", "b"}};
  auto v = build_vocabulary(docs, 1);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.index_of("a"), 0u);
  EXPECT_EQ(v.df(0), 1u);
  EXPECT_EQ(v.df(1), 1u);
  EXPECT_EQ(v.num_docs(), 1u);
}

TEST(Vocabulary, MinDf) {
  Docs docs{{"a", "b"}, {"b", "c"}};
  EXPECT_EQ(build_vocabulary(docs, 2).terms(), std::vector<std::string>{"b"});
}

TEST(Vocabulary, EmptyCorpus) {
  try {
    build_vocabulary(Docs{}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(Vocabulary, Corpus10MatchesIndependentRecount) {
  auto corpus = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  Docs docs;
  for (const auto& d : corpus.docs()) docs.push_back(tokenize_terms(document_text(d), cftest::english()));
  auto v = build_vocabulary(docs, 1);
  EXPECT_EQ(v.to_tsv(), read_file(cftest::fixture("expected/corpus10.vocab.tsv")));
  std::istringstream in(v.to_tsv());
  EXPECT_EQ(Vocabulary::from_tsv(in), v);
}

TEST(Vocabulary, RejectsBadTsv) {
  std::istringstream in("#docs\t2\nb\t0\t1\na\t1\t1\n");
  EXPECT_THROW(Vocabulary::from_tsv(in), Error);
}

TEST(Tfidf, EmptyAndSingleTerm) {
  Docs docs{{"a", "b"}, {"b"}};
  auto v = build_vocabulary(docs, 1);
  EXPECT_TRUE(tfidf(std::vector<std::string>{"zzz"}, v).entries.empty());
  auto x = tfidf(std::vector<std::string>{"a"}, v);
  ASSERT_EQ(x.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(x.entries[0].second, 1.0);
}

TEST(Tfidf, PreNormalizationWeight) {
  EXPECT_DOUBLE_EQ(2.0 * smoothed_idf(2, 1), 2.0 * (std::log(1.5) + 1.0));
  Docs docs{{"a", "a", "b"}, {"b"}};
  auto v = build_vocabulary(docs, 1);
  auto x = tfidf(docs[0], v);
  const double wa = 2.0 * (std::log(1.5) + 1.0), wb = 1.0 * (std::log(1.0) + 1.0);
  const double n = std::sqrt(wa * wa + wb * wb);
  ASSERT_EQ(x.entries.size(), 2u);
  EXPECT_NEAR(x.entries[0].second, wa / n, 1e-12);
  EXPECT_NEAR(x.entries[1].second, wb / n, 1e-12);
}

TEST(Tfidf, UnitNormAndBatch) {
  auto corpus = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  Docs docs;
  for (const auto& d : corpus.docs()) docs.push_back(tokenize_terms(document_text(d), cftest::english()));
  auto v = build_vocabulary(docs, 1);
  auto batch = tfidf_batch(docs, v, 4);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(batch[i], tfidf(docs[i], v));
    EXPECT_NEAR(batch[i].norm(), 1.0, 1e-9);
    for (std::size_t k = 1; k < batch[i].entries.size(); ++k)
      EXPECT_LT(batch[i].entries[k - 1].first, batch[i].entries[k].first);
  }
}

TEST(SparseVector, ToSparseDropsZeros) {
  std::vector<double> dense{0.0, 1.5, 0.0, -2.0};
  auto s = to_sparse(dense);
  EXPECT_EQ(s.entries, (std::vector<std::pair<TermIndex, double>>{{1, 1.5}, {3, -2.0}}));
  EXPECT_DOUBLE_EQ(s.dot(dense), 1.5 * 1.5 + 4.0);
}

TEST(Llda, SingleLabelDocsStayOnTheirLabel) {
  std::vector<LldaDocument> docs{{{0, 1, 2}, {1}}, {{3, 4}, {0}}};
  LldaParams p;
  p.iterations = 30;
  train_llda(docs, {"A", "B"}, 5, p, [&](int, const LldaModel& m) {
    for (auto t : m.assignments[0]) EXPECT_EQ(t, 1u);
    for (auto t : m.assignments[1]) EXPECT_EQ(t, 0u);
  });
}

TEST(Llda, CountIdentitiesEverySweep) {
  auto c = cftest::disjoint_llda_corpus(30, 5);
  LldaParams p;
  p.iterations = 50;
  int sweeps = 0;
  train_llda(c.docs, c.topics, c.vocab_size, p, [&](int s, const LldaModel& m) {
    ++sweeps;
    EXPECT_EQ(m.iterations, s);
    auto violation = check_llda_state(m, c.docs);
    EXPECT_FALSE(violation) << *violation;
    for (std::size_t d = 0; d < c.docs.size(); ++d) {
      std::uint32_t sum = 0;
      for (std::size_t t = 0; t < m.num_topics(); ++t) sum += m.n_dt(d, t);
      EXPECT_EQ(sum, c.docs[d].words.size());
    }
  });
  EXPECT_EQ(sweeps, 50);
}

TEST(Llda, Errors) {
  std::vector<LldaDocument> unlabeled{{{0}, {0}}, {{1}, {}}};
  try {
    train_llda(unlabeled, {"A"}, 2, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledDocument);
    EXPECT_EQ(e.subject(), "1");
  }
  LldaParams zero;
  zero.iterations = 0;
  std::vector<LldaDocument> ok{{{0}, {0}}};
  EXPECT_THROW(train_llda(ok, {"A"}, 2, zero), Error);
}

TEST(Llda, DefaultAlpha) {
  std::vector<LldaDocument> docs{{{0}, {0}}};
  LldaParams p;
  p.iterations = 1;
  EXPECT_DOUBLE_EQ(train_llda(docs, {"A", "B", "C", "D"}, 1, p).alpha, 12.5);
}

TEST(Llda, SeedDeterminism) {
  auto c = cftest::disjoint_llda_corpus(20, 9);
  LldaParams p;
  p.iterations = 40;
  auto a = train_llda(c.docs, c.topics, c.vocab_size, p);
  auto b = train_llda(c.docs, c.topics, c.vocab_size, p);
  EXPECT_EQ(a, b);
  // Shared words under two labels leave the sampler real choices.
  std::vector<LldaDocument> mixed(10, LldaDocument{{0, 1, 2, 0, 1, 2}, {0, 1}});
  auto m42 = train_llda(mixed, c.topics, 3, p);
  p.seed = 43;
  EXPECT_NE(train_llda(mixed, c.topics, 3, p).assignments, m42.assignments);
}

TEST(Llda, DominantTopicMatchesGeneratingLabel) {
  auto c = cftest::disjoint_llda_corpus(60, 42);
  LldaParams p;
  p.iterations = 200;
  auto m = train_llda(c.docs, c.topics, c.vocab_size, p);
  for (TermIndex w = 0; w < c.vocab_size; ++w) {
    const std::size_t want = w < 5 ? 0 : 1;
    EXPECT_GT(m.n_tw(want, w), m.n_tw(1 - want, w)) << "term " << w;
  }
}

TEST(Llda, GibbsMarginalsMatchExactEnumeration) {
  // One document, two labels, four tokens: the chain's long-run assignment
  // frequencies must match the enumerated posterior.
  std::vector<LldaDocument> docs{{{0, 1, 1, 2}, {0, 1}}};
  LldaParams p;
  p.alpha = 0.5;
  p.beta = 0.3;
  p.iterations = 60000;
  p.seed = 3;
  const int burn = 1000;
  std::vector<std::vector<double>> freq(4, std::vector<double>(2, 0.0));
  train_llda(docs, {"A", "B"}, 3, p, [&](int s, const LldaModel& m) {
    if (s <= burn) return;
    for (std::size_t i = 0; i < 4; ++i) freq[i][m.assignments[0][i]] += 1.0;
  });
  auto exact = cfref::llda_exact_marginals({0, 1, 1, 2}, {0, 1}, 2, 3, 0.5, 0.3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t t = 0; t < 2; ++t) {
      EXPECT_NEAR(freq[i][t] / (p.iterations - burn), exact[i][t], 0.02) << i << "," << t;
    }
  }
}

TEST(Llda, JsonRoundTrip) {
  auto c = cftest::disjoint_llda_corpus(10, 1);
  LldaParams p;
  p.iterations = 5;
  auto m = train_llda(c.docs, c.topics, c.vocab_size, p);
  EXPECT_EQ(LldaModel::from_json(Json::parse(m.to_json().dump())), m);
}

TEST(LldaInference, EmptyDocIsUniform) {
  auto c = cftest::disjoint_llda_corpus(10, 1);
  LldaParams p;
  p.iterations = 5;
  auto m = train_llda(c.docs, c.topics, c.vocab_size, p);
  auto theta = infer_topics(m, {}, 10, 1);
  EXPECT_EQ(theta, (std::vector<double>{0.5, 0.5}));
}

TEST(LldaInference, ExclusiveTermsPickTheirLabel) {
  auto c = cftest::disjoint_llda_corpus(60, 42);
  LldaParams p;
  p.iterations = 200;
  auto m = train_llda(c.docs, c.topics, c.vocab_size, p);
  std::vector<TermIndex> a{0, 1, 2, 3, 4, 0, 1}, b{5, 6, 7, 8, 9, 9};
  auto ta = infer_topics(m, a, 50, 42), tb = infer_topics(m, b, 50, 42);
  EXPECT_GT(ta[0], ta[1]);
  EXPECT_GT(tb[1], tb[0]);
  for (const auto& t : {ta, tb}) EXPECT_NEAR(t[0] + t[1], 1.0, 1e-9);
}

TEST(LldaInference, BatchMatchesSerial) {
  auto c = cftest::disjoint_llda_corpus(12, 2);
  LldaParams p;
  p.iterations = 10;
  auto m = train_llda(c.docs, c.topics, c.vocab_size, p);
  auto docs = words_of(c);
  auto batch = infer_topics_batch(m, docs, 20, 77, 4);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(batch[i], infer_topics(m, docs[i], 20, mix_seed(77, i)));
    double sum = 0;
    for (double x : batch[i]) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}
