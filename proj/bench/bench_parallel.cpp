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

// Serial (threads = 1) against OpenMP (threads = 2, 4, 8) for every batch
// kernel. Run with --benchmark_filter to pick one kernel.

#include <benchmark/benchmark.h>

#include "conceptforge/classifier.hpp"
#include "conceptforge/recognizer.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace conceptforge;

namespace {

UndirectedGraph grid_graph(int side) {
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const auto v = static_cast<NodeIndex>(r * side + c);
      if (c + 1 < side) edges.emplace_back(v, v + 1);
      if (r + 1 < side) edges.emplace_back(v, v + side);
    }
  }
  return UndirectedGraph(static_cast<std::size_t>(side * side), edges);
}

const cftest::SyntheticCorpus& corpus() {
  static const auto c = cftest::flat_class_corpus(2000, 10, 1);
  return c;
}

std::vector<std::vector<std::string>> corpus_terms() {
  std::vector<std::vector<std::string>> out;
  for (const auto& d : corpus().corpus.docs()) out.push_back(tokenize_terms(document_text(d), cftest::english()));
  return out;
}

void BM_AllPairsHops(benchmark::State& state) {
  const auto g = grid_graph(40);
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_hops(g, static_cast<int>(state.range(0))));
}

void BM_RecognizeBatch(benchmark::State& state) {
  MatcherOptions o;
  o.text = cftest::english();
  o.use_neighborhood_terms = true;
  o.min_term_weight = 0.1;
  const auto eo = cftest::enriched_onto5();
  const auto m = Matcher::build(*eo, o);
  std::vector<Document> docs;
  const auto encyc = cftest::load_encyc8();
  for (int i = 0; i < 2000; ++i) {
    Document d;
    d.doc_id = std::to_string(i);
    for (int k = 0; k < 4; ++k) d.abstract += encyc.entries()[(i + k) % encyc.size()].abstract + " ";
    docs.push_back(std::move(d));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(recognize_batch(m, docs, static_cast<int>(state.range(0))));
  }
}

void BM_TfidfBatch(benchmark::State& state) {
  const auto terms = corpus_terms();
  const auto vocab = build_vocabulary(terms, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfidf_batch(terms, vocab, static_cast<int>(state.range(0))));
  }
}

void BM_TrainOvr(benchmark::State& state) {
  const auto terms = corpus_terms();
  const auto vocab = build_vocabulary(terms, 1);
  const auto x = tfidf_batch(terms, vocab);
  std::vector<std::vector<std::string>> labels;
  for (const auto& d : corpus().corpus.docs()) labels.push_back(d.gold_classes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_ovr(x, labels, vocab.size(), {}, static_cast<int>(state.range(0))));
  }
}

void BM_InferTopicsBatch(benchmark::State& state) {
  const auto c = cftest::disjoint_llda_corpus(400, 3);
  LldaParams p;
  p.iterations = 50;
  const auto model = train_llda(c.docs, c.topics, c.vocab_size, p);
  std::vector<std::vector<TermIndex>> docs;
  for (const auto& d : c.docs) docs.push_back(d.words);
  for (auto _ : state) {
    benchmark::DoNotOptimize(infer_topics_batch(model, docs, 50, 7, static_cast<int>(state.range(0))));
  }
}

}  // namespace

#define THREAD_ARGS ->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime()

BENCHMARK(BM_AllPairsHops) THREAD_ARGS;
BENCHMARK(BM_RecognizeBatch) THREAD_ARGS;
BENCHMARK(BM_TfidfBatch) THREAD_ARGS;
BENCHMARK(BM_TrainOvr) THREAD_ARGS;
BENCHMARK(BM_InferTopicsBatch) THREAD_ARGS;

BENCHMARK_MAIN();
