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

#include "synthetic.hpp"

#include <cmath>

#include "conceptforge/rng.hpp"

namespace cftest {

using namespace conceptforge;

namespace {

const char* const kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "p", "r", "t", "v", "z"};
const char* const kNuclei[] = {"a", "o", "u", "i"};

std::string syllable(int v) {
  return std::string(kOnsets[v % 12]) + kNuclei[(v / 12) % 4] + kOnsets[(v / 48) % 12];
}

std::string words_from(Rng& rng, int group, int vocab, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (!out.empty()) out += ' ';
    out += pseudo_word(group, static_cast<int>(rng.below(static_cast<std::uint64_t>(vocab))));
  }
  return out;
}

}  // namespace

std::string pseudo_word(int group, int index) {
  return "q" + syllable(group) + syllable(index) + "x";
}

ToySet separable_toy_set() {
  ToySet t;
  t.x = {SparseVector{{{0, 1.0}, {1, 0.2}}}, SparseVector{{{0, 0.8}, {1, -0.1}}},
         SparseVector{{{0, -1.0}, {1, 0.1}}}, SparseVector{{{0, -0.7}, {1, -0.3}}}};
  t.labels = {{"pos"}, {"pos"}, {"neg"}, {"neg"}};
  return t;
}

SyntheticCorpus flat_class_corpus(std::size_t n, int classes, std::uint64_t seed) {
  std::vector<ClassNode> nodes;
  for (int c = 0; c < classes; ++c) {
    nodes.push_back({"k" + std::to_string(c), "Class " + std::to_string(c), std::nullopt, 1});
  }
  Rng rng(seed);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % static_cast<std::size_t>(classes));
    Document d;
    d.doc_id = "s" + std::to_string(i);
    d.title = words_from(rng, c, 20, 3);
    d.abstract = words_from(rng, c, 20, 12) + " " + words_from(rng, 500, 200, 12);
    d.gold_classes = {nodes[c].id};
    docs.push_back(std::move(d));
  }
  return {OntologyGraph::from_records({}, std::move(nodes)), Corpus(std::move(docs))};
}

SyntheticCorpus zipf_hierarchy_corpus(std::size_t n, std::uint64_t seed) {
  std::vector<ClassNode> nodes;
  std::vector<std::vector<int>> path;  // leaf -> {l1, l2, l3} group ids
  for (int a = 0; a < 3; ++a) {
    const std::string l1 = "h" + std::to_string(a);
    nodes.push_back({l1, l1, std::nullopt, 1});
    for (int b = 0; b < 3; ++b) {
      const std::string l2 = l1 + std::to_string(b);
      nodes.push_back({l2, l2, l1, 2});
      for (int c = 0; c < 3; ++c) {
        const std::string l3 = l2 + std::to_string(c);
        nodes.push_back({l3, l3, l2, 3});
        path.push_back({a, 10 + a * 3 + b, 100 + a * 9 + b * 3 + c});
      }
    }
  }
  std::vector<double> zipf(path.size());
  for (std::size_t r = 0; r < zipf.size(); ++r) zipf[r] = 1.0 / std::pow(double(r + 1), 1.2);
  // Spread frequent ranks across the tree instead of along one branch.
  std::vector<std::size_t> rank_to_leaf(path.size());
  for (std::size_t r = 0; r < path.size(); ++r) rank_to_leaf[r] = (r * 10) % path.size();

  Rng rng(seed);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t leaf = rank_to_leaf[rng.categorical(zipf)];
    const auto& p = path[leaf];
    Document d;
    d.doc_id = "z" + std::to_string(i);
    d.title = words_from(rng, p[0], 15, 2);
    d.abstract = words_from(rng, p[0], 15, 8) + " " + words_from(rng, p[1], 15, 4) + " " +
                 words_from(rng, p[2], 15, 2) + " " + words_from(rng, 500, 300, 12);
    d.gold_classes = {"h" + std::to_string(p[0]) + std::to_string((p[1] - 10) % 3) +
                      std::to_string((p[2] - 100) % 3)};
    docs.push_back(std::move(d));
  }
  return {OntologyGraph::from_records({}, std::move(nodes)), Corpus(std::move(docs))};
}

LldaCorpus disjoint_llda_corpus(std::size_t n, std::uint64_t seed) {
  LldaCorpus c;
  c.topics = {"A", "B"};
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    LldaDocument d;
    switch (i % 3) {
      case 0: d.labels = {0}; break;
      case 1: d.labels = {1}; break;
      default: d.labels = {0, 1}; break;
    }
    for (int k = 0; k < 12; ++k) {
      const std::uint32_t label = d.labels[rng.below(d.labels.size())];
      d.words.push_back(label * 5 + static_cast<TermIndex>(rng.below(5)));
    }
    c.docs.push_back(std::move(d));
  }
  return c;
}

}  // namespace cftest
