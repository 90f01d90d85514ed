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

#ifndef CONCEPTFORGE_TESTS_REFERENCE_HPP_
#define CONCEPTFORGE_TESTS_REFERENCE_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Deliberately naive implementations used as test oracles. Nothing here calls
// into the library except for plain data types.
namespace cfref {

constexpr int kInf = -1;

// Floyd-Warshall over an adjacency matrix; kInf for unreachable pairs.
std::vector<std::vector<int>> floyd_warshall(std::size_t n,
                                             const std::vector<std::pair<int, int>>& edges);

double normalized(int hops);

struct RefPattern {
  std::vector<std::string> tokens;
  std::vector<std::pair<std::string, double>> owners;
};

struct RefToken {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct RefAnnotation {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  double weighted = 0.0;
};

// Tests every pattern at every position, then repeatedly takes the longest
// remaining non-overlapping hit (leftmost on ties).
std::map<std::string, RefAnnotation> naive_recognize(const std::vector<RefPattern>& patterns,
                                                     const std::vector<RefToken>& tokens);

struct RefCounts {
  std::size_t tp = 0, fp = 0, fn = 0;
};

RefCounts brute_counts(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

struct RefPRF {
  double p = 0, r = 0, f = 0;
};

RefPRF brute_prf(const RefCounts& c);

// Average of minimum pairwise distances in both directions.
double brute_set_distance(const std::vector<int>& a, const std::vector<int>& b,
                          const std::vector<std::vector<int>>& hops);

// Exact posterior marginals p(z_i = t | w) of collapsed LDA restricted to
// `labels` for a single document, by enumerating every assignment.
std::vector<std::vector<double>> llda_exact_marginals(const std::vector<int>& words,
                                                      const std::vector<int>& labels,
                                                      std::size_t num_topics,
                                                      std::size_t vocab_size, double alpha,
                                                      double beta);

}  // namespace cfref

#endif  // CONCEPTFORGE_TESTS_REFERENCE_HPP_
