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

#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cfref {

std::vector<std::vector<int>> floyd_warshall(std::size_t n,
                                             const std::vector<std::pair<int, int>>& edges) {
  const long big = 1L << 40;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, big));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    d[a][b] = std::min(d[a][b], 1L);
    d[b][a] = std::min(d[b][a], 1L);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = d[i][j] >= big ? kInf : static_cast<int>(d[i][j]);
  return out;
}

double normalized(int hops) { return hops == kInf ? 1.0 : hops / (hops + 1.0); }

std::map<std::string, RefAnnotation> naive_recognize(const std::vector<RefPattern>& patterns,
                                                     const std::vector<RefToken>& tokens) {
  struct Hit {
    std::size_t start, len, pattern;
  };
  std::vector<Hit> hits;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      const auto& pt = patterns[p].tokens;
      if (pt.empty() || pos + pt.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < pt.size() && ok; ++k) ok = tokens[pos + k].text == pt[k];
      if (ok) hits.push_back({pos, pt.size(), p});
    }
  }
  std::vector<bool> used(tokens.size(), false);
  std::vector<bool> taken(hits.size(), false);
  std::map<std::string, RefAnnotation> out;
  while (true) {
    std::size_t best = hits.size();
    for (std::size_t i = 0; i < hits.size(); ++i) {
      if (taken[i]) continue;
      bool free = true;
      for (std::size_t k = hits[i].start; k < hits[i].start + hits[i].len; ++k) free = free && !used[k];
      if (!free) {
        taken[i] = true;
        continue;
      }
      if (best == hits.size() || hits[i].len > hits[best].len ||
          (hits[i].len == hits[best].len && hits[i].start < hits[best].start)) {
        best = i;
      }
    }
    if (best == hits.size()) break;
    taken[best] = true;
    const Hit& h = hits[best];
    for (std::size_t k = h.start; k < h.start + h.len; ++k) used[k] = true;
    for (const auto& [cid, w] : patterns[h.pattern].owners) {
      auto& a = out[cid];
      a.spans.emplace_back(tokens[h.start].begin, tokens[h.start + h.len - 1].end);
      a.weighted += w;
    }
  }
  for (auto& [cid, a] : out) std::sort(a.spans.begin(), a.spans.end());
  return out;
}

RefCounts brute_counts(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  std::vector<std::string> p, g;
  for (const auto& x : pred)
    if (std::find(p.begin(), p.end(), x) == p.end()) p.push_back(x);
  for (const auto& x : gold)
    if (std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
  RefCounts c;
  for (const auto& x : p) {
    if (std::find(g.begin(), g.end(), x) != g.end()) ++c.tp;
    else ++c.fp;
  }
  for (const auto& x : g)
    if (std::find(p.begin(), p.end(), x) == p.end()) ++c.fn;
  return c;
}

RefPRF brute_prf(const RefCounts& c) {
  RefPRF r;
  const bool nothing = c.tp == 0 && c.fp == 0 && c.fn == 0;
  r.p = (c.tp + c.fp) == 0 ? (nothing ? 1.0 : 0.0) : double(c.tp) / double(c.tp + c.fp);
  r.r = (c.tp + c.fn) == 0 ? (nothing ? 1.0 : 0.0) : double(c.tp) / double(c.tp + c.fn);
  r.f = (r.p + r.r) == 0 ? 0.0 : 2 * r.p * r.r / (r.p + r.r);
  return r;
}

double brute_set_distance(const std::vector<int>& a, const std::vector<int>& b,
                          const std::vector<std::vector<int>>& hops) {
  std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  auto side = [&](const std::set<int>& from, const std::set<int>& to) {
    double sum = 0;
    for (int x : from) {
      double m = 1.0;
      for (int y : to) m = std::min(m, normalized(hops[x][y]));
      sum += m;
    }
    return sum / double(from.size());
  };
  return 0.5 * (side(sa, sb) + side(sb, sa));
}

std::vector<std::vector<double>> llda_exact_marginals(const std::vector<int>& words,
                                                      const std::vector<int>& labels,
                                                      std::size_t num_topics,
                                                      std::size_t vocab_size, double alpha,
                                                      double beta) {
  const std::size_t n = words.size();
  const std::size_t L = labels.size();
  std::vector<std::vector<double>> marg(n, std::vector<double>(num_topics, 0.0));
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= L;
  std::vector<double> weight(total);
  double z = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> topic(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= L) topic[i] = labels[c % L];
    std::vector<double> nd(num_topics, 0), nt(num_topics, 0);
    std::vector<std::vector<double>> ntw(num_topics, std::vector<double>(vocab_size, 0));
    for (std::size_t i = 0; i < n; ++i) {
      nd[topic[i]] += 1;
      nt[topic[i]] += 1;
      ntw[topic[i]][words[i]] += 1;
    }
    double lw = 0;
    for (int t : labels) {
      lw += std::lgamma(nd[t] + alpha);
      for (std::size_t w = 0; w < vocab_size; ++w) lw += std::lgamma(ntw[t][w] + beta);
      lw -= std::lgamma(nt[t] + vocab_size * beta);
    }
    weight[code] = std::exp(lw);
    z += weight[code];
  }
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= L) marg[i][labels[c % L]] += weight[code] / z;
  }
  return marg;
}

}  // namespace cfref
