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

#include "conceptforge/corpus.hpp"
#include "conceptforge/error.hpp"
#include "conceptforge/keyword_set.hpp"
#include "fixtures.hpp"

using namespace conceptforge;

namespace {

IngestResult parse(const std::string& text, const IngestOptions& o = {}) {
  std::istringstream in(text);
  return ingest(in, o);
}

}  // namespace

TEST(Ingest, TwoDocs) {
  auto r = parse(R"({"doc_id":"a","title":"T","abstract":"A"}
{"doc_id":"b","title":"U","abstract":"B","year":2004})");
  EXPECT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.corpus.find("b")->year, 2004);
  EXPECT_EQ(document_text(r.corpus[0]), "T\nA");
}

TEST(Ingest, Errors) {
  try {
    parse("{\"doc_id\":\"a\",\"title\":\"T\"}\n{\"doc_id\":\"a\",\"title\":\"U\"}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateDocId);
  }
  try {
    parse("{\"doc_id\":\"a\",\"title\":\"T\"}\n{\"doc_id\":\"b\",\"year\":\"x\",\"title\":\"U\"}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
    EXPECT_EQ(e.subject(), "2");
  }
  EXPECT_THROW(parse(R"({"doc_id":"a","title":"","abstract":""})"), Error);
}

TEST(Ingest, UnknownLabels) {
  auto ont = cftest::load_onto5();
  const std::string text =
      R"({"doc_id":"a","title":"T","gold_concepts":["c_econ","c_nope"],"gold_classes":["k_soc"]})";
  IngestOptions keep{ont.get(), false};
  auto kept = parse(text, keep);
  EXPECT_EQ(kept.unknown_labels, 1u);
  EXPECT_EQ(kept.dropped_labels, 0u);
  EXPECT_EQ(kept.corpus[0].gold_concepts.size(), 2u);
  IngestOptions drop{ont.get(), true};
  auto dropped = parse(text, drop);
  EXPECT_EQ(dropped.dropped_labels, 1u);
  EXPECT_EQ(dropped.corpus[0].gold_concepts, std::vector<ConceptId>{"c_econ"});
}

TEST(Ingest, Idempotent) {
  auto a = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  std::istringstream again(a.to_jsonl());
  auto b = ingest(again).corpus;
  EXPECT_EQ(a.to_jsonl(), b.to_jsonl());
  EXPECT_EQ(hex_digest(a.to_jsonl()), hex_digest(ingest_file(cftest::fixture("corpus10.jsonl")).corpus.to_jsonl()));
}

TEST(YearFilter, StrictAndInclusive) {
  auto r = parse(R"({"doc_id":"a","title":"T","year":2004}
{"doc_id":"b","title":"U","year":2004})");
  EXPECT_EQ(filter_by_year(r.corpus, 2003).corpus.size(), 2u);
  auto r2 = parse(R"({"doc_id":"a","title":"T","year":2003})");
  EXPECT_EQ(filter_by_year(r2.corpus, 2003).corpus.size(), 0u);
  EXPECT_EQ(filter_by_year(r2.corpus, 2003, true).corpus.size(), 1u);
}

TEST(YearFilter, CommittedSubset) {
  auto corpus = ingest_file(cftest::fixture("corpus10.jsonl")).corpus;
  auto r = filter_by_year(corpus, 2003);
  std::ifstream in(cftest::fixture("expected/corpus10_after2003.txt"));
  std::vector<std::string> expected;
  for (std::string l; std::getline(in, l);) expected.push_back(l);
  std::vector<std::string> got;
  for (const auto& d : r.corpus.docs()) got.push_back(d.doc_id);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(r.missing_year, 1u);
  EXPECT_EQ(r.excluded, 2u);
}

TEST(KeywordSets, CanonicalOrderAndRoundTrip) {
  KeywordSet s{"d", {{"b", 0.5, Provenance::kDirect, 0},
                     {"a", 0.5, Provenance::kOntologyExpansion, 1},
                     {"c", 0.9, Provenance::kEncyclopediaExpansion, 2}}};
  canonicalize(s);
  EXPECT_EQ(s.ids(), (std::vector<ConceptId>{"c", "a", "b"}));
  auto sets = load_keyword_sets_file(cftest::fixture("review_tasks.jsonl"));
  std::istringstream in(keyword_sets_to_jsonl(sets));
  EXPECT_EQ(load_keyword_sets(in), sets);
  KeywordSet dup{"d", {{"a", 1, Provenance::kDirect, 0}, {"a", 2, Provenance::kDirect, 0}}};
  EXPECT_THROW(canonicalize(dup), Error);
}
