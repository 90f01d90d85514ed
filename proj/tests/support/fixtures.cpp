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

#include "fixtures.hpp"

#include <atomic>
#include <random>

namespace cftest {

using namespace conceptforge;

std::string fixture(const std::string& name) { return std::string(CF_FIXTURE_DIR) + "/" + name; }

Json expected_json(const std::string& name) {
  return Json::parse(read_file(fixture("expected/" + name)));
}

std::shared_ptr<const OntologyGraph> load_onto5() {
  return std::make_shared<const OntologyGraph>(OntologyGraph::load_file(fixture("onto5.jsonl")));
}

Encyclopedia load_encyc8() { return Encyclopedia::load_file(fixture("encyc8.jsonl")); }

TextConfig english() {
  TextConfig t;
  t.stopwords = default_english_stopwords();
  t.stemmer = Stemmer::kPorterEn;
  return t;
}

std::shared_ptr<const EnrichedOntology> enriched_onto5() {
  EnrichParams p;
  p.text = english();
  return std::make_shared<const EnrichedOntology>(enrich_ontology(load_onto5(), load_encyc8(), p));
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("cftest-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace cftest
