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

#ifndef CONCEPTFORGE_TESTS_FIXTURES_HPP_
#define CONCEPTFORGE_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "conceptforge/corpus.hpp"
#include "conceptforge/enrichment.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/ontology.hpp"
#include "conceptforge/textproc.hpp"

namespace cftest {

std::string fixture(const std::string& name);
conceptforge::Json expected_json(const std::string& name);

std::shared_ptr<const conceptforge::OntologyGraph> load_onto5();
conceptforge::Encyclopedia load_encyc8();

conceptforge::TextConfig english();

// onto-5 enriched with encyc-8 at radius 1, cap 50, min_jaccard 0.4.
std::shared_ptr<const conceptforge::EnrichedOntology> enriched_onto5();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace cftest

#endif  // CONCEPTFORGE_TESTS_FIXTURES_HPP_
