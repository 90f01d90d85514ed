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

#ifndef CONCEPTFORGE_KEYWORD_SET_HPP_
#define CONCEPTFORGE_KEYWORD_SET_HPP_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "conceptforge/io.hpp"
#include "conceptforge/ontology.hpp"

namespace conceptforge {

enum class Provenance {
  kDirect,
  kOntologyExpansion,
  kEncyclopediaExpansion,
  kCombined,
  kClassifier,
};

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

struct Keyword {
  ConceptId concept_id;
  double score = 0.0;
  Provenance provenance = Provenance::kDirect;
  int hops = 0;

  bool operator==(const Keyword&) const = default;
};

// Scored suggestions for one document. Canonical order is score descending,
// ties by concept ID; concept IDs are unique.
struct KeywordSet {
  std::string doc_id;
  std::vector<Keyword> keywords;

  bool contains(const ConceptId& id) const;
  std::vector<ConceptId> ids() const;
  bool operator==(const KeywordSet&) const = default;
};

// Sorts into canonical order. Throws kDuplicateId on repeated concepts.
void canonicalize(KeywordSet& set);

OrderedJson keyword_set_to_json(const KeywordSet& set);
KeywordSet keyword_set_from_json(const Json& j);

std::string keyword_sets_to_jsonl(const std::vector<KeywordSet>& sets);
std::vector<KeywordSet> load_keyword_sets(std::istream& in);
std::vector<KeywordSet> load_keyword_sets_file(const std::string& path);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_KEYWORD_SET_HPP_
