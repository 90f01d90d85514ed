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

#include "conceptforge/keyword_set.hpp"

#include <algorithm>
#include <set>

#include "conceptforge/error.hpp"

namespace conceptforge {

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kDirect: return "direct";
    case Provenance::kOntologyExpansion: return "ontology-expansion";
    case Provenance::kEncyclopediaExpansion: return "encyclopedia-expansion";
    case Provenance::kCombined: return "combined";
    case Provenance::kClassifier: return "classifier";
  }
  return "direct";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "direct") return Provenance::kDirect;
  if (name == "ontology-expansion") return Provenance::kOntologyExpansion;
  if (name == "encyclopedia-expansion") return Provenance::kEncyclopediaExpansion;
  if (name == "combined") return Provenance::kCombined;
  if (name == "classifier") return Provenance::kClassifier;
  throw Error(ErrorCode::kInvalidArgument, std::string(name), "unknown provenance");
}

bool KeywordSet::contains(const ConceptId& id) const {
  return std::any_of(keywords.begin(), keywords.end(),
                     [&](const Keyword& k) { return k.concept_id == id; });
}

std::vector<ConceptId> KeywordSet::ids() const {
  std::vector<ConceptId> out;
  out.reserve(keywords.size());
  for (const auto& k : keywords) out.push_back(k.concept_id);
  return out;
}

void canonicalize(KeywordSet& set) {
  std::sort(set.keywords.begin(), set.keywords.end(), [](const Keyword& a, const Keyword& b) {
    return a.score != b.score ? a.score > b.score : a.concept_id < b.concept_id;
  });
  std::set<ConceptId> seen;
  for (const auto& k : set.keywords) {
    if (!seen.insert(k.concept_id).second) {
      throw Error(ErrorCode::kDuplicateId, k.concept_id, "keyword repeated in set " + set.doc_id);
    }
  }
}

OrderedJson keyword_set_to_json(const KeywordSet& set) {
  OrderedJson j;
  j["doc_id"] = set.doc_id;
  OrderedJson list = OrderedJson::array();
  for (const auto& k : set.keywords) {
    OrderedJson e;
    e["concept_id"] = k.concept_id;
    e["score"] = k.score;
    e["provenance"] = provenance_name(k.provenance);
    e["hops"] = k.hops;
    list.push_back(std::move(e));
  }
  j["keywords"] = std::move(list);
  return j;
}

KeywordSet keyword_set_from_json(const Json& j) {
  try {
    KeywordSet set;
    set.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& e : j.at("keywords")) {
      Keyword k;
      k.concept_id = e.at("concept_id").get<std::string>();
      k.score = e.value("score", 1.0);
      k.provenance = parse_provenance(e.value("provenance", std::string("direct")));
      k.hops = e.value("hops", 0);
      set.keywords.push_back(std::move(k));
    }
    canonicalize(set);
    return set;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, "keyword-set", e.what());
  }
}

std::string keyword_sets_to_jsonl(const std::vector<KeywordSet>& sets) {
  std::string out;
  for (const auto& s : sets) {
    out += keyword_set_to_json(s).dump();
    out += '\n';
  }
  return out;
}

std::vector<KeywordSet> load_keyword_sets(std::istream& in) {
  std::vector<KeywordSet> out;
  for_each_json_line(in, [&](const Json& rec, std::size_t line) {
    try {
      out.push_back(keyword_set_from_json(rec));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedRecord) throw;
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), e.what());
    }
  });
  return out;
}

std::vector<KeywordSet> load_keyword_sets_file(const std::string& path) {
  auto in = open_input(path);
  return load_keyword_sets(in);
}

}  // namespace conceptforge
