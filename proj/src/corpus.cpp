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

#include "conceptforge/corpus.hpp"

#include <set>

#include "conceptforge/error.hpp"

namespace conceptforge {

std::string document_text(const Document& doc) { return doc.title + "\n" + doc.abstract; }

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!index_.emplace(docs_[i].doc_id, i).second) {
      throw Error(ErrorCode::kDuplicateDocId, docs_[i].doc_id);
    }
  }
}

const Document* Corpus::find(const std::string& doc_id) const {
  auto it = index_.find(doc_id);
  return it == index_.end() ? nullptr : &docs_[it->second];
}

OrderedJson document_to_json(const Document& doc) {
  OrderedJson j;
  j["doc_id"] = doc.doc_id;
  j["title"] = doc.title;
  j["abstract"] = doc.abstract;
  j["language"] = doc.language;
  if (doc.year) j["year"] = *doc.year;
  j["gold_concepts"] = doc.gold_concepts;
  j["gold_classes"] = doc.gold_classes;
  return j;
}

std::string Corpus::to_jsonl() const {
  std::string out;
  for (const auto& d : docs_) {
    out += document_to_json(d).dump();
    out += '\n';
  }
  return out;
}

IngestResult ingest(std::istream& in, const IngestOptions& options) {
  IngestResult result;
  std::vector<Document> docs;
  std::set<std::string> seen;
  for_each_json_line(in, [&](const Json& rec, std::size_t line) {
    Document d;
    d.doc_id = required_string(rec, "doc_id", line);
    if (d.doc_id.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "empty doc_id");
    }
    if (!seen.insert(d.doc_id).second) throw Error(ErrorCode::kDuplicateDocId, d.doc_id);
    d.title = optional_string(rec, "title", line);
    d.abstract = optional_string(rec, "abstract", line);
    if (d.title.empty() && d.abstract.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                  "title and abstract are both empty");
    }
    d.language = optional_string(rec, "language", line);
    if (auto y = rec.find("year"); y != rec.end() && !y->is_null()) {
      if (!y->is_number_integer()) {
        throw Error(ErrorCode::kMalformedRecord, std::to_string(line), "year must be an integer");
      }
      d.year = y->get<int>();
    }
    d.gold_concepts = string_list(rec, "gold_concepts", line);
    d.gold_classes = string_list(rec, "gold_classes", line);
    if (options.ontology) {
      auto check = [&](std::vector<ConceptId>& labels, bool classes) {
        std::vector<ConceptId> kept;
        for (auto& id : labels) {
          bool known = classes ? options.ontology->find_class(id) != nullptr
                               : options.ontology->find_concept(id) != nullptr;
          if (!known) {
            ++result.unknown_labels;
            if (options.drop_unknown) {
              ++result.dropped_labels;
              continue;
            }
          }
          kept.push_back(std::move(id));
        }
        labels = std::move(kept);
      };
      check(d.gold_concepts, false);
      check(d.gold_classes, true);
    }
    docs.push_back(std::move(d));
  });
  result.corpus = Corpus(std::move(docs));
  return result;
}

IngestResult ingest_file(const std::string& path, const IngestOptions& options) {
  auto in = open_input(path);
  return ingest(in, options);
}

YearFilterResult filter_by_year(const Corpus& corpus, int min_year, bool inclusive) {
  YearFilterResult r;
  std::vector<Document> kept;
  for (const auto& d : corpus.docs()) {
    if (!d.year) {
      ++r.missing_year;
      continue;
    }
    if (*d.year > min_year || (inclusive && *d.year == min_year)) {
      kept.push_back(d);
    } else {
      ++r.excluded;
    }
  }
  r.corpus = Corpus(std::move(kept));
  return r;
}

}  // namespace conceptforge
