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

#ifndef CONCEPTFORGE_CORPUS_HPP_
#define CONCEPTFORGE_CORPUS_HPP_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conceptforge/io.hpp"
#include "conceptforge/ontology.hpp"

namespace conceptforge {

struct Document {
  std::string doc_id;
  std::string title;
  std::string abstract;
  std::string language;
  std::optional<int> year;
  std::vector<ConceptId> gold_concepts;
  std::vector<ConceptId> gold_classes;

  bool operator==(const Document&) const = default;
};

// Text the recognizer and feature extractors see: title, newline, abstract.
// Annotation spans are byte offsets into this string.
std::string document_text(const Document& doc);

class Corpus {
 public:
  Corpus() = default;
  // Throws kDuplicateDocId.
  explicit Corpus(std::vector<Document> docs);

  const std::vector<Document>& docs() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document& operator[](std::size_t i) const { return docs_[i]; }
  const Document* find(const std::string& doc_id) const;

  // One canonical JSON object per line, in corpus order.
  std::string to_jsonl() const;

 private:
  std::vector<Document> docs_;
  std::map<std::string, std::size_t> index_;
};

OrderedJson document_to_json(const Document& doc);

struct IngestOptions {
  // When set, gold labels are checked against it.
  const OntologyGraph* ontology = nullptr;
  // Remove unknown gold labels instead of keeping them.
  bool drop_unknown = false;
};

struct IngestResult {
  Corpus corpus;
  std::size_t unknown_labels = 0;
  std::size_t dropped_labels = 0;
};

// Reads corpus-jsonl. Throws kDuplicateDocId or kMalformedRecord(line).
IngestResult ingest(std::istream& in, const IngestOptions& options = {});
IngestResult ingest_file(const std::string& path, const IngestOptions& options = {});

struct YearFilterResult {
  Corpus corpus;
  std::size_t missing_year = 0;
  std::size_t excluded = 0;
};

// Keeps documents published strictly after `min_year` (at or after it when
// `inclusive`). Documents without a year are excluded and counted.
YearFilterResult filter_by_year(const Corpus& corpus, int min_year, bool inclusive = false);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_CORPUS_HPP_
