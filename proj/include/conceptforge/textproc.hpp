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

#ifndef CONCEPTFORGE_TEXTPROC_HPP_
#define CONCEPTFORGE_TEXTPROC_HPP_

#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace conceptforge {

enum class Stemmer { kNone, kPorterEn, kLightDe };

std::string_view stemmer_name(Stemmer s);
// Accepts "none", "porter-en", "light-de". Throws kInvalidArgument.
Stemmer parse_stemmer(std::string_view name);

struct TextConfig {
  std::set<std::string> stopwords;
  Stemmer stemmer = Stemmer::kPorterEn;
  bool lowercase = true;
};

// One emitted token. [begin, end) are byte offsets into the UTF-8 source.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Splits into maximal letter runs, lowercases, drops stopwords and stems, in
// that order. Digits, punctuation, symbols and invalid UTF-8 bytes separate
// tokens. Combining marks continue a run.
std::vector<Token> tokenize(std::string_view text, const TextConfig& cfg);

// Token texts only.
std::vector<std::string> tokenize_terms(std::string_view text, const TextConfig& cfg);

std::string stem(std::string_view token, Stemmer stemmer);

// Original 1980 Porter algorithm. Words of length <= 2 or containing anything
// other than a-z are returned unchanged.
std::string porter_stem(std::string_view word);

// Minimal German stemmer:
//   1. fold umlauts (ä->a, ö->o, ü->u) and ß->ss
//   2. if the folded word has >= 5 characters, strip the first matching
//      suffix of: "en", "er", "e", "n", "s"
std::string light_de_stem(std::string_view word);

// Unicode-aware lowercase for Latin, Greek and Cyrillic.
std::string to_lower(std::string_view text);

bool is_letter(char32_t cp);

// One word per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> load_stopwords(std::istream& in);
std::set<std::string> load_stopwords_file(const std::string& path);

// Built-in English list used when no file is given.
const std::set<std::string>& default_english_stopwords();

}  // namespace conceptforge

#endif  // CONCEPTFORGE_TEXTPROC_HPP_
