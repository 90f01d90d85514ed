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

#include "conceptforge/textproc.hpp"

#include <fstream>

#include "conceptforge/error.hpp"
#include "conceptforge/io.hpp"

namespace conceptforge {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point at text[pos]; `len` receives the bytes consumed.
char32_t decode_utf8(std::string_view text, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  len = 1;
  if (b0 < 0x80) return b0;
  std::size_t need;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    return kInvalid;
  }
  if (pos + need >= text.size()) return kInvalid;
  for (std::size_t i = 1; i <= need; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return kInvalid;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[need] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return kInvalid;
  len = need + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

char32_t lower_cp(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

std::string fold_german(std::string_view word) {
  std::string out;
  for (std::size_t pos = 0; pos < word.size();) {
    std::size_t len;
    char32_t cp = decode_utf8(word, pos, len);
    switch (cp) {
      case 0xE4: out += 'a'; break;
      case 0xF6: out += 'o'; break;
      case 0xFC: out += 'u'; break;
      case 0xDF: out += "ss"; break;
      default: out.append(word.substr(pos, len));
    }
    pos += len;
  }
  return out;
}

std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

// Porter stemmer state over a lowercase ASCII word.
class Porter {
 public:
  explicit Porter(std::string word) : b_(std::move(word)) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_;
  }

 private:
  bool cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int n = 0;
    std::size_t i = 0;
    while (i < len && cons(i)) ++i;
    while (i < len) {
      while (i < len && !cons(i)) ++i;
      if (i >= len) break;
      while (i < len && cons(i)) ++i;
      ++n;
    }
    return n;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && cons(len - 1);
  }

  // *o: stem ends cvc where the final c is not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3 || !cons(len - 1) || cons(len - 2) || !cons(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) const { return b_.ends_with(s); }
  std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }
  void replace(std::string_view suffix, std::string_view with) {
    b_.replace(stem_len(suffix), suffix.size(), with);
  }

  void step1a() {
    if (ends("sses")) replace("sses", "ss");
    else if (ends("ies")) replace("ies", "i");
    else if (ends("ss")) {}
    else if (ends("s")) b_.pop_back();
  }

  void step1b() {
    bool cleanup = false;
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) replace("eed", "ee");
    } else if (ends("ed") && has_vowel(stem_len("ed"))) {
      b_.resize(stem_len("ed"));
      cleanup = true;
    } else if (ends("ing") && has_vowel(stem_len("ing"))) {
      b_.resize(stem_len("ing"));
      cleanup = true;
    }
    if (!cleanup) return;
    if (ends("at")) replace("at", "ate");
    else if (ends("bl")) replace("bl", "ble");
    else if (ends("iz")) replace("iz", "ize");
    else if (double_cons(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
      b_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  // First listed suffix that matches decides; the rewrite needs m > threshold.
  void apply_rules(std::initializer_list<std::pair<std::string_view, std::string_view>> rules,
                   int threshold) {
    for (const auto& [suffix, with] : rules) {
      if (!ends(suffix)) continue;
      if (measure(stem_len(suffix)) > threshold) replace(suffix, with);
      return;
    }
  }

  void step2() {
    apply_rules({{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
                 {"izer", "ize"}, {"abli", "able"}, {"alli", "al"}, {"entli", "ent"},
                 {"eli", "e"}, {"ousli", "ous"}, {"ization", "ize"}, {"ation", "ate"},
                 {"ator", "ate"}, {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"},
                 {"ousness", "ous"}, {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}},
                0);
  }

  void step3() {
    apply_rules({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                 {"ical", "ic"}, {"ful", ""}, {"ness", ""}},
                0);
  }

  void step4() {
    static constexpr std::string_view kSuffixes[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
        "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize"};
    // Longest match among the listed suffixes.
    std::string_view best;
    for (auto s : kSuffixes) {
      if (ends(s) && s.size() > best.size()) best = s;
    }
    if (best.empty()) return;
    std::size_t len = stem_len(best);
    if (measure(len) <= 1) return;
    if (best == "ion" && !(len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't'))) return;
    b_.resize(len);
  }

  void step5a() {
    if (!ends("e")) return;
    std::size_t len = b_.size() - 1;
    int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
  }

  void step5b() {
    if (measure(b_.size()) > 1 && double_cons(b_.size()) && b_.back() == 'l') b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string_view stemmer_name(Stemmer s) {
  switch (s) {
    case Stemmer::kNone: return "none";
    case Stemmer::kPorterEn: return "porter-en";
    case Stemmer::kLightDe: return "light-de";
  }
  return "none";
}

Stemmer parse_stemmer(std::string_view name) {
  if (name == "none") return Stemmer::kNone;
  if (name == "porter-en") return Stemmer::kPorterEn;
  if (name == "light-de") return Stemmer::kLightDe;
  throw Error(ErrorCode::kInvalidArgument, std::string(name), "unknown stemmer");
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp == 0x37E || cp == 0x387 || cp == 0x375) return false;
  if (cp == 0x482) return false;
  if (cp >= 0x660 && cp <= 0x669) return false;
  if (cp >= 0x6F0 && cp <= 0x6F9) return false;
  if (cp >= 0x966 && cp <= 0x96F) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xE000 && cp <= 0xF8FF) return false;
  if (cp >= 0xFE30 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFFEF) {
    return (cp >= 0xFF21 && cp <= 0xFF3A) || (cp >= 0xFF41 && cp <= 0xFF5A) ||
           (cp >= 0xFF66 && cp <= 0xFFDC);
  }
  if (cp >= 0xFFF0 && cp <= 0xFFFF) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;
  return true;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t len;
    char32_t cp = decode_utf8(text, pos, len);
    if (cp == kInvalid) out.append(text.substr(pos, len));
    else append_utf8(out, lower_cp(cp));
    pos += len;
  }
  return out;
}

std::string porter_stem(std::string_view word) {
  for (char c : word) {
    if (c < 'a' || c > 'z') return std::string(word);
  }
  return Porter(std::string(word)).run();
}

std::string light_de_stem(std::string_view word) {
  std::string folded = fold_german(word);
  if (count_code_points(folded) < 5) return folded;
  for (std::string_view suffix : {"en", "er", "e", "n", "s"}) {
    if (folded.ends_with(suffix)) {
      folded.resize(folded.size() - suffix.size());
      break;
    }
  }
  return folded;
}

std::string stem(std::string_view token, Stemmer stemmer) {
  switch (stemmer) {
    case Stemmer::kPorterEn: return porter_stem(token);
    case Stemmer::kLightDe: return light_de_stem(token);
    case Stemmer::kNone: break;
  }
  return std::string(token);
}

std::vector<Token> tokenize(std::string_view text, const TextConfig& cfg) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string word(text.substr(begin, end - begin));
    if (cfg.lowercase) word = to_lower(word);
    if (cfg.stopwords.count(word)) return;
    tokens.push_back(Token{stem(word, cfg.stemmer), begin, end});
  };
  std::size_t run_begin = std::string_view::npos;
  while (pos < text.size()) {
    std::size_t len;
    char32_t cp = decode_utf8(text, pos, len);
    bool letter = cp != kInvalid &&
                  (is_letter(cp) || (run_begin != std::string_view::npos &&
                                     cp >= 0x300 && cp <= 0x36F));
    if (letter && run_begin == std::string_view::npos) run_begin = pos;
    if (!letter && run_begin != std::string_view::npos) {
      emit(run_begin, pos);
      run_begin = std::string_view::npos;
    }
    pos += len;
  }
  if (run_begin != std::string_view::npos) emit(run_begin, text.size());
  return tokens;
}

std::vector<std::string> tokenize_terms(std::string_view text, const TextConfig& cfg) {
  std::vector<std::string> terms;
  for (auto& t : tokenize(text, cfg)) terms.push_back(std::move(t.text));
  return terms;
}

std::set<std::string> load_stopwords(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    words.insert(to_lower(line.substr(first, last - first + 1)));
  }
  return words;
}

std::set<std::string> load_stopwords_file(const std::string& path) {
  auto in = open_input(path);
  return load_stopwords(in);
}

const std::set<std::string>& default_english_stopwords() {
  static const std::set<std::string> kWords = {
      "a",     "about", "above", "after",  "again", "against", "all",    "also",  "am",
      "an",    "and",   "any",   "are",    "as",    "at",      "be",     "been",  "before",
      "being", "below", "between", "both", "but",   "by",      "can",    "could", "did",
      "do",    "does",  "doing", "down",   "during", "each",   "few",    "for",   "from",
      "further", "had", "has",   "have",   "having", "he",     "her",    "here",  "hers",
      "him",   "his",   "how",   "i",      "if",    "in",      "into",   "is",    "it",
      "its",   "itself", "more", "most",   "my",    "no",      "nor",    "not",   "of",
      "off",   "on",    "once",  "only",   "or",    "other",   "our",    "ours",  "out",
      "over",  "own",   "same",  "she",    "should", "so",     "some",   "such",  "than",
      "that",  "the",   "their", "theirs", "them",  "then",    "there",  "these", "they",
      "this",  "those", "through", "to",   "too",   "under",   "until",  "up",    "very",
      "was",   "we",    "were",  "what",   "when",  "where",   "which",  "while", "who",
      "whom",  "why",   "will",  "with",   "would", "you",     "your",   "yours"};
  return kWords;
}

}  // namespace conceptforge
