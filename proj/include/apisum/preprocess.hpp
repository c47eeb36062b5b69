// Copyright 2026 The apisum Authors.
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

// Text cleaning for post bodies: HTML stripping, rule-based sentence
// splitting, token normalization (stopwords, numerals, lemmas) and
// duplicate removal.

#ifndef APISUM_PREPROCESS_HPP_
#define APISUM_PREPROCESS_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "apisum/error.hpp"
#include "apisum/text_util.hpp"

namespace apisum::preprocess {

namespace detail {

inline bool iequals_at(std::string_view s, size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (size_t k = 0; k < word.size(); ++k) {
    char c = s[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != word[k]) return false;
  }
  return true;
}

inline bool is_block_tag(std::string_view name) {
  static const std::unordered_set<std::string_view> kBlock = {
      "p",     "div", "br",  "li",    "ul",   "ol",  "h1",    "h2",
      "h3",    "h4",  "h5",  "h6",    "hr",   "table", "tr",  "td",
      "th",    "blockquote", "dl",    "dt",   "dd",  "section", "img"};
  return kBlock.count(name) > 0;
}

}  // namespace detail

/// Removes markup from a post body. Inline <code> text is kept, <pre>
/// blocks are dropped with their content, entities are decoded and
/// whitespace collapsed. Broken markup never throws; a '<' that does not
/// start a tag is kept as text.
inline std::string strip_html(std::string_view html) {
  std::string text;
  text.reserve(html.size());
  size_t i = 0;
  while (i < html.size()) {
    char c = html[i];
    if (c != '<') {
      text.push_back(c);
      ++i;
      continue;
    }
    if (html.substr(i).starts_with("<!--")) {
      size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    size_t close = html.find('>', i + 1);
    size_t j = i + 1;
    bool closing = j < html.size() && html[j] == '/';
    if (closing) ++j;
    size_t name_start = j;
    while (j < html.size() && util::is_alnum(html[j])) ++j;
    if (close == std::string_view::npos || j == name_start) {
      text.push_back(c);
      ++i;
      continue;
    }
    std::string name = util::to_lower(html.substr(name_start, j - name_start));
    if (name == "pre" && !closing) {
      // Skip to the matching </pre>; nested <pre> does not occur in posts.
      size_t k = close + 1;
      size_t end = std::string_view::npos;
      for (; k < html.size(); ++k) {
        if (html[k] == '<' && detail::iequals_at(html, k, "</pre")) {
          end = html.find('>', k);
          break;
        }
      }
      i = end == std::string_view::npos ? html.size() : end + 1;
      text.push_back(' ');
      continue;
    }
    if (detail::is_block_tag(name)) text.push_back(' ');
    i = close + 1;
  }
  return util::collapse_whitespace(util::decode_entities(text));
}

/// Lowercase abbreviations (with their trailing period) that do not end a
/// sentence.
class Abbreviations {
 public:
  Abbreviations() = default;
  explicit Abbreviations(const std::vector<std::string>& entries) {
    for (const auto& e : entries) entries_.insert(util::to_lower(e));
  }
  static Abbreviations load(const std::filesystem::path& path) {
    return Abbreviations(util::read_resource_lines(path.string()));
  }
  bool contains(std::string_view word) const {
    return entries_.count(util::to_lower(word)) > 0;
  }
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
};

/// Rule-based splitter: a run of '.', '!' or '?' (optionally followed by a
/// closing quote or bracket) ends a sentence when whitespace and then an
/// uppercase letter follow, unless the word before a lone '.' is a known
/// abbreviation. Periods inside tokens such as `view.getId()` are never
/// followed by whitespace and so never split.
inline std::vector<std::string> split_sentences(std::string_view text,
                                                const Abbreviations& abbrev) {
  std::vector<std::string> out;
  auto emit = [&](size_t b, size_t e) {
    auto s = util::trim(text.substr(b, e - b));
    if (!s.empty()) out.emplace_back(s);
  };
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    size_t run_begin = i;
    while (i < text.size() && (text[i] == '.' || text[i] == '!' || text[i] == '?')) ++i;
    const bool lone_period = i - run_begin == 1 && c == '.';
    while (i < text.size() && (text[i] == ')' || text[i] == '"' || text[i] == '\'' ||
                               text[i] == ']')) {
      ++i;
    }
    size_t end = i;
    if (end >= text.size() || !util::is_space(text[end])) continue;
    size_t next = end;
    while (next < text.size() && util::is_space(text[next])) ++next;
    size_t cap = next;
    while (cap < text.size() && (text[cap] == '(' || text[cap] == '"' || text[cap] == '\'' ||
                                 text[cap] == '[')) {
      ++cap;
    }
    if (cap >= text.size() || !util::is_upper(text[cap])) continue;
    if (lone_period) {
      size_t w = run_begin;
      while (w > start && !util::is_space(text[w - 1])) --w;
      if (abbrev.contains(text.substr(w, run_begin + 1 - w))) continue;
    }
    emit(start, end);
    start = next;
    i = next;
  }
  emit(start, text.size());
  return out;
}

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(const std::vector<std::string>& words) {
    for (const auto& w : words) words_.insert(util::to_lower(w));
  }
  static Stoplist load(const std::filesystem::path& path) {
    return Stoplist(util::read_resource_lines(path.string()));
  }
  bool contains(const std::string& w) const { return words_.count(w) > 0; }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Irregular-form table with a small suffix-rule fallback. lemma() is
/// applied until it reaches a fixed point, so lemma(lemma(w)) == lemma(w).
class Lemmatizer {
 public:
  Lemmatizer() = default;
  explicit Lemmatizer(std::unordered_map<std::string, std::string> table)
      : table_(std::move(table)) {}

  /// Lines of "surface<TAB>lemma".
  static Lemmatizer load(const std::filesystem::path& path) {
    std::unordered_map<std::string, std::string> table;
    for (const auto& line : util::read_resource_lines(path.string())) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw FormatError("lexicon line without tab: " + line);
      }
      table[util::to_lower(util::trim(std::string_view(line).substr(0, tab)))] =
          util::to_lower(util::trim(std::string_view(line).substr(tab + 1)));
    }
    return Lemmatizer(std::move(table));
  }

  std::string lemma(std::string word) const {
    for (int iter = 0; iter < 8; ++iter) {
      std::string next = step(word);
      if (next == word) break;
      word = std::move(next);
    }
    return word;
  }

  size_t size() const { return table_.size(); }

 private:
  static bool has_vowel(std::string_view s) {
    return s.find_first_of("aeiouy") != std::string_view::npos;
  }

  static std::string undouble(std::string s) {
    size_t n = s.size();
    if (n >= 2 && s[n - 1] == s[n - 2] && std::string_view("bdgmnprt").find(s[n - 1]) !=
                                              std::string_view::npos) {
      s.pop_back();
    }
    return s;
  }

  std::string step(const std::string& w) const {
    if (auto it = table_.find(w); it != table_.end()) return it->second;
    const size_t n = w.size();
    if (n > 4 && w.ends_with("ies")) return w.substr(0, n - 3) + "y";
    if (n > 4 && w.ends_with("sses")) return w.substr(0, n - 2);
    if (n > 5 && w.ends_with("ing")) {
      std::string stem = w.substr(0, n - 3);
      if (stem.size() >= 3 && has_vowel(stem)) return undouble(stem);
    }
    if (n > 4 && w.ends_with("ed") && !w.ends_with("eed")) {
      std::string stem = w.substr(0, n - 2);
      if (stem.size() >= 3 && has_vowel(stem)) return undouble(stem);
    }
    if (n > 3 && w.back() == 's' && !w.ends_with("ss") && !w.ends_with("us") &&
        !w.ends_with("is")) {
      return w.substr(0, n - 1);
    }
    return w;
  }

  std::unordered_map<std::string, std::string> table_;
};

/// Bundled language resources.
struct TextResources {
  Stoplist stopwords;
  Lemmatizer lemmatizer;
  Abbreviations abbreviations;

  /// Loads stopwords.txt, lemmas.tsv and abbreviations.txt from `dir`.
  static TextResources load(const std::filesystem::path& dir) {
    return {Stoplist::load(dir / "stopwords.txt"), Lemmatizer::load(dir / "lemmas.tsv"),
            Abbreviations::load(dir / "abbreviations.txt")};
  }
};

struct TokenizedSentence {
  std::string original;
  std::vector<std::string> tokens;
};

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!util::is_digit(c)) return false;
  }
  return true;
}

/// Lowercases, splits on non-alphanumerics, drops numerals and stopwords,
/// and maps the rest to lemmas. A lemma that is itself a stopword is
/// dropped as well.
inline TokenizedSentence normalize_tokens(std::string_view sentence,
                                          const Stoplist& stoplist,
                                          const Lemmatizer& lemmatizer) {
  TokenizedSentence out{std::string(sentence), {}};
  for (auto& tok : util::word_tokens(sentence)) {
    if (all_digits(tok) || stoplist.contains(tok)) continue;
    std::string lemma = lemmatizer.lemma(std::move(tok));
    if (lemma.empty() || all_digits(lemma) || stoplist.contains(lemma)) continue;
    out.tokens.push_back(std::move(lemma));
  }
  return out;
}

inline TokenizedSentence normalize_tokens(std::string_view sentence,
                                          const TextResources& res) {
  return normalize_tokens(sentence, res.stopwords, res.lemmatizer);
}

/// Indices of the first occurrence of every distinct token sequence.
inline std::vector<size_t> dedup_indices(const std::vector<TokenizedSentence>& sentences) {
  std::set<std::vector<std::string>> seen;
  std::vector<size_t> keep;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (seen.insert(sentences[i].tokens).second) keep.push_back(i);
  }
  return keep;
}

inline std::vector<TokenizedSentence> dedup(const std::vector<TokenizedSentence>& sentences) {
  std::vector<TokenizedSentence> out;
  for (size_t i : dedup_indices(sentences)) out.push_back(sentences[i]);
  return out;
}

}  // namespace apisum::preprocess

#endif  // APISUM_PREPROCESS_HPP_
