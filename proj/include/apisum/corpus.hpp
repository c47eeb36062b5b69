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

// Per-method corpus construction: find the posts whose code snippets call
// an API method, then keep the sentences around each mention.

#ifndef APISUM_CORPUS_HPP_
#define APISUM_CORPUS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apisum/error.hpp"
#include "apisum/ingest.hpp"
#include "apisum/preprocess.hpp"
#include "apisum/text_util.hpp"

namespace apisum::corpus {

using ingest::RawPost;

/// An API method such as `activity.onCreate`. A pattern matches when it
/// occurs in text without an identifier character directly before it, so
/// `onCreate(` matches `onCreate(b)` and `super.onCreate(b)` but not
/// `myonCreate(b)`.
struct MethodId {
  std::string canonical_name;
  std::vector<std::string> match_patterns;

  MethodId() = default;
  explicit MethodId(std::string name, std::vector<std::string> patterns = {})
      : canonical_name(std::move(name)), match_patterns(std::move(patterns)) {
    if (canonical_name.empty() ||
        std::count(canonical_name.begin(), canonical_name.end(), '.') != 1) {
      throw ArgumentError("method name must look like receiver.method: '" +
                          canonical_name + "'");
    }
    if (match_patterns.empty()) match_patterns.push_back(method_name() + "(");
  }

  std::string receiver() const {
    return canonical_name.substr(0, canonical_name.find('.'));
  }
  std::string method_name() const {
    return canonical_name.substr(canonical_name.find('.') + 1);
  }

  bool operator<(const MethodId& o) const { return canonical_name < o.canonical_name; }
  bool operator==(const MethodId& o) const { return canonical_name == o.canonical_name; }
};

inline bool pattern_occurs(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) return false;
  for (size_t pos = text.find(pattern); pos != std::string_view::npos;
       pos = text.find(pattern, pos + 1)) {
    if (pos == 0 || !util::is_ident_char(text[pos - 1]) ||
        !util::is_ident_char(pattern.front())) {
      return true;
    }
  }
  return false;
}

inline bool mentions(std::string_view text, const MethodId& method) {
  for (const auto& p : method.match_patterns) {
    if (pattern_occurs(text, p)) return true;
  }
  return false;
}

inline std::vector<MethodId> registry_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("method registry must be a JSON array");
  std::vector<MethodId> out;
  for (const auto& e : j) {
    try {
      out.emplace_back(e.at("canonical_name").get<std::string>(),
                       e.value("match_patterns", std::vector<std::string>{}));
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError(std::string("bad registry entry: ") + ex.what());
    }
  }
  return out;
}

inline std::vector<MethodId> load_registry(const std::string& path) {
  try {
    return registry_from_json(nlohmann::json::parse(util::read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const std::vector<MethodId>& registry) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& m : registry) {
    j.push_back({{"canonical_name", m.canonical_name}, {"match_patterns", m.match_patterns}});
  }
  return j;
}

/// Text of every <code> and <pre> region of a post body, tags removed and
/// entities decoded. Nested <pre><code> yields one span.
inline std::vector<std::string> code_spans(std::string_view html) {
  std::vector<std::string> spans;
  std::string cur;
  int depth = 0;
  size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      if (depth > 0) cur.push_back(html[i]);
      ++i;
      continue;
    }
    size_t close = html.find('>', i + 1);
    if (close == std::string_view::npos) {
      if (depth > 0) cur.append(html.substr(i));
      break;
    }
    size_t j = i + 1;
    bool closing = j < html.size() && html[j] == '/';
    if (closing) ++j;
    size_t name_start = j;
    while (j < close && util::is_alnum(html[j])) ++j;
    std::string name = util::to_lower(html.substr(name_start, j - name_start));
    if (name == "code" || name == "pre") {
      if (!closing) {
        ++depth;
      } else if (depth > 0 && --depth == 0) {
        spans.push_back(util::decode_entities(cur));
        cur.clear();
      }
    }
    i = close + 1;
  }
  if (depth > 0 && !cur.empty()) spans.push_back(util::decode_entities(cur));
  return spans;
}

/// Registry methods called inside the post's code spans. Mentions in prose
/// do not count.
inline std::set<std::string> detect_method_mentions(const RawPost& post,
                                                    const std::vector<MethodId>& registry) {
  std::set<std::string> found;
  const auto spans = code_spans(post.body_html);
  for (const auto& m : registry) {
    for (const auto& span : spans) {
      if (mentions(span, m)) {
        found.insert(m.canonical_name);
        break;
      }
    }
  }
  return found;
}

struct SelectOptions {
  int64_t threshold = 3;
  /// Also feed the parent question of each qualifying answer. The question
  /// must meet the threshold too.
  bool include_questions = true;
};

/// Answers that call `method` with score >= threshold, plus (optionally)
/// their parent questions, ascending by id.
template <ingest::PostSource Store>
std::vector<RawPost> select_posts(const MethodId& method, const Store& store,
                                  const SelectOptions& opts = {}) {
  std::map<int64_t, RawPost> chosen;
  std::set<int64_t> parents;
  const std::vector<MethodId> one{method};
  store.for_each([&](const RawPost& p) {
    if (!p.is_answer() || p.score < opts.threshold) return;
    if (detect_method_mentions(p, one).empty()) return;
    chosen.emplace(p.id, p);
    parents.insert(*p.parent_id);
  });
  if (opts.include_questions) {
    for (int64_t id : parents) {
      auto q = store.find(id);
      if (q && q->is_question() && q->score >= opts.threshold) chosen.emplace(id, *q);
    }
  }
  std::vector<RawPost> out;
  out.reserve(chosen.size());
  for (auto& [id, p] : chosen) out.push_back(std::move(p));
  return out;
}

enum class Criterion { kMain, kOpening, kPreceding, kFollowing };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::kMain: return "main";
    case Criterion::kOpening: return "opening";
    case Criterion::kPreceding: return "preceding";
    case Criterion::kFollowing: return "following";
  }
  return "?";
}

inline Criterion criterion_from_string(std::string_view s) {
  if (s == "main") return Criterion::kMain;
  if (s == "opening") return Criterion::kOpening;
  if (s == "preceding") return Criterion::kPreceding;
  if (s == "following") return Criterion::kFollowing;
  throw FormatError("unknown criterion '" + std::string(s) + "'");
}

struct SelectedSentence {
  size_t index = 0;  // 0-based position in the post
  Criterion criterion = Criterion::kMain;
  bool operator==(const SelectedSentence&) const = default;
};

/// Applies the four selection criteria around every sentence that mentions
/// the method: the post's opening sentence, the mentioning sentence itself,
/// and its immediate neighbours. A sentence picked by several criteria
/// carries the first of main, opening, preceding, following (the enum
/// order).
inline std::vector<SelectedSentence> select_sentences(const std::vector<std::string>& sentences,
                                                      const MethodId& method) {
  std::map<size_t, Criterion> label;
  auto mark = [&](size_t i, Criterion c) {
    auto [it, inserted] = label.emplace(i, c);
    if (!inserted && c < it->second) it->second = c;
  };
  for (size_t m = 0; m < sentences.size(); ++m) {
    if (!mentions(sentences[m], method)) continue;
    mark(m, Criterion::kMain);
    mark(0, Criterion::kOpening);
    if (m > 0) mark(m - 1, Criterion::kPreceding);
    if (m + 1 < sentences.size()) mark(m + 1, Criterion::kFollowing);
  }
  std::vector<SelectedSentence> out;
  out.reserve(label.size());
  for (auto [i, c] : label) out.push_back({i, c});
  return out;
}

struct CorpusSentence {
  std::string text;
  int64_t source_post_id = 0;
  Criterion criterion = Criterion::kMain;
  bool operator==(const CorpusSentence&) const = default;
};

struct MethodCorpus {
  MethodId method;
  int64_t threshold = 3;
  std::vector<CorpusSentence> sentences;
  size_t post_count = 0;              // posts returned by select_posts
  size_t contributing_posts = 0;      // posts that yielded at least one sentence
  std::vector<std::string> warnings;

  bool empty() const { return sentences.empty(); }
};

template <ingest::PostSource Store>
MethodCorpus build_corpus(const MethodId& method, const Store& store,
                          const SelectOptions& opts,
                          const preprocess::Abbreviations& abbreviations) {
  MethodCorpus corpus;
  corpus.method = method;
  corpus.threshold = opts.threshold;
  const auto posts = select_posts(method, store, opts);
  corpus.post_count = posts.size();
  for (const auto& post : posts) {
    const auto sentences =
        preprocess::split_sentences(preprocess::strip_html(post.body_html), abbreviations);
    const auto picked = select_sentences(sentences, method);
    if (!picked.empty()) ++corpus.contributing_posts;
    for (const auto& s : picked) {
      corpus.sentences.push_back({sentences[s.index], post.id, s.criterion});
    }
  }
  if (corpus.sentences.empty()) {
    corpus.warnings.push_back("empty corpus: no post with score >= " +
                              std::to_string(opts.threshold) + " mentions " +
                              method.canonical_name);
  }
  return corpus;
}

inline nlohmann::json to_json(const MethodCorpus& c) {
  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : c.sentences) {
    sentences.push_back({{"text", s.text},
                         {"source_post_id", s.source_post_id},
                         {"criterion", std::string(to_string(s.criterion))}});
  }
  return {{"method", c.method.canonical_name},
          {"match_patterns", c.method.match_patterns},
          {"threshold", c.threshold},
          {"post_count", c.post_count},
          {"contributing_posts", c.contributing_posts},
          {"warnings", c.warnings},
          {"sentences", sentences}};
}

inline MethodCorpus corpus_from_json(const nlohmann::json& j) {
  MethodCorpus c;
  try {
    c.method = MethodId(j.at("method").get<std::string>(),
                        j.value("match_patterns", std::vector<std::string>{}));
    c.threshold = j.value("threshold", int64_t{3});
    c.post_count = j.value("post_count", size_t{0});
    c.contributing_posts = j.value("contributing_posts", size_t{0});
    c.warnings = j.value("warnings", std::vector<std::string>{});
    for (const auto& s : j.at("sentences")) {
      c.sentences.push_back({s.at("text").get<std::string>(),
                             s.at("source_post_id").get<int64_t>(),
                             criterion_from_string(s.at("criterion").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad corpus file: ") + e.what());
  }
  return c;
}

}  // namespace apisum::corpus

#endif  // APISUM_CORPUS_HPP_
