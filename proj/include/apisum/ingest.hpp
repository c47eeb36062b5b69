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

// Stack Exchange Posts.xml ingestion and the on-disk post store.
//
// The dump puts one <row .../> element per line. DumpReader streams those
// lines, so memory use is bounded by the longest row. The store written by
// ingest_dump() is a directory holding
//
//   records.jsonl   one JSON object per post, ascending id
//   index.tsv       "<id>\t<byte offset into records.jsonl>"
//   stats.json      DatasetStats plus parse/filter diagnostics

#ifndef APISUM_INGEST_HPP_
#define APISUM_INGEST_HPP_

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apisum/error.hpp"
#include "apisum/text_util.hpp"

namespace apisum::ingest {

enum class PostType { kQuestion, kAnswer };

struct RawPost {
  int64_t id = 0;
  PostType post_type = PostType::kQuestion;
  std::optional<int64_t> parent_id;  // present iff answer
  int64_t score = 0;
  std::string body_html;
  std::vector<std::string> tags;  // lowercase; empty for answers
  std::string creation_date;      // ISO-8601 UTC as found in the dump

  bool is_question() const { return post_type == PostType::kQuestion; }
  bool is_answer() const { return post_type == PostType::kAnswer; }
  bool has_tag(std::string_view tag) const {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
  }
  bool operator==(const RawPost&) const = default;
};

inline nlohmann::json to_json(const RawPost& p) {
  nlohmann::json j;
  j["id"] = p.id;
  j["type"] = p.is_question() ? "question" : "answer";
  if (p.parent_id) j["parent_id"] = *p.parent_id;
  j["score"] = p.score;
  j["tags"] = p.tags;
  j["creation_date"] = p.creation_date;
  j["body"] = p.body_html;
  return j;
}

inline RawPost post_from_json(const nlohmann::json& j) {
  RawPost p;
  try {
    p.id = j.at("id").get<int64_t>();
    const auto type = j.at("type").get<std::string>();
    if (type == "question") {
      p.post_type = PostType::kQuestion;
    } else if (type == "answer") {
      p.post_type = PostType::kAnswer;
    } else {
      throw FormatError("unknown post type '" + type + "'");
    }
    if (j.contains("parent_id")) p.parent_id = j["parent_id"].get<int64_t>();
    p.score = j.at("score").get<int64_t>();
    p.tags = j.value("tags", std::vector<std::string>{});
    p.creation_date = j.value("creation_date", std::string{});
    p.body_html = j.at("body").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad post record: ") + e.what());
  }
  if (p.is_answer() != p.parent_id.has_value()) {
    throw FormatError("post " + std::to_string(p.id) +
                      ": parent_id must be present exactly for answers");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Dump parsing

enum class RowErrorPolicy { kSkip, kAbort };

struct RowError {
  uint64_t line = 0;
  std::string message;
};

struct ParseDiagnostics {
  uint64_t rows_seen = 0;
  uint64_t posts_emitted = 0;
  uint64_t rows_out_of_domain = 0;  // PostTypeId other than 1 or 2
  uint64_t rows_malformed = 0;
  std::vector<RowError> errors;  // first kMaxKeptErrors only

  static constexpr size_t kMaxKeptErrors = 100;
};

/// Splits "<android><java>" (or the newer "|android|java|") into tags.
inline std::vector<std::string> parse_tags(std::string_view raw) {
  std::vector<std::string> tags;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tags.push_back(util::to_lower(cur));
    cur.clear();
  };
  for (char c : raw) {
    if (c == '<' || c == '>' || c == '|') {
      flush();
    } else if (!util::is_space(c)) {
      cur.push_back(c);
    }
  }
  flush();
  return tags;
}

namespace detail {

using Attributes = std::vector<std::pair<std::string_view, std::string_view>>;

// Scans the attribute list of a single "<row a="..." b='...' />" line.
// Returns an error message, or empty on success.
inline std::string scan_row(std::string_view line, Attributes& attrs) {
  attrs.clear();
  auto t = util::trim(line);
  if (!t.starts_with("<row")) return "not a row element";
  if (!t.ends_with("/>")) return "row element not closed on its line";
  t = t.substr(4, t.size() - 6);
  size_t i = 0;
  while (true) {
    while (i < t.size() && util::is_space(t[i])) ++i;
    if (i >= t.size()) break;
    size_t name_start = i;
    while (i < t.size() && t[i] != '=' && !util::is_space(t[i])) ++i;
    std::string_view name = t.substr(name_start, i - name_start);
    while (i < t.size() && util::is_space(t[i])) ++i;
    if (i >= t.size() || t[i] != '=' || name.empty()) {
      return "expected name=\"value\" near offset " + std::to_string(name_start);
    }
    ++i;
    while (i < t.size() && util::is_space(t[i])) ++i;
    if (i >= t.size() || (t[i] != '"' && t[i] != '\'')) {
      return "unquoted value for attribute " + std::string(name);
    }
    char quote = t[i++];
    size_t close = t.find(quote, i);
    if (close == std::string_view::npos) {
      return "unterminated value for attribute " + std::string(name);
    }
    attrs.emplace_back(name, t.substr(i, close - i));
    i = close + 1;
  }
  return {};
}

inline const std::string_view* find_attr(const Attributes& attrs,
                                         std::string_view name) {
  for (const auto& [k, v] : attrs) {
    if (k == name) return &v;
  }
  return nullptr;
}

inline std::optional<int64_t> to_int(std::string_view s) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Lazily turns a Posts.xml stream into RawPost values, one per call to
/// next(). Lines that are not <row> elements (XML declaration, <posts>
/// wrapper) are ignored.
class DumpReader {
 public:
  explicit DumpReader(std::istream& in,
                      RowErrorPolicy policy = RowErrorPolicy::kSkip)
      : in_(in), policy_(policy) {}

  std::optional<RawPost> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto t = util::trim(line);
      if (!t.starts_with("<row")) continue;
      ++diag_.rows_seen;
      RawPost post;
      std::string err = parse_line(t, post);
      if (err == kOutOfDomain) {
        ++diag_.rows_out_of_domain;
        continue;
      }
      if (!err.empty()) {
        ++diag_.rows_malformed;
        if (policy_ == RowErrorPolicy::kAbort) {
          throw FormatError("line " + std::to_string(line_no_) + ": " + err);
        }
        if (diag_.errors.size() < ParseDiagnostics::kMaxKeptErrors) {
          diag_.errors.push_back({line_no_, err});
        }
        continue;
      }
      ++diag_.posts_emitted;
      return post;
    }
    return std::nullopt;
  }

  const ParseDiagnostics& diagnostics() const { return diag_; }

 private:
  static constexpr std::string_view kOutOfDomain = "\x01out-of-domain";

  std::string parse_line(std::string_view line, RawPost& post) {
    if (auto err = detail::scan_row(line, attrs_); !err.empty()) return err;
    auto required = [&](std::string_view name) -> const std::string_view* {
      return detail::find_attr(attrs_, name);
    };
    const auto* type = required("PostTypeId");
    if (!type) return "missing attribute PostTypeId";
    auto type_id = detail::to_int(*type);
    if (!type_id) return "non-integer PostTypeId";
    if (*type_id != 1 && *type_id != 2) return std::string(kOutOfDomain);

    const auto* id = required("Id");
    if (!id) return "missing attribute Id";
    auto id_v = detail::to_int(*id);
    if (!id_v) return "non-integer Id";
    const auto* score = required("Score");
    if (!score) return "missing attribute Score";
    auto score_v = detail::to_int(*score);
    if (!score_v) return "non-integer Score";
    const auto* body = required("Body");
    if (!body) return "missing attribute Body";

    post.id = *id_v;
    post.score = *score_v;
    post.body_html = util::decode_entities(*body);
    if (const auto* date = required("CreationDate")) {
      post.creation_date = std::string(*date);
    }
    if (*type_id == 1) {
      post.post_type = PostType::kQuestion;
      if (const auto* tags = required("Tags")) {
        post.tags = parse_tags(util::decode_entities(*tags));
      }
    } else {
      post.post_type = PostType::kAnswer;
      const auto* parent = required("ParentId");
      if (!parent) return "missing attribute ParentId on answer";
      auto parent_v = detail::to_int(*parent);
      if (!parent_v) return "non-integer ParentId";
      post.parent_id = *parent_v;
    }
    return {};
  }

  std::istream& in_;
  RowErrorPolicy policy_;
  uint64_t line_no_ = 0;
  ParseDiagnostics diag_;
  detail::Attributes attrs_;
};

/// Drains a dump stream into a vector. Convenient for fixtures; use
/// DumpReader directly for dump-scale inputs.
inline std::vector<RawPost> parse_dump(std::istream& in,
                                       RowErrorPolicy policy = RowErrorPolicy::kSkip,
                                       ParseDiagnostics* diag = nullptr) {
  DumpReader reader(in, policy);
  std::vector<RawPost> out;
  while (auto p = reader.next()) out.push_back(std::move(*p));
  if (diag) *diag = reader.diagnostics();
  return out;
}

// ---------------------------------------------------------------------------
// Post stores

/// Anything corpus building can read posts from: ordered iteration plus
/// lookup by id.
template <typename S>
concept PostSource = requires(const S& s, int64_t id,
                              const std::function<void(const RawPost&)>& fn) {
  { s.for_each(fn) };
  { s.find(id) } -> std::same_as<std::optional<RawPost>>;
};

/// In-memory store, posts kept in ascending id order.
class MemoryPostStore {
 public:
  MemoryPostStore() = default;
  explicit MemoryPostStore(std::vector<RawPost> posts) : posts_(std::move(posts)) {
    std::sort(posts_.begin(), posts_.end(),
              [](const RawPost& a, const RawPost& b) { return a.id < b.id; });
    for (size_t i = 0; i < posts_.size(); ++i) {
      if (!by_id_.emplace(posts_[i].id, i).second) {
        throw ArgumentError("duplicate post id " + std::to_string(posts_[i].id));
      }
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& p : posts_) fn(p);
  }

  std::optional<RawPost> find(int64_t id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return posts_[it->second];
  }

  const std::vector<RawPost>& posts() const { return posts_; }
  size_t size() const { return posts_.size(); }
  bool empty() const { return posts_.empty(); }

 private:
  std::vector<RawPost> posts_;
  std::unordered_map<int64_t, size_t> by_id_;
};

struct FilterDiagnostics {
  uint64_t questions_dropped = 0;
  uint64_t answers_dropped = 0;  // parent exists but lacks the tag
  uint64_t orphan_answers = 0;   // parent never seen
};

/// Keeps questions carrying `tag` and every answer whose parent is one of
/// those questions. Answer retention does not depend on input order.
template <typename Range>
MemoryPostStore filter_android(const Range& posts, std::string_view tag = "android",
                               FilterDiagnostics* diag = nullptr) {
  std::unordered_set<int64_t> all_questions;
  std::unordered_set<int64_t> kept_questions;
  for (const RawPost& p : posts) {
    if (!p.is_question()) continue;
    all_questions.insert(p.id);
    if (p.has_tag(tag)) kept_questions.insert(p.id);
  }
  FilterDiagnostics d;
  std::vector<RawPost> kept;
  for (const RawPost& p : posts) {
    if (p.is_question()) {
      if (kept_questions.count(p.id)) kept.push_back(p);
      else ++d.questions_dropped;
    } else if (p.parent_id && kept_questions.count(*p.parent_id)) {
      kept.push_back(p);
    } else if (p.parent_id && all_questions.count(*p.parent_id)) {
      ++d.answers_dropped;
    } else {
      ++d.orphan_answers;
    }
  }
  if (diag) *diag = d;
  return MemoryPostStore(std::move(kept));
}

struct DatasetStats {
  uint64_t question_count = 0;
  uint64_t answer_count = 0;
  uint64_t total_posts = 0;
  int64_t answer_score_sum = 0;  // mean = answer_score_sum / answer_count

  /// Absent when there are no answers.
  std::optional<double> mean_answer_score() const {
    if (answer_count == 0) return std::nullopt;
    return static_cast<double>(answer_score_sum) /
           static_cast<double>(answer_count);
  }

  void add(const RawPost& p) {
    if (p.is_question()) {
      ++question_count;
    } else {
      ++answer_count;
      answer_score_sum += p.score;
    }
    ++total_posts;
  }
};

template <PostSource Store>
DatasetStats dataset_stats(const Store& store) {
  DatasetStats s;
  store.for_each([&](const RawPost& p) { s.add(p); });
  return s;
}

inline nlohmann::json to_json(const DatasetStats& s) {
  nlohmann::json j;
  j["question_count"] = s.question_count;
  j["answer_count"] = s.answer_count;
  j["total_posts"] = s.total_posts;
  j["answer_score_sum"] = s.answer_score_sum;
  if (auto m = s.mean_answer_score()) {
    j["mean_answer_score"] = *m;
  } else {
    j["mean_answer_score"] = nullptr;
  }
  return j;
}

/// Read-only view of a store directory written by StoreWriter. Iteration
/// streams records.jsonl; find() seeks through the id index.
class DiskPostStore {
 public:
  explicit DiskPostStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::ifstream idx(dir_ / "index.tsv");
    if (!idx) throw IoError("not a post store (missing index.tsv): " + dir_.string());
    std::string line;
    while (std::getline(idx, line)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      auto id = detail::to_int(std::string_view(line).substr(0, tab));
      auto off = detail::to_int(std::string_view(line).substr(tab + 1));
      if (!id || !off) throw FormatError("bad index line: " + line);
      offsets_.emplace(*id, static_cast<std::streamoff>(*off));
    }
    if (!std::filesystem::exists(records_path())) {
      throw IoError("missing records.jsonl in " + dir_.string());
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::ifstream in(records_path(), std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      fn(post_from_json(nlohmann::json::parse(line)));
    }
  }

  std::optional<RawPost> find(int64_t id) const {
    auto it = offsets_.find(id);
    if (it == offsets_.end()) return std::nullopt;
    std::ifstream in(records_path(), std::ios::binary);
    in.seekg(it->second);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("index points past end of records");
    return post_from_json(nlohmann::json::parse(line));
  }

  size_t size() const { return offsets_.size(); }
  const std::filesystem::path& dir() const { return dir_; }

  nlohmann::json stats_json() const {
    return nlohmann::json::parse(util::read_file((dir_ / "stats.json").string()));
  }

 private:
  std::filesystem::path records_path() const { return dir_ / "records.jsonl"; }

  std::filesystem::path dir_;
  std::unordered_map<int64_t, std::streamoff> offsets_;
};

/// Single writer for a store directory. Records must be appended in
/// ascending id order.
class StoreWriter {
 public:
  explicit StoreWriter(const std::filesystem::path& dir) : dir_(dir) {
    std::filesystem::create_directories(dir_);
    records_.open(dir_ / "records.jsonl", std::ios::binary | std::ios::trunc);
    index_.open(dir_ / "index.tsv", std::ios::binary | std::ios::trunc);
    if (!records_ || !index_) throw IoError("cannot create store in " + dir_.string());
  }

  void append(const RawPost& p) {
    if (last_id_ && p.id <= *last_id_) {
      throw ArgumentError("store records must be appended in ascending id order");
    }
    last_id_ = p.id;
    index_ << p.id << '\t' << offset_ << '\n';
    std::string line = to_json(p).dump();
    line.push_back('\n');
    records_.write(line.data(), static_cast<std::streamsize>(line.size()));
    offset_ += static_cast<int64_t>(line.size());
    stats_.add(p);
  }

  /// Flushes and writes stats.json; `extra` is merged into the stats object.
  DatasetStats finish(const nlohmann::json& extra = nlohmann::json::object()) {
    records_.close();
    index_.close();
    auto j = to_json(stats_);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    util::write_file((dir_ / "stats.json").string(), j.dump(2) + "\n");
    return stats_;
  }

 private:
  std::filesystem::path dir_;
  std::ofstream records_;
  std::ofstream index_;
  int64_t offset_ = 0;
  std::optional<int64_t> last_id_;
  DatasetStats stats_;
};

/// Writes an in-memory store to disk.
inline DatasetStats write_store(const MemoryPostStore& store,
                                const std::filesystem::path& dir) {
  StoreWriter w(dir);
  store.for_each([&](const RawPost& p) { w.append(p); });
  return w.finish();
}

struct IngestReport {
  ParseDiagnostics parse;
  FilterDiagnostics filter;
  DatasetStats stats;
};

inline nlohmann::json to_json(const ParseDiagnostics& d) {
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : d.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
  return {{"rows_seen", d.rows_seen},
          {"posts_emitted", d.posts_emitted},
          {"rows_out_of_domain", d.rows_out_of_domain},
          {"rows_malformed", d.rows_malformed},
          {"errors", errors}};
}

inline nlohmann::json to_json(const FilterDiagnostics& d) {
  return {{"questions_dropped", d.questions_dropped},
          {"answers_dropped", d.answers_dropped},
          {"orphan_answers", d.orphan_answers}};
}

/// Two passes over the dump file: the first collects question ids and the
/// tagged subset, the second writes the retained posts. Only the id sets are
/// held in memory. Rows are written in ascending id order; the dumps are
/// id-sorted, and an out-of-order dump is rejected rather than re-sorted.
inline IngestReport ingest_dump(const std::filesystem::path& dump_path,
                                std::string_view tag,
                                const std::filesystem::path& out_dir,
                                RowErrorPolicy policy = RowErrorPolicy::kSkip) {
  std::unordered_set<int64_t> all_questions;
  std::unordered_set<int64_t> kept_questions;
  IngestReport report;
  {
    std::ifstream in(dump_path, std::ios::binary);
    if (!in) throw IoError("cannot open dump " + dump_path.string());
    DumpReader reader(in, policy);
    while (auto p = reader.next()) {
      if (!p->is_question()) continue;
      all_questions.insert(p->id);
      if (p->has_tag(tag)) kept_questions.insert(p->id);
    }
    report.parse = reader.diagnostics();
  }
  std::ifstream in(dump_path, std::ios::binary);
  if (!in) throw IoError("cannot reopen dump " + dump_path.string());
  DumpReader reader(in, policy);
  StoreWriter writer(out_dir);
  while (auto p = reader.next()) {
    if (p->is_question()) {
      if (kept_questions.count(p->id)) writer.append(*p);
      else ++report.filter.questions_dropped;
    } else if (kept_questions.count(*p->parent_id)) {
      writer.append(*p);
    } else if (all_questions.count(*p->parent_id)) {
      ++report.filter.answers_dropped;
    } else {
      ++report.filter.orphan_answers;
    }
  }
  nlohmann::json extra;
  extra["tag"] = std::string(tag);
  extra["parse"] = to_json(report.parse);
  extra["filter"] = to_json(report.filter);
  report.stats = writer.finish(extra);
  return report;
}

}  // namespace apisum::ingest

#endif  // APISUM_INGEST_HPP_
