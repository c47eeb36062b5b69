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

// N-gram overlap metrics. A generated summary is scored with sentence BLEU
// as its precision and ROUGE-2 recall as its recall; the F-measure is their
// harmonic mean.

#ifndef APISUM_METRICS_HPP_
#define APISUM_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apisum/error.hpp"
#include "apisum/summary.hpp"
#include "apisum/text_util.hpp"

namespace apisum::metrics {

using Tokens = std::vector<std::string>;

struct NGramCounts {
  int n = 1;
  std::map<Tokens, size_t> counts;

  size_t total() const {
    size_t t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
  }
  size_t count(const Tokens& gram) const {
    auto it = counts.find(gram);
    return it == counts.end() ? 0 : it->second;
  }
};

inline NGramCounts ngram_counts(const Tokens& tokens, int n) {
  if (n <= 0) throw ArgumentError("n-gram order must be >= 1");
  NGramCounts out;
  out.n = n;
  const size_t order = static_cast<size_t>(n);
  if (tokens.size() < order) return out;
  for (size_t i = 0; i + order <= tokens.size(); ++i) {
    ++out.counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                        tokens.begin() + static_cast<std::ptrdiff_t>(i + order))];
  }
  return out;
}

/// Harmonic mean, 0 when both inputs are 0.
inline double f_measure(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

inline RougeScore rouge_n(const Tokens& candidate, const Tokens& reference, int n = 2) {
  const auto ref = ngram_counts(reference, n);
  const size_t ref_total = ref.total();
  if (ref_total == 0) {
    throw ArgumentError("ROUGE-" + std::to_string(n) + " needs a reference with at least " +
                        std::to_string(n) + " tokens");
  }
  const auto cand = ngram_counts(candidate, n);
  size_t match = 0;
  for (const auto& [gram, c] : cand.counts) match += std::min(c, ref.count(gram));
  RougeScore s;
  s.recall = static_cast<double>(match) / static_cast<double>(ref_total);
  const size_t cand_total = cand.total();
  s.precision = cand_total ? static_cast<double>(match) / static_cast<double>(cand_total) : 0.0;
  s.f = f_measure(s.precision, s.recall);
  return s;
}

enum class Smoothing { kNone, kAddEpsilon };

struct BleuOptions {
  int max_n = 4;
  Smoothing smoothing = Smoothing::kAddEpsilon;
  double epsilon = 1e-9;
};

/// Sentence BLEU: clipped n-gram precisions p_1..p_N combined by an
/// unweighted geometric mean, times the brevity penalty
/// BP = exp(1 - r/c) when c <= r (r = closest reference length, shorter on
/// ties). With epsilon smoothing a zero p_n is replaced by epsilon.
inline double bleu(const Tokens& candidate, const std::vector<Tokens>& references,
                   const BleuOptions& opts = {}) {
  if (opts.max_n <= 0) throw ArgumentError("BLEU max_n must be >= 1");
  if (references.empty()) throw ArgumentError("BLEU needs at least one reference");
  if (candidate.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= opts.max_n; ++n) {
    const auto cand = ngram_counts(candidate, n);
    std::map<Tokens, size_t> max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, c] : ngram_counts(ref, n).counts) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    size_t clipped = 0;
    for (const auto& [gram, c] : cand.counts) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(c, it->second);
    }
    const size_t total = cand.total();
    double p = total ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
    if (p == 0.0) {
      if (opts.smoothing == Smoothing::kNone) return 0.0;
      p = opts.epsilon;
    }
    log_sum += std::log(p);
  }
  const double geo = std::exp(log_sum / opts.max_n);

  const double c = static_cast<double>(candidate.size());
  size_t r = references.front().size();
  for (const auto& ref : references) {
    const auto diff = [&](size_t len) {
      return std::abs(static_cast<double>(len) - c);
    };
    if (diff(ref.size()) < diff(r) || (diff(ref.size()) == diff(r) && ref.size() < r)) {
      r = ref.size();
    }
  }
  const double bp = c > static_cast<double>(r) ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c);
  return std::clamp(geo * bp, 0.0, 1.0);
}

struct EvalScore {
  double precision = 0.0;  // BLEU
  double recall = 0.0;     // ROUGE-2 recall
  double f_measure = 0.0;
};

inline EvalScore make_score(double precision, double recall) {
  return {precision, recall, f_measure(precision, recall)};
}

struct ScoreOptions {
  BleuOptions bleu;
  int rouge_n = 2;
};

struct ScoredSummary {
  EvalScore score;
  std::vector<std::string> warnings;
};

/// Scores a candidate against its reference using plain lowercase word
/// tokens (no stemming, stopwords kept).
inline ScoredSummary score_summary(std::string_view candidate, std::string_view reference,
                                   const ScoreOptions& opts = {}) {
  const auto ref = util::word_tokens(reference);
  if (ref.empty()) throw ArgumentError("reference summary is empty");
  const auto cand = util::word_tokens(candidate);
  ScoredSummary out;
  if (cand.empty()) {
    out.warnings.push_back("empty candidate summary scored as 0");
    return out;
  }
  const double p = bleu(cand, {ref}, opts.bleu);
  const double r = rouge_n(cand, ref, opts.rouge_n).recall;
  out.score = make_score(p, r);
  return out;
}

inline ScoredSummary score_summary(const Summary& candidate, std::string_view reference,
                                   const ScoreOptions& opts = {}) {
  return score_summary(candidate.text, reference, opts);
}

/// method -> score for one algorithm.
struct ScoreTable {
  std::string algorithm;
  std::map<std::string, EvalScore> rows;
};

inline nlohmann::json to_json(const ScoreTable& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [method, s] : t.rows) {
    arr.push_back({{"method", method},
                   {"algorithm", t.algorithm},
                   {"precision", s.precision},
                   {"recall", s.recall},
                   {"f_measure", s.f_measure}});
  }
  return arr;
}

inline ScoreTable score_table_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("score file must be a JSON array");
  ScoreTable t;
  try {
    for (const auto& row : j) {
      const auto algo = row.value("algorithm", std::string{});
      if (t.algorithm.empty()) {
        t.algorithm = algo;
      } else if (algo != t.algorithm) {
        throw FormatError("score file mixes algorithms '" + t.algorithm + "' and '" + algo + "'");
      }
      const auto method = row.at("method").get<std::string>();
      if (!t.rows.emplace(method, EvalScore{row.at("precision").get<double>(),
                                            row.at("recall").get<double>(),
                                            row.at("f_measure").get<double>()})
               .second) {
        throw FormatError("duplicate method in score file: " + method);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad score file: ") + e.what());
  }
  return t;
}

/// Oracle file: {"<method>": "<reference summary>", ...}
inline std::map<std::string, std::string> oracle_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("oracle file must be a JSON object");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw FormatError("oracle entry for " + it.key() + " is not a string");
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

}  // namespace apisum::metrics

#endif  // APISUM_METRICS_HPP_
