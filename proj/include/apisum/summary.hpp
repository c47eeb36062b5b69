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

#ifndef APISUM_SUMMARY_HPP_
#define APISUM_SUMMARY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apisum/error.hpp"

namespace apisum {

enum class Algorithm { kTextRank, kAbstractive };

inline std::string_view to_string(Algorithm a) {
  return a == Algorithm::kTextRank ? "textrank" : "abstractive";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "textrank") return Algorithm::kTextRank;
  if (s == "abstractive" || s == "bart") return Algorithm::kAbstractive;
  throw ArgumentError("unknown algorithm '" + std::string(s) + "'");
}

struct SentenceScore {
  std::string text;
  double score = 0.0;
  bool selected = false;
};

struct Summary {
  std::string method;
  Algorithm algorithm = Algorithm::kTextRank;
  nlohmann::json params = nlohmann::json::object();
  std::string text;
  std::vector<SentenceScore> sentence_scores;  // extractive only
  std::optional<std::string> generated_at;     // abstractive only
};

inline nlohmann::json to_json(const Summary& s) {
  nlohmann::json j;
  j["method"] = s.method;
  j["algorithm"] = std::string(to_string(s.algorithm));
  j["params"] = s.params;
  j["text"] = s.text;
  nlohmann::json scores = nlohmann::json::array();
  for (const auto& sc : s.sentence_scores) {
    scores.push_back({{"text", sc.text}, {"score", sc.score}, {"selected", sc.selected}});
  }
  j["sentence_scores"] = scores;
  if (s.generated_at) j["generated_at"] = *s.generated_at;
  return j;
}

inline Summary summary_from_json(const nlohmann::json& j) {
  Summary s;
  try {
    s.method = j.at("method").get<std::string>();
    s.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    s.params = j.value("params", nlohmann::json::object());
    s.text = j.at("text").get<std::string>();
    if (j.contains("sentence_scores")) {
      for (const auto& sc : j["sentence_scores"]) {
        s.sentence_scores.push_back({sc.at("text").get<std::string>(),
                                     sc.at("score").get<double>(),
                                     sc.value("selected", false)});
      }
    }
    if (j.contains("generated_at")) s.generated_at = j["generated_at"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad summary file: ") + e.what());
  }
  return s;
}

}  // namespace apisum

#endif  // APISUM_SUMMARY_HPP_
