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

// Client side of abstractive summarization. The model itself runs in a
// separate HTTP service; this header fits corpus text into the input budget
// and speaks the service's JSON protocol:
//
//   GET  <endpoint>/health     -> 200 {"status":"ok","model":str}
//   POST <endpoint>/summarize  {"text","max_input_tokens","max_output_tokens","num_beams"}
//                              -> 200 {"summary":str,"input_tokens_used":int}
//                              -> 4xx/5xx {"error":str}

#ifndef APISUM_ABSTRACTIVE_HPP_
#define APISUM_ABSTRACTIVE_HPP_

#include <chrono>
#include <cmath>
#include <ctime>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "apisum/corpus.hpp"
#include "apisum/error.hpp"
#include "apisum/summary.hpp"
#include "apisum/text_util.hpp"

namespace apisum::abstractive {

struct SummarizationRequest {
  std::string text;
  int max_input_tokens = 1024;
  int max_output_tokens = 50;
  int num_beams = 4;

  void validate() const {
    if (max_input_tokens < 1 || max_output_tokens < 1 || num_beams < 1) {
      throw ArgumentError("token budgets and num_beams must be >= 1");
    }
    if (util::trim(text).empty()) throw ArgumentError("summarization request text is empty");
  }
};

inline nlohmann::json to_json(const SummarizationRequest& r) {
  return {{"text", r.text},
          {"max_input_tokens", r.max_input_tokens},
          {"max_output_tokens", r.max_output_tokens},
          {"num_beams", r.num_beams}};
}

struct PreparedInput {
  std::string text;
  size_t sentences_used = 0;
  size_t words = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && util::is_space(s[i])) ++i;
    size_t b = i;
    while (i < s.size() && !util::is_space(s[i])) ++i;
    if (i > b) words.push_back(s.substr(b, i - b));
  }
  return words;
}

/// Joins raw corpus sentences in order and stops before the first sentence
/// that would push the estimated token count (words * tokens_per_word) over
/// the budget. The service enforces the exact subword limit afterwards.
inline PreparedInput prepare_input(const corpus::MethodCorpus& corpus, int budget,
                                   double tokens_per_word = 1.3) {
  if (budget < 1) throw ArgumentError("input budget must be >= 1");
  if (!(tokens_per_word > 0.0)) throw ArgumentError("tokens_per_word must be positive");
  if (corpus.sentences.empty()) {
    throw InsufficientCorpusError("insufficient corpus for " + corpus.method.canonical_name);
  }
  PreparedInput out;
  for (const auto& s : corpus.sentences) {
    const auto words = split_words(s.text);
    if (words.empty()) {
      ++out.sentences_used;
      continue;
    }
    const size_t total = out.words + words.size();
    if (static_cast<double>(total) * tokens_per_word <= budget) {
      for (auto w : words) {
        if (!out.text.empty()) out.text.push_back(' ');
        out.text.append(w);
      }
      out.words = total;
      ++out.sentences_used;
      continue;
    }
    out.truncated = true;
    if (out.words == 0) {
      const auto keep = static_cast<size_t>(std::floor(budget / tokens_per_word));
      for (size_t i = 0; i < keep && i < words.size(); ++i) {
        if (!out.text.empty()) out.text.push_back(' ');
        out.text.append(words[i]);
      }
      out.words = std::min(keep, words.size());
      out.warnings.push_back("first sentence exceeds the input budget; cut to " +
                             std::to_string(out.words) + " words");
    }
    break;
  }
  return out;
}

/// "http://host:port/prefix" split into the pieces httplib wants.
struct Endpoint {
  std::string scheme_host_port;
  std::string base_path;

  static Endpoint parse(std::string_view url) {
    constexpr std::string_view kScheme = "http://";
    if (!url.starts_with(kScheme)) {
      throw ArgumentError("endpoint must be an http:// URL: " + std::string(url));
    }
    const size_t slash = url.find('/', kScheme.size());
    Endpoint e;
    e.scheme_host_port = std::string(url.substr(0, slash));
    if (e.scheme_host_port.size() == kScheme.size()) {
      throw ArgumentError("endpoint has no host: " + std::string(url));
    }
    if (slash != std::string_view::npos) {
      e.base_path = std::string(url.substr(slash));
      while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
    }
    return e;
  }
};

struct ClientOptions {
  int retries = 3;  // extra attempts after the first, for transient failures
  std::chrono::milliseconds backoff{250};  // doubled after every retry
  std::chrono::seconds connect_timeout{5};
  std::chrono::seconds read_timeout{300};
  bool probe_health = true;
};

struct HealthInfo {
  std::string status;
  std::string model;
};

inline std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class ModelClient {
 public:
  explicit ModelClient(std::string_view endpoint, ClientOptions opts = {})
      : endpoint_url_(endpoint), endpoint_(Endpoint::parse(endpoint)), opts_(opts) {}

  HealthInfo health() const {
    auto res = with_retries([&](httplib::Client& cli) { return cli.Get(path("/health")); });
    if (res->status != 200) {
      throw ServiceUnavailableError("health check returned HTTP " + std::to_string(res->status));
    }
    const auto j = parse_body(res->body);
    if (!j.contains("status") || !j["status"].is_string()) {
      throw ProtocolError("health response lacks a \"status\" string");
    }
    HealthInfo h{j["status"].get<std::string>(), j.value("model", std::string{})};
    if (h.status != "ok") throw ServiceUnavailableError("service status is '" + h.status + "'");
    return h;
  }

  /// Sends one request. The returned Summary records every generation
  /// parameter and the model reported by the health probe.
  Summary summarize(std::string_view method, const SummarizationRequest& request) const {
    request.validate();
    HealthInfo h;
    if (opts_.probe_health) h = health();
    const std::string body = to_json(request).dump();
    auto res = with_retries([&](httplib::Client& cli) {
      return cli.Post(path("/summarize"), body, "application/json");
    });
    const auto j = parse_body(res->body);
    if (res->status != 200) {
      if (!j.contains("error") || !j["error"].is_string()) {
        throw ProtocolError("HTTP " + std::to_string(res->status) + " without an \"error\" string");
      }
      throw GenerationFailedError(j["error"].get<std::string>(), res->status);
    }
    if (!j.contains("summary") || !j["summary"].is_string()) {
      throw ProtocolError("response lacks a \"summary\" string");
    }
    Summary s;
    s.method = std::string(method);
    s.algorithm = Algorithm::kAbstractive;
    s.text = j["summary"].get<std::string>();
    if (s.text.empty()) throw GenerationFailedError("service returned an empty summary", res->status);
    s.params = {{"max_input_tokens", request.max_input_tokens},
                {"max_output_tokens", request.max_output_tokens},
                {"num_beams", request.num_beams},
                {"endpoint", endpoint_url_}};
    if (j.contains("input_tokens_used") && j["input_tokens_used"].is_number_integer()) {
      s.params["input_tokens_used"] = j["input_tokens_used"].get<int64_t>();
    }
    if (!h.model.empty()) s.params["model"] = h.model;
    s.generated_at = utc_now_iso8601();
    return s;
  }

 private:
  std::string path(std::string_view p) const { return endpoint_.base_path + std::string(p); }

  static nlohmann::json parse_body(const std::string& body) {
    try {
      auto j = nlohmann::json::parse(body);
      if (!j.is_object()) throw ProtocolError("response body is not a JSON object");
      return j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ProtocolError(std::string("response body is not JSON: ") + e.what());
    }
  }

  // Retries transport failures and 503 with exponential backoff.
  template <typename Call>
  httplib::Result with_retries(Call&& call) const {
    auto delay = opts_.backoff;
    std::string last_error;
    for (int attempt = 0; attempt <= opts_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(delay);
        delay *= 2;
      }
      httplib::Client cli(endpoint_.scheme_host_port);
      cli.set_connection_timeout(opts_.connect_timeout);
      cli.set_read_timeout(opts_.read_timeout);
      auto res = call(cli);
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status == 503) {
        last_error = "HTTP 503";
        continue;
      }
      return res;
    }
    throw ServiceUnavailableError("model service unavailable at " + endpoint_url_ + " (" +
                                  last_error + ")");
  }

  std::string endpoint_url_;
  Endpoint endpoint_;
  ClientOptions opts_;
};

inline Summary summarize_remote(std::string_view method, const SummarizationRequest& request,
                                std::string_view endpoint, const ClientOptions& opts = {}) {
  request.validate();
  return ModelClient(endpoint, opts).summarize(method, request);
}

}  // namespace apisum::abstractive

#endif  // APISUM_ABSTRACTIVE_HPP_
