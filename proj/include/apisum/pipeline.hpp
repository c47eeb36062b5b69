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

// End-to-end run: corpus -> summarize (per algorithm) -> evaluate ->
// compare. Every stage reads its inputs from and writes its outputs to the
// run directory, so a run can be resumed from any stage:
//
//   <out>/corpus/<method>.json
//   <out>/summaries/<algorithm>/<method>.json
//   <out>/scores/<algorithm>.json
//   <out>/report/report.json, report.md
//   <out>/manifest.json

#ifndef APISUM_PIPELINE_HPP_
#define APISUM_PIPELINE_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "apisum/abstractive.hpp"
#include "apisum/corpus.hpp"
#include "apisum/error.hpp"
#include "apisum/ingest.hpp"
#include "apisum/metrics.hpp"
#include "apisum/preprocess.hpp"
#include "apisum/stats.hpp"
#include "apisum/summary.hpp"
#include "apisum/textrank.hpp"

namespace apisum::pipeline {

inline constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;

struct PipelineConfig {
  fs::path store_dir;
  fs::path registry_path;
  fs::path oracle_path;
  fs::path data_dir;  // stopwords.txt, lemmas.tsv, abbreviations.txt
  fs::path out_dir;
  corpus::SelectOptions select;
  textrank::TextRankConfig textrank;
  abstractive::SummarizationRequest abstractive;  // text unused
  std::string endpoint = "http://127.0.0.1:8000";
  double tokens_per_word = 1.3;
  int max_in_flight = 2;
  abstractive::ClientOptions client;
  stats::ComparisonConfig compare;
  int jobs = 1;
};

namespace detail {

inline int to_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ArgumentError("setting " + key + ": expected an integer, got '" + v + "'");
  }
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ArgumentError("setting " + key + ": expected a number, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ArgumentError("setting " + key + ": expected true/false, got '" + v + "'");
}

}  // namespace detail

/// Applies one `key = value` setting. Unknown keys are errors.
inline void apply_setting(PipelineConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "store") c.store_dir = value;
  else if (key == "registry") c.registry_path = value;
  else if (key == "oracle") c.oracle_path = value;
  else if (key == "data_dir") c.data_dir = value;
  else if (key == "out") c.out_dir = value;
  else if (key == "threshold") c.select.threshold = to_int(key, value);
  else if (key == "include_questions") c.select.include_questions = to_bool(key, value);
  else if (key == "textrank.damping") c.textrank.damping = to_double(key, value);
  else if (key == "textrank.tolerance") c.textrank.tolerance = to_double(key, value);
  else if (key == "textrank.max_iterations") c.textrank.max_iterations = to_int(key, value);
  else if (key == "textrank.k") c.textrank.summary_k = to_int(key, value);
  else if (key == "abstractive.endpoint") c.endpoint = value;
  else if (key == "abstractive.max_input_tokens") c.abstractive.max_input_tokens = to_int(key, value);
  else if (key == "abstractive.max_output_tokens") c.abstractive.max_output_tokens = to_int(key, value);
  else if (key == "abstractive.num_beams") c.abstractive.num_beams = to_int(key, value);
  else if (key == "abstractive.tokens_per_word") c.tokens_per_word = to_double(key, value);
  else if (key == "abstractive.max_in_flight") c.max_in_flight = to_int(key, value);
  else if (key == "abstractive.retries") c.client.retries = to_int(key, value);
  else if (key == "alpha") c.compare.alpha = to_double(key, value);
  else if (key == "tails") {
    if (value == "one") c.compare.decision_tails = stats::Tails::kOne;
    else if (value == "two") c.compare.decision_tails = stats::Tails::kTwo;
    else throw ArgumentError("setting tails: expected one or two");
  } else if (key == "jobs") c.jobs = to_int(key, value);
  else throw ArgumentError("unknown setting '" + key + "'");
}

/// Reads `key = value` lines; blank lines and '#' comments are ignored.
inline void load_config_file(const fs::path& path, PipelineConfig& c) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(c, std::string(util::trim(t.substr(0, eq))),
                  std::string(util::trim(t.substr(eq + 1))));
  }
}

inline nlohmann::json to_json(const PipelineConfig& c) {
  return {{"store", c.store_dir.string()},
          {"registry", c.registry_path.string()},
          {"oracle", c.oracle_path.string()},
          {"data_dir", c.data_dir.string()},
          {"out", c.out_dir.string()},
          {"threshold", c.select.threshold},
          {"include_questions", c.select.include_questions},
          {"textrank",
           {{"damping", c.textrank.damping},
            {"tolerance", c.textrank.tolerance},
            {"max_iterations", c.textrank.max_iterations},
            {"k", c.textrank.summary_k}}},
          {"abstractive",
           {{"endpoint", c.endpoint},
            {"max_input_tokens", c.abstractive.max_input_tokens},
            {"max_output_tokens", c.abstractive.max_output_tokens},
            {"num_beams", c.abstractive.num_beams},
            {"tokens_per_word", c.tokens_per_word},
            {"max_in_flight", c.max_in_flight}}},
          {"alpha", c.compare.alpha},
          {"tails", std::string(stats::to_string(c.compare.decision_tails))},
          {"jobs", c.jobs}};
}

/// Hex SHA-256 of a file's bytes.
inline std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot hash " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on at most `workers` threads. Exceptions from
/// fn are rethrown after all workers finish (the first by index wins).
inline void parallel_for(size_t n, int workers, const std::function<void(size_t)>& fn) {
  const size_t w = std::clamp<size_t>(static_cast<size_t>(std::max(workers, 1)), 1, std::max<size_t>(n, 1));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (w == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < w; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

enum class StageStatus { kOk, kFailed, kSkipped };

inline std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::kOk: return "ok";
    case StageStatus::kFailed: return "failed";
    case StageStatus::kSkipped: return "skipped";
  }
  return "?";
}

struct StageRecord {
  std::string name;
  StageStatus status = StageStatus::kOk;
  double seconds = 0.0;
  std::string detail;
};

struct RunManifest {
  std::string version = kVersion;
  std::string started_at;
  nlohmann::json config;
  std::map<std::string, std::string> input_hashes;
  std::vector<StageRecord> stages;
  std::vector<std::string> warnings;
  // method -> algorithm -> seconds
  std::map<std::string, std::map<std::string, double>> method_seconds;

  bool failed() const {
    return std::any_of(stages.begin(), stages.end(),
                       [](const StageRecord& s) { return s.status == StageStatus::kFailed; });
  }
  const StageRecord* stage(std::string_view name) const {
    for (const auto& s : stages) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : m.stages) {
    stages.push_back({{"name", s.name},
                      {"status", std::string(to_string(s.status))},
                      {"seconds", s.seconds},
                      {"detail", s.detail}});
  }
  return {{"version", m.version},
          {"started_at", m.started_at},
          {"config", m.config},
          {"input_sha256", m.input_hashes},
          {"stages", stages},
          {"method_seconds", m.method_seconds},
          {"warnings", m.warnings}};
}

struct RunRequest {
  std::vector<std::string> methods;  // empty = whole registry
  std::set<Algorithm> algorithms = {Algorithm::kTextRank};
  /// Stages to execute; the others are assumed done and their artifacts
  /// are read from the run directory.
  std::set<std::string> stages = {"corpus", "summarize", "evaluate", "compare"};
};

inline fs::path corpus_path(const fs::path& out, const std::string& method) {
  return out / "corpus" / (method + ".json");
}
inline fs::path summary_path(const fs::path& out, Algorithm a, const std::string& method) {
  return out / "summaries" / std::string(to_string(a)) / (method + ".json");
}
inline fs::path scores_path(const fs::path& out, Algorithm a) {
  return out / "scores" / (std::string(to_string(a)) + ".json");
}

inline void write_json(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  util::write_file(path.string(), j.dump(2) + "\n");
}

inline nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(util::read_file(path.string()));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-method work result, merged in method order for deterministic output.
struct MethodOutcome {
  std::vector<std::string> warnings;
  double seconds = 0.0;
  bool produced = false;
};

}  // namespace detail

/// Scores every summary file of one algorithm in the run directory.
inline metrics::ScoreTable evaluate_summaries(const std::vector<Summary>& summaries,
                                              const std::map<std::string, std::string>& oracle,
                                              std::string algorithm,
                                              std::vector<std::string>* warnings) {
  metrics::ScoreTable table;
  table.algorithm = std::move(algorithm);
  for (const auto& s : summaries) {
    auto ref = oracle.find(s.method);
    if (ref == oracle.end()) {
      if (warnings) warnings->push_back(s.method + ": no oracle summary, not scored");
      continue;
    }
    auto scored = metrics::score_summary(s, ref->second);
    for (auto& w : scored.warnings) {
      if (warnings) warnings->push_back(s.method + ": " + w);
    }
    table.rows[s.method] = scored.score;
  }
  return table;
}

inline std::vector<Summary> load_summaries(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::exists(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Summary> out;
  for (const auto& f : files) out.push_back(summary_from_json(read_json(f)));
  return out;
}

/// Executes the requested stages. Stage failures are recorded in the
/// manifest rather than thrown; the manifest is written to
/// <out>/manifest.json before returning.
inline RunManifest run_pipeline(const PipelineConfig& config, const RunRequest& request) {
  using detail::Clock;
  RunManifest manifest;
  manifest.started_at = abstractive::utc_now_iso8601();
  manifest.config = to_json(config);
  const fs::path& out = config.out_dir;
  fs::create_directories(out);

  auto hash_input = [&](const fs::path& p) {
    if (!p.empty() && fs::is_regular_file(p)) manifest.input_hashes[p.string()] = sha256_file(p);
  };
  hash_input(config.registry_path);
  hash_input(config.oracle_path);
  hash_input(config.store_dir / "records.jsonl");
  for (const char* f : {"stopwords.txt", "lemmas.tsv", "abbreviations.txt"}) {
    hash_input(config.data_dir / f);
  }

  auto finish = [&]() -> RunManifest {
    write_json(out / "manifest.json", to_json(manifest));
    return manifest;
  };
  auto run_stage = [&](const std::string& name, const std::function<std::string()>& body) {
    StageRecord rec{name, StageStatus::kOk, 0.0, {}};
    const auto t0 = Clock::now();
    try {
      rec.detail = body();
    } catch (const std::exception& e) {
      rec.status = StageStatus::kFailed;
      rec.detail = e.what();
    }
    rec.seconds = detail::seconds_since(t0);
    manifest.stages.push_back(rec);
    return rec.status == StageStatus::kOk;
  };
  auto skip_stage = [&](const std::string& name, const std::string& why) {
    manifest.stages.push_back({name, StageStatus::kSkipped, 0.0, why});
  };
  auto merge = [&](const std::vector<std::string>& methods,
                   const std::vector<detail::MethodOutcome>& outcomes, const std::string& algo) {
    size_t produced = 0;
    for (size_t i = 0; i < methods.size(); ++i) {
      for (const auto& w : outcomes[i].warnings) manifest.warnings.push_back(w);
      if (!algo.empty()) manifest.method_seconds[methods[i]][algo] = outcomes[i].seconds;
      produced += outcomes[i].produced;
    }
    return produced;
  };

  std::vector<corpus::MethodId> registry;
  preprocess::TextResources resources;
  try {
    registry = corpus::load_registry(config.registry_path.string());
    resources = preprocess::TextResources::load(config.data_dir);
    config.textrank.validate();
    config.compare.validate();
  } catch (const std::exception& e) {
    manifest.stages.push_back({"setup", StageStatus::kFailed, 0.0, e.what()});
    return finish();
  }
  std::vector<corpus::MethodId> methods;
  if (request.methods.empty()) {
    methods = registry;
  } else {
    for (const auto& name : request.methods) {
      auto it = std::find_if(registry.begin(), registry.end(),
                             [&](const corpus::MethodId& m) { return m.canonical_name == name; });
      if (it == registry.end()) {
        manifest.stages.push_back({"setup", StageStatus::kFailed, 0.0,
                                   "method not in registry: " + name});
        return finish();
      }
      methods.push_back(*it);
    }
  }
  std::sort(methods.begin(), methods.end());
  std::vector<std::string> names;
  for (const auto& m : methods) names.push_back(m.canonical_name);

  // corpus
  if (request.stages.count("corpus")) {
    run_stage("corpus", [&] {
      const ingest::DiskPostStore store(config.store_dir);
      std::vector<detail::MethodOutcome> outcomes(methods.size());
      parallel_for(methods.size(), config.jobs, [&](size_t i) {
        const auto c = corpus::build_corpus(methods[i], store, config.select, resources.abbreviations);
        for (const auto& w : c.warnings) outcomes[i].warnings.push_back(names[i] + ": " + w);
        write_json(corpus_path(out, names[i]), corpus::to_json(c));
        outcomes[i].produced = !c.empty();
      });
      return std::to_string(merge(names, outcomes, "")) + " non-empty corpora";
    });
  }

  auto load_corpus = [&](size_t i) {
    return corpus::corpus_from_json(read_json(corpus_path(out, names[i])));
  };

  // summarize
  if (request.stages.count("summarize")) {
    if (request.algorithms.count(Algorithm::kTextRank)) {
      run_stage("summarize:textrank", [&] {
        std::vector<detail::MethodOutcome> outcomes(methods.size());
        parallel_for(methods.size(), config.jobs, [&](size_t i) {
          const auto t0 = Clock::now();
          const auto c = load_corpus(i);
          const auto path = summary_path(out, Algorithm::kTextRank, names[i]);
          fs::remove(path);
          try {
            write_json(path, to_json(textrank::extract_summary(c, config.textrank, resources)));
            outcomes[i].produced = true;
          } catch (const InsufficientCorpusError& e) {
            outcomes[i].warnings.push_back(names[i] + ": textrank skipped: " + e.what());
          }
          outcomes[i].seconds = detail::seconds_since(t0);
        });
        return std::to_string(merge(names, outcomes, "textrank")) + " summaries";
      });
    }
    if (request.algorithms.count(Algorithm::kAbstractive)) {
      run_stage("summarize:abstractive", [&] {
        abstractive::ModelClient client(config.endpoint, config.client);
        const auto health = client.health();
        auto per_request = config.client;
        per_request.probe_health = false;
        abstractive::ModelClient worker(config.endpoint, per_request);
        std::vector<detail::MethodOutcome> outcomes(methods.size());
        parallel_for(methods.size(), config.max_in_flight, [&](size_t i) {
          const auto t0 = Clock::now();
          const auto c = load_corpus(i);
          const auto path = summary_path(out, Algorithm::kAbstractive, names[i]);
          fs::remove(path);
          if (c.empty()) {
            outcomes[i].warnings.push_back(names[i] + ": abstractive skipped: empty corpus");
            return;
          }
          auto prepared = abstractive::prepare_input(c, config.abstractive.max_input_tokens,
                                                     config.tokens_per_word);
          for (const auto& w : prepared.warnings) outcomes[i].warnings.push_back(names[i] + ": " + w);
          auto req = config.abstractive;
          req.text = std::move(prepared.text);
          try {
            auto s = worker.summarize(names[i], req);
            s.params["model"] = health.model;
            s.params["sentences_used"] = prepared.sentences_used;
            write_json(path, to_json(s));
            outcomes[i].produced = true;
          } catch (const GenerationFailedError& e) {
            outcomes[i].warnings.push_back(names[i] + ": generation failed: " + e.what());
          }
          outcomes[i].seconds = detail::seconds_since(t0);
        });
        return std::to_string(merge(names, outcomes, "abstractive")) + " summaries";
      });
    }
  }

  // evaluate
  std::map<Algorithm, metrics::ScoreTable> tables;
  if (request.stages.count("evaluate")) {
    if (config.oracle_path.empty()) {
      skip_stage("evaluate", "no oracle configured");
    } else {
      run_stage("evaluate", [&] {
        const auto oracle = metrics::oracle_from_json(read_json(config.oracle_path));
        std::string detail;
        for (Algorithm a : request.algorithms) {
          const auto path = scores_path(out, a);
          fs::remove(path);
          std::vector<Summary> summaries;
          for (const auto& n : names) {
            const auto p = summary_path(out, a, n);
            if (fs::exists(p)) summaries.push_back(summary_from_json(read_json(p)));
          }
          if (summaries.empty()) continue;
          auto table = evaluate_summaries(summaries, oracle, std::string(to_string(a)),
                                          &manifest.warnings);
          write_json(path, metrics::to_json(table));
          detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(a)) + ": " +
                    std::to_string(table.rows.size()) + " scored";
          tables[a] = std::move(table);
        }
        return detail;
      });
    }
  } else {
    for (Algorithm a : request.algorithms) {
      const auto path = scores_path(out, a);
      if (fs::exists(path)) tables[a] = metrics::score_table_from_json(read_json(path));
    }
  }

  // compare
  if (request.stages.count("compare")) {
    const auto report_dir = out / "report";
    if (!tables.count(Algorithm::kAbstractive) || !tables.count(Algorithm::kTextRank)) {
      fs::remove_all(report_dir);
      skip_stage("compare", "needs score tables for both algorithms");
    } else {
      run_stage("compare", [&] {
        const auto rep = stats::compare_algorithms(tables[Algorithm::kAbstractive],
                                                   tables[Algorithm::kTextRank], config.compare);
        write_json(report_dir / "report.json", stats::to_json(rep));
        util::write_file((report_dir / "report.md").string(), stats::to_markdown(rep));
        return std::to_string(rep.methods.size()) + " shared methods";
      });
    }
  }
  return finish();
}

}  // namespace apisum::pipeline

#endif  // APISUM_PIPELINE_HPP_
