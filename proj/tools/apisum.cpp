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

// apisum command line: ingest, corpus, summarize, evaluate, compare, run,
// fixtures. Exit codes: 0 success, 1 stage failure, 2 bad arguments.

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apisum/apisum.hpp"

namespace fs = std::filesystem;
using namespace apisum;

namespace {

constexpr int kOk = 0;
constexpr int kStageFailure = 1;
constexpr int kBadArguments = 2;

#ifndef APISUM_DATA_DIR
#define APISUM_DATA_DIR "data"
#endif

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = util::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

int cmd_ingest(const std::string& dump, const std::string& tag, const std::string& out,
               bool abort_on_error) {
  auto report = ingest::ingest_dump(dump, tag, out,
                                    abort_on_error ? ingest::RowErrorPolicy::kAbort
                                                   : ingest::RowErrorPolicy::kSkip);
  const auto& s = report.stats;
  std::cout << "questions " << s.question_count << "\nanswers " << s.answer_count << "\ntotal "
            << s.total_posts << "\nmean answer score ";
  if (auto m = s.mean_answer_score()) {
    std::printf("%.2f\n", *m);
  } else {
    std::cout << "n/a\n";
  }
  std::cout << "rows malformed " << report.parse.rows_malformed << ", out of domain "
            << report.parse.rows_out_of_domain << ", orphan answers "
            << report.filter.orphan_answers << "\n";
  return kOk;
}

int cmd_corpus(const std::string& store_dir, const std::string& registry_path,
               const std::string& method, int threshold, bool answers_only,
               const std::string& data_dir, const std::string& out) {
  const ingest::DiskPostStore store(store_dir);
  const auto registry = corpus::load_registry(registry_path);
  const auto abbrev = preprocess::Abbreviations::load(fs::path(data_dir) / "abbreviations.txt");
  corpus::SelectOptions opts{threshold, !answers_only};
  std::vector<corpus::MethodId> methods;
  if (method == "all") {
    methods = registry;
  } else {
    for (const auto& name : split_list(method)) {
      auto it = std::find_if(registry.begin(), registry.end(),
                             [&](const corpus::MethodId& m) { return m.canonical_name == name; });
      if (it == registry.end()) throw ArgumentError("method not in registry: " + name);
      methods.push_back(*it);
    }
  }
  fs::create_directories(out);
  for (const auto& m : methods) {
    const auto c = corpus::build_corpus(m, store, opts, abbrev);
    pipeline::write_json(fs::path(out) / (m.canonical_name + ".json"), corpus::to_json(c));
    std::cout << m.canonical_name << ": " << c.sentences.size() << " sentences from "
              << c.contributing_posts << "/" << c.post_count << " posts\n";
    for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
  }
  return kOk;
}

int cmd_summarize(const std::string& algo, const std::string& corpus_file, int k,
                  const std::string& endpoint, int max_in, int max_out, int beams,
                  const std::string& data_dir, const std::string& out) {
  const auto c = corpus::corpus_from_json(pipeline::read_json(corpus_file));
  Summary s;
  if (algorithm_from_string(algo) == Algorithm::kTextRank) {
    textrank::TextRankConfig cfg;
    cfg.summary_k = k;
    s = textrank::extract_summary(c, cfg, preprocess::TextResources::load(data_dir));
  } else {
    auto prepared = abstractive::prepare_input(c, max_in);
    for (const auto& w : prepared.warnings) std::cerr << "warning: " << w << "\n";
    abstractive::SummarizationRequest req{prepared.text, max_in, max_out, beams};
    s = abstractive::summarize_remote(c.method.canonical_name, req, endpoint);
  }
  pipeline::write_json(out, to_json(s));
  std::cout << s.text << "\n";
  return kOk;
}

int cmd_evaluate(const std::string& summaries_dir, const std::string& oracle_path,
                 const std::string& algo_filter, const std::string& out) {
  auto summaries = pipeline::load_summaries(summaries_dir);
  if (!algo_filter.empty()) {
    const auto want = algorithm_from_string(algo_filter);
    std::erase_if(summaries, [&](const Summary& s) { return s.algorithm != want; });
  }
  if (summaries.empty()) throw ArgumentError("no summaries found in " + summaries_dir);
  std::set<Algorithm> algos;
  for (const auto& s : summaries) algos.insert(s.algorithm);
  if (algos.size() > 1) {
    throw ArgumentError("summaries mix algorithms; pass --algo to pick one");
  }
  const auto oracle = metrics::oracle_from_json(pipeline::read_json(oracle_path));
  std::vector<std::string> warnings;
  const auto table = pipeline::evaluate_summaries(summaries, oracle,
                                                  std::string(to_string(*algos.begin())), &warnings);
  pipeline::write_json(out, metrics::to_json(table));
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& [m, s] : table.rows) {
    std::printf("%-36s P=%.4f R=%.4f F=%.4f\n", m.c_str(), s.precision, s.recall, s.f_measure);
  }
  return kOk;
}

int cmd_compare(const std::string& a, const std::string& b, double alpha, const std::string& tails,
                const std::string& out) {
  stats::ComparisonConfig cfg;
  cfg.alpha = alpha;
  cfg.decision_tails = tails == "one" ? stats::Tails::kOne : stats::Tails::kTwo;
  const auto ta = metrics::score_table_from_json(pipeline::read_json(a));
  const auto tb = metrics::score_table_from_json(pipeline::read_json(b));
  const auto rep = stats::compare_algorithms(ta, tb, cfg);
  fs::create_directories(out);
  pipeline::write_json(fs::path(out) / "report.json", stats::to_json(rep));
  const auto md = stats::to_markdown(rep);
  util::write_file((fs::path(out) / "report.md").string(), md);
  std::cout << md;
  return kOk;
}

int cmd_fixtures(const std::string& out) {
  fs::create_directories(out);
  pipeline::write_json(fs::path(out) / "scores_bart.json", metrics::to_json(fixtures::bart_table()));
  pipeline::write_json(fs::path(out) / "scores_textrank.json",
                       metrics::to_json(fixtures::textrank_table()));
  std::cout << "wrote " << (fs::path(out) / "scores_bart.json").string() << " and "
            << (fs::path(out) / "scores_textrank.json").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apisum: API method summaries from StackOverflow posts"};
  app.require_subcommand(1);
  std::string data_dir = APISUM_DATA_DIR;
  app.add_option("--data-dir", data_dir, "Directory with stopwords.txt, lemmas.tsv, abbreviations.txt");

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a Posts.xml dump into a post store");
  std::string dump, tag = "android", store_out;
  bool abort_on_error = false;
  ingest_cmd->add_option("--dump", dump, "Posts.xml path")->required();
  ingest_cmd->add_option("--tag", tag, "Question tag to keep")->capture_default_str();
  ingest_cmd->add_option("--out", store_out, "Store directory")->required();
  ingest_cmd->add_flag("--abort-on-error", abort_on_error, "Abort on the first malformed row");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Build per-method corpora");
  std::string store_dir, registry = std::string(APISUM_DATA_DIR) + "/registry.json";
  std::string method = "all", corpus_out;
  int threshold = 3;
  bool answers_only = false;
  corpus_cmd->add_option("--store", store_dir)->required();
  corpus_cmd->add_option("--registry", registry)->capture_default_str();
  corpus_cmd->add_option("--method", method, "Method name(s), comma separated, or 'all'")
      ->capture_default_str();
  corpus_cmd->add_option("--threshold", threshold)->capture_default_str();
  corpus_cmd->add_flag("--answers-only", answers_only, "Do not include parent question bodies");
  corpus_cmd->add_option("--out", corpus_out)->required();

  // summarize
  auto* sum_cmd = app.add_subcommand("summarize", "Summarize one corpus file");
  std::string algo, corpus_file, endpoint = "http://127.0.0.1:8000", sum_out;
  int k = 5, max_in = 1024, max_out = 50, beams = 4;
  sum_cmd->add_option("--algo", algo)->required()->check(CLI::IsMember({"textrank", "abstractive"}));
  sum_cmd->add_option("--corpus", corpus_file)->required();
  sum_cmd->add_option("--k", k, "TextRank summary length in sentences")->capture_default_str();
  sum_cmd->add_option("--endpoint", endpoint)->capture_default_str();
  sum_cmd->add_option("--max-input-tokens", max_in)->capture_default_str();
  sum_cmd->add_option("--max-output-tokens", max_out)->capture_default_str();
  sum_cmd->add_option("--num-beams", beams)->capture_default_str();
  sum_cmd->add_option("--out", sum_out)->required();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score summaries against an oracle");
  std::string summaries_dir, oracle, eval_algo, scores_out;
  eval_cmd->add_option("--summaries", summaries_dir)->required();
  eval_cmd->add_option("--oracle", oracle)->required();
  eval_cmd->add_option("--algo", eval_algo, "Only score this algorithm's summaries");
  eval_cmd->add_option("--out", scores_out)->required();

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Statistically compare two score files");
  std::string cmp_a, cmp_b, cmp_out, tails = "two";
  double alpha = 0.05;
  cmp_cmd->add_option("--a", cmp_a)->required();
  cmp_cmd->add_option("--b", cmp_b)->required();
  cmp_cmd->add_option("--alpha", alpha)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmp_cmd->add_option("--tails", tails, "Tails used for the H0 decision")
      ->capture_default_str()
      ->check(CLI::IsMember({"one", "two"}));
  cmp_cmd->add_option("--out", cmp_out)->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline");
  std::string config_file, run_methods = "all", algos = "textrank", stages;
  std::vector<std::string> overrides;
  pipeline::PipelineConfig cfg;
  std::string run_store, run_registry, run_oracle, run_out, run_endpoint;
  int jobs = 0;
  run_cmd->add_option("--config", config_file, "key = value config file");
  run_cmd->add_option("--store", run_store);
  run_cmd->add_option("--registry", run_registry);
  run_cmd->add_option("--oracle", run_oracle);
  run_cmd->add_option("--out", run_out);
  run_cmd->add_option("--endpoint", run_endpoint);
  run_cmd->add_option("--jobs", jobs);
  run_cmd->add_option("--methods", run_methods, "Comma separated or 'all'")->capture_default_str();
  run_cmd->add_option("--algos", algos, "textrank,abstractive")->capture_default_str();
  run_cmd->add_option("--stages", stages, "Subset of corpus,summarize,evaluate,compare");
  run_cmd->add_option("--set", overrides, "Extra key=value settings (repeatable)");

  // fixtures
  auto* fix_cmd = app.add_subcommand("fixtures", "Write the bundled reference score tables as score files");
  std::string fix_out;
  fix_cmd->add_option("--out", fix_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kBadArguments;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(dump, tag, store_out, abort_on_error);
    if (*corpus_cmd) {
      return cmd_corpus(store_dir, registry, method, threshold, answers_only, data_dir, corpus_out);
    }
    if (*sum_cmd) {
      return cmd_summarize(algo, corpus_file, k, endpoint, max_in, max_out, beams, data_dir, sum_out);
    }
    if (*eval_cmd) return cmd_evaluate(summaries_dir, oracle, eval_algo, scores_out);
    if (*cmp_cmd) return cmd_compare(cmp_a, cmp_b, alpha, tails, cmp_out);
    if (*fix_cmd) return cmd_fixtures(fix_out);
    if (*run_cmd) {
      cfg.data_dir = data_dir;
      cfg.registry_path = std::string(APISUM_DATA_DIR) + "/registry.json";
      if (!config_file.empty()) pipeline::load_config_file(config_file, cfg);
      // Flags win over the config file.
      if (!run_store.empty()) cfg.store_dir = run_store;
      if (!run_registry.empty()) cfg.registry_path = run_registry;
      if (!run_oracle.empty()) cfg.oracle_path = run_oracle;
      if (!run_out.empty()) cfg.out_dir = run_out;
      if (!run_endpoint.empty()) cfg.endpoint = run_endpoint;
      if (jobs > 0) cfg.jobs = jobs;
      for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ArgumentError("--set expects key=value, got " + kv);
        pipeline::apply_setting(cfg, std::string(util::trim(kv.substr(0, eq))),
                                std::string(util::trim(kv.substr(eq + 1))));
      }
      if (cfg.store_dir.empty() || cfg.out_dir.empty()) {
        throw ArgumentError("run needs a store and an output directory");
      }
      pipeline::RunRequest req;
      if (run_methods != "all") req.methods = split_list(run_methods);
      req.algorithms.clear();
      for (const auto& a : split_list(algos)) req.algorithms.insert(algorithm_from_string(a));
      if (!stages.empty()) {
        req.stages.clear();
        for (const auto& s : split_list(stages)) req.stages.insert(s);
      }
      const auto manifest = pipeline::run_pipeline(cfg, req);
      for (const auto& s : manifest.stages) {
        std::printf("%-24s %-8s %8.3fs  %s\n", s.name.c_str(),
                    std::string(pipeline::to_string(s.status)).c_str(), s.seconds, s.detail.c_str());
      }
      for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
      return manifest.failed() ? kStageFailure : kOk;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStageFailure;
  }
  return kBadArguments;
}
