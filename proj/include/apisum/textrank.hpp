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

// Extractive summarization with TextRank.
//
// Sentences are vertices; two sentences are joined by an undirected edge
// weighted by their lexical overlap
//
//     sim(a, b) = |a ∩ b| / (ln|a| + ln|b|)
//
// (distinct tokens). Vertex scores come from the weighted PageRank
// recurrence
//
//     WS(i) = (1 - d) + d * sum_j  w(j,i) / sum_k w(j,k) * WS(j)
//
// iterated from WS = 1 until the largest per-vertex change drops below the
// tolerance.

#ifndef APISUM_TEXTRANK_HPP_
#define APISUM_TEXTRANK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "apisum/corpus.hpp"
#include "apisum/error.hpp"
#include "apisum/preprocess.hpp"
#include "apisum/summary.hpp"

namespace apisum::textrank {

struct TextRankConfig {
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
  int summary_k = 5;

  void validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw ArgumentError("damping must be in (0,1)");
    if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
    if (max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");
    if (summary_k < 1) throw ArgumentError("summary_k must be >= 1");
  }
};

template <typename Tokens>
double sentence_similarity_sets(const Tokens& a, const Tokens& b) {
  std::vector<std::string> sa(a.begin(), a.end());
  std::vector<std::string> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<std::string> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  const double denom = std::log(static_cast<double>(sa.size())) +
                       std::log(static_cast<double>(sb.size()));
  if (common.empty() || !(denom > 0.0)) return 0.0;
  return static_cast<double>(common.size()) / denom;
}

inline double sentence_similarity(const preprocess::TokenizedSentence& a,
                                  const preprocess::TokenizedSentence& b) {
  return sentence_similarity_sets(a.tokens, b.tokens);
}

/// Undirected weighted graph stored as sorted adjacency lists.
class SentenceGraph {
 public:
  struct Edge {
    size_t to;
    double weight;
  };

  explicit SentenceGraph(size_t n = 0) : adj_(n), strength_(n, 0.0) {}

  /// Builds a graph from a dense symmetric weight matrix (row-major).
  static SentenceGraph from_weights(size_t n, const std::vector<double>& w) {
    if (w.size() != n * n) throw ArgumentError("weight matrix must be n*n");
    SentenceGraph g(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (w[i * n + j] != w[j * n + i]) throw ArgumentError("weights must be symmetric");
        g.add_edge(i, j, w[i * n + j]);
      }
    }
    return g;
  }

  /// Weight-0 edges are not stored.
  void add_edge(size_t i, size_t j, double w) {
    if (i == j) throw ArgumentError("self edges are not allowed");
    if (i >= size() || j >= size()) throw ArgumentError("edge endpoint out of range");
    if (w < 0.0) throw ArgumentError("edge weights must be non-negative");
    if (w == 0.0) return;
    adj_[i].push_back({j, w});
    adj_[j].push_back({i, w});
    strength_[i] += w;
    strength_[j] += w;
    sorted_ = false;
  }

  size_t size() const { return adj_.size(); }
  const std::vector<Edge>& neighbours(size_t i) const {
    sort_once();
    return adj_[i];
  }
  double strength(size_t i) const { return strength_[i]; }

  double weight(size_t i, size_t j) const {
    for (const auto& e : neighbours(i)) {
      if (e.to == j) return e.weight;
    }
    return 0.0;
  }

 private:
  void sort_once() const {
    if (sorted_) return;
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(),
                [](const Edge& a, const Edge& b) { return a.to < b.to; });
    }
    sorted_ = true;
  }

  mutable std::vector<std::vector<Edge>> adj_;
  std::vector<double> strength_;
  mutable bool sorted_ = true;
};

/// Builds the similarity graph through an inverted index so that only
/// sentence pairs sharing a token are visited.
inline SentenceGraph build_graph(const std::vector<preprocess::TokenizedSentence>& nodes) {
  const size_t n = nodes.size();
  std::unordered_map<std::string, uint32_t> vocab;
  std::vector<std::vector<uint32_t>> sets(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& tok : nodes[i].tokens) {
      auto [it, _] = vocab.emplace(tok, static_cast<uint32_t>(vocab.size()));
      sets[i].push_back(it->second);
    }
    std::sort(sets[i].begin(), sets[i].end());
    sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
  }
  std::vector<std::vector<uint32_t>> postings(vocab.size());
  for (size_t i = 0; i < n; ++i) {
    for (uint32_t t : sets[i]) postings[t].push_back(static_cast<uint32_t>(i));
  }
  std::vector<double> log_len(n);
  for (size_t i = 0; i < n; ++i) {
    log_len[i] = sets[i].empty() ? 0.0 : std::log(static_cast<double>(sets[i].size()));
  }
  SentenceGraph g(n);
  std::vector<uint32_t> overlap(n, 0);
  std::vector<uint32_t> touched;
  for (size_t i = 0; i < n; ++i) {
    touched.clear();
    for (uint32_t t : sets[i]) {
      for (uint32_t j : postings[t]) {
        if (j <= i) continue;
        if (overlap[j]++ == 0) touched.push_back(j);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (uint32_t j : touched) {
      const double denom = log_len[i] + log_len[j];
      if (denom > 0.0) g.add_edge(i, j, overlap[j] / denom);
      overlap[j] = 0;
    }
  }
  return g;
}

struct RankResult {
  std::vector<double> scores;
  int iterations = 0;
  bool converged = false;
};

/// Jacobi iteration of the weighted PageRank recurrence. The summation
/// order is fixed (ascending neighbour index) so results are reproducible
/// bit for bit.
inline RankResult pagerank(const SentenceGraph& graph, const TextRankConfig& config) {
  config.validate();
  const size_t n = graph.size();
  if (n == 0) throw ArgumentError("pagerank needs at least one node");
  const double d = config.damping;
  RankResult r;
  r.scores.assign(n, 1.0);
  std::vector<double> next(n);
  for (int it = 1; it <= config.max_iterations; ++it) {
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& e : graph.neighbours(i)) {
        acc += e.weight / graph.strength(e.to) * r.scores[e.to];
      }
      next[i] = (1.0 - d) + d * acc;
      delta = std::max(delta, std::abs(next[i] - r.scores[i]));
    }
    r.scores.swap(next);
    r.iterations = it;
    if (delta < config.tolerance) {
      r.converged = true;
      break;
    }
  }
  return r;
}

/// Ranks the corpus sentences and returns the top k in corpus order.
/// Duplicate sentences (equal token sequences) and sentences without
/// content tokens are not ranked.
inline Summary extract_summary(const corpus::MethodCorpus& corpus, const TextRankConfig& config,
                               const preprocess::TextResources& resources) {
  config.validate();
  std::vector<preprocess::TokenizedSentence> tokenized;
  tokenized.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) {
    tokenized.push_back(preprocess::normalize_tokens(s.text, resources));
  }
  std::vector<size_t> positions;
  for (size_t i : preprocess::dedup_indices(tokenized)) {
    if (!tokenized[i].tokens.empty()) positions.push_back(i);
  }
  if (positions.empty()) {
    throw InsufficientCorpusError("insufficient corpus for " +
                                  corpus.method.canonical_name);
  }
  std::vector<preprocess::TokenizedSentence> nodes;
  nodes.reserve(positions.size());
  for (size_t i : positions) nodes.push_back(tokenized[i]);

  const auto graph = build_graph(nodes);
  const auto rank = pagerank(graph, config);

  // Scores are compared after rounding to 1e-9 so that vertices tied by
  // symmetry fall back to corpus position even if their sums differ in the
  // last bit.
  auto key = [&](size_t node) { return std::llround(rank.scores[node] * 1e9); };
  std::vector<size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return key(a) > key(b); });
  const size_t k = std::min(order.size(), static_cast<size_t>(config.summary_k));
  std::vector<size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());

  Summary summary;
  summary.method = corpus.method.canonical_name;
  summary.algorithm = Algorithm::kTextRank;
  std::vector<bool> selected(nodes.size(), false);
  for (size_t c : chosen) {
    selected[c] = true;
    if (!summary.text.empty()) summary.text.push_back(' ');
    summary.text += corpus.sentences[positions[c]].text;
  }
  for (size_t node = 0; node < nodes.size(); ++node) {
    summary.sentence_scores.push_back(
        {corpus.sentences[positions[node]].text, rank.scores[node], selected[node]});
  }
  summary.params = {{"damping", config.damping},
                    {"tolerance", config.tolerance},
                    {"max_iterations", config.max_iterations},
                    {"summary_k", config.summary_k},
                    {"iterations", rank.iterations},
                    {"converged", rank.converged},
                    {"corpus_sentences", corpus.sentences.size()},
                    {"ranked_sentences", nodes.size()}};
  return summary;
}

}  // namespace apisum::textrank

#endif  // APISUM_TEXTRANK_HPP_
