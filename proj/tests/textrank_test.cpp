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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "apisum/textrank.hpp"
#include "test_util.hpp"

namespace apisum::textrank {
namespace {

using preprocess::TokenizedSentence;

const preprocess::TextResources& resources() {
  static const auto r = preprocess::TextResources::load(apisum::testing::data_dir());
  return r;
}

TokenizedSentence ts(std::vector<std::string> tokens) { return {"", std::move(tokens)}; }

corpus::MethodCorpus make_corpus(const std::vector<std::string>& texts) {
  corpus::MethodCorpus c;
  c.method = corpus::MethodId("activity.finish");
  int64_t id = 1;
  for (const auto& t : texts) c.sentences.push_back({t, id++, corpus::Criterion::kMain});
  return c;
}

SentenceGraph random_graph(std::mt19937_64& rng, size_t n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (u(rng) < density) w[i * n + j] = w[j * n + i] = u(rng) * 3.0;
    }
  }
  return SentenceGraph::from_weights(n, w);
}

TEST(Similarity, Examples) {
  EXPECT_NEAR(sentence_similarity(ts({"wonderful", "day", "sunshine"}),
                                  ts({"sunshine", "brings", "wonderful", "mood"})),
              2.0 / (std::log(3.0) + std::log(4.0)), 1e-12);
  EXPECT_NEAR(sentence_similarity(ts({"wonderful", "day", "sunshine"}),
                                  ts({"sunshine", "brings", "wonderful", "mood"})),
              0.8049, 1e-4);
  EXPECT_EQ(sentence_similarity(ts({"a", "b"}), ts({"c", "d"})), 0.0);
  EXPECT_NEAR(sentence_similarity(ts({"a", "b", "c", "d"}), ts({"a", "b", "c", "d"})),
              4.0 / (2.0 * std::log(4.0)), 1e-12);
  EXPECT_NEAR(sentence_similarity(ts({"a", "b", "c", "d"}), ts({"a", "b", "c", "d"})), 1.4427,
              1e-4);
}

TEST(Similarity, DegenerateDenominatorIsZero) {
  EXPECT_EQ(sentence_similarity(ts({"a"}), ts({"a"})), 0.0);
  EXPECT_EQ(sentence_similarity(ts({"a", "a"}), ts({"a"})), 0.0);
  EXPECT_EQ(sentence_similarity(ts({}), ts({"a", "b"})), 0.0);
}

TEST(Similarity, PropertySymmetricNonNegative) {
  auto rng = apisum::testing::rng(41);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<std::string> a, b;
    for (int i = rng() % 8; i > 0; --i) a.push_back(std::string(1, 'a' + rng() % 6));
    for (int i = rng() % 8; i > 0; --i) b.push_back(std::string(1, 'a' + rng() % 6));
    const double ab = sentence_similarity(ts(a), ts(b));
    EXPECT_GE(ab, 0.0);
    EXPECT_EQ(ab, sentence_similarity(ts(b), ts(a)));
  }
}

TEST(SentenceGraph, Invariants) {
  SentenceGraph g(3);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 0.0);
  EXPECT_EQ(g.weight(0, 1), 2.0);
  EXPECT_EQ(g.weight(1, 0), 2.0);
  EXPECT_EQ(g.weight(1, 2), 0.0);
  EXPECT_TRUE(g.neighbours(2).empty());
  EXPECT_THROW(g.add_edge(1, 1, 1.0), ArgumentError);
  EXPECT_THROW(g.add_edge(0, 2, -1.0), ArgumentError);
  EXPECT_THROW(g.add_edge(0, 5, 1.0), ArgumentError);
  EXPECT_THROW(SentenceGraph::from_weights(2, {0, 1, 2, 0}), ArgumentError);
}

TEST(BuildGraph, MatchesPairwiseSimilarity) {
  auto rng = apisum::testing::rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<TokenizedSentence> nodes;
    const size_t n = 1 + rng() % 10;
    for (size_t i = 0; i < n; ++i) {
      std::vector<std::string> t;
      for (int k = rng() % 6; k > 0; --k) t.push_back(std::string(1, 'a' + rng() % 8));
      nodes.push_back(ts(t));
    }
    const auto g = build_graph(nodes);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const double expect = i == j ? 0.0 : sentence_similarity(nodes[i], nodes[j]);
        EXPECT_NEAR(g.weight(i, j), expect, 1e-12);
      }
    }
  }
}

TEST(PageRank, ChainFixedPoint) {
  SentenceGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  auto r = pagerank(g, {});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.scores[0], 0.7703, 1e-3);
  EXPECT_NEAR(r.scores[1], 1.4595, 1e-3);
  EXPECT_NEAR(r.scores[2], 0.7703, 1e-3);
  // Exact solution of A = .15 + .425 B, B = .15 + 1.7 A.
  EXPECT_NEAR(r.scores[0], 0.21375 / 0.2775, 1e-5);
}

TEST(PageRank, SingleNodeAndIsolated) {
  auto r = pagerank(SentenceGraph(1), {});
  EXPECT_NEAR(r.scores[0], 0.15, 1e-12);
  SentenceGraph g(3);
  g.add_edge(0, 1, 1.0);
  r = pagerank(g, {});
  EXPECT_NEAR(r.scores[2], 0.15, 1e-12);
  EXPECT_THROW(pagerank(SentenceGraph(0), {}), ArgumentError);
}

TEST(PageRank, FullyConnectedUniformIsEqual) {
  for (size_t n : {2u, 5u, 17u}) {
    std::vector<double> w(n * n, 1.0);
    for (size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
    auto r = pagerank(SentenceGraph::from_weights(n, w), {});
    for (double s : r.scores) EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(PageRank, NonConvergenceIsReported) {
  SentenceGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  TextRankConfig cfg;
  cfg.max_iterations = 2;
  auto r = pagerank(g, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

TEST(PageRank, ConfigValidation) {
  TextRankConfig cfg;
  cfg.damping = 1.0;
  EXPECT_THROW(pagerank(SentenceGraph(1), cfg), ArgumentError);
  cfg = {};
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.summary_k = 0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(PageRank, PropertyScaleInvariant) {
  auto rng = apisum::testing::rng(47);
  for (int rep = 0; rep < 100; ++rep) {
    const size_t n = 2 + rng() % 12;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (u(rng) < 0.5) w[i * n + j] = w[j * n + i] = u(rng);
      }
    }
    const double c = std::pow(10.0, std::uniform_real_distribution<double>(-3, 3)(rng));
    std::vector<double> scaled(w);
    for (auto& x : scaled) x *= c;
    TextRankConfig cfg;
    cfg.tolerance = 1e-13;
    cfg.max_iterations = 1000;
    auto a = pagerank(SentenceGraph::from_weights(n, w), cfg);
    auto b = pagerank(SentenceGraph::from_weights(n, scaled), cfg);
    for (size_t i = 0; i < n; ++i) EXPECT_NEAR(a.scores[i], b.scores[i], 1e-9);
  }
}

TEST(PageRank, PropertyPermutationInvariant) {
  auto rng = apisum::testing::rng(53);
  for (int rep = 0; rep < 100; ++rep) {
    const size_t n = 2 + rng() % 12;
    auto g = random_graph(rng, n, 0.4);
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SentenceGraph h(n);
    for (size_t i = 0; i < n; ++i) {
      for (const auto& e : g.neighbours(i)) {
        if (e.to > i) h.add_edge(perm[i], perm[e.to], e.weight);
      }
    }
    TextRankConfig cfg;
    cfg.tolerance = 1e-13;
    cfg.max_iterations = 1000;
    auto a = pagerank(g, cfg);
    auto b = pagerank(h, cfg);
    for (size_t i = 0; i < n; ++i) EXPECT_NEAR(a.scores[i], b.scores[perm[i]], 1e-9);
  }
}

TEST(PageRank, PropertyFloorAndFinite) {
  auto rng = apisum::testing::rng(59);
  for (int rep = 0; rep < 100; ++rep) {
    auto g = random_graph(rng, 1 + rng() % 15, 0.3);
    auto r = pagerank(g, {});
    for (double s : r.scores) {
      EXPECT_TRUE(std::isfinite(s));
      EXPECT_GE(s, 0.15 - 1e-12);
    }
  }
}

TEST(ExtractSummary, KLargerThanCorpusReturnsAllInOrder) {
  auto c = make_corpus({"Call finish to close the screen.", "The screen closes after finish.",
                        "Return right after the call."});
  auto s = extract_summary(c, {}, resources());
  EXPECT_EQ(s.text,
            "Call finish to close the screen. The screen closes after finish. Return right "
            "after the call.");
  EXPECT_EQ(s.algorithm, Algorithm::kTextRank);
  EXPECT_EQ(s.method, "activity.finish");
  EXPECT_EQ(s.sentence_scores.size(), 3u);
  EXPECT_EQ(s.params["summary_k"], 5);
  EXPECT_FALSE(s.generated_at.has_value());
}

TEST(ExtractSummary, HubRanksFirst) {
  auto c = make_corpus({"Apple banana.", "Cherry grape.", "Lemon melon.",
                        "Apple cherry lemon orange."});
  TextRankConfig cfg;
  cfg.summary_k = 1;
  auto s = extract_summary(c, cfg, resources());
  EXPECT_EQ(s.text, "Apple cherry lemon orange.");
}

TEST(ExtractSummary, TieGoesToEarlierPosition) {
  // Positions 2 and 7 form an isolated pair with equal scores.
  auto c = make_corpus({"Alpha one.", "Kiwi mango.", "Bravo two.", "Charlie three.", "Delta four.",
                        "Echo five.", "Mango kiwi papaya.", "Foxtrot six."});
  TextRankConfig cfg;
  cfg.summary_k = 1;
  auto s = extract_summary(c, cfg, resources());
  EXPECT_EQ(s.text, "Kiwi mango.");
}

TEST(ExtractSummary, DuplicatesAndEmptySentencesNotRanked) {
  auto c = make_corpus({"Call finish now.", "call finish, now!", "The a an.", "Stop the timer."});
  auto s = extract_summary(c, {}, resources());
  EXPECT_EQ(s.sentence_scores.size(), 2u);
  EXPECT_EQ(s.text, "Call finish now. Stop the timer.");
}

TEST(ExtractSummary, InsufficientCorpus) {
  EXPECT_THROW(extract_summary(make_corpus({}), {}, resources()), InsufficientCorpusError);
  EXPECT_THROW(extract_summary(make_corpus({"The a.", "42."}), {}, resources()),
               InsufficientCorpusError);
}

// The summary is an order-preserving subsequence of the corpus.
TEST(ExtractSummary, PropertySubsequence) {
  auto rng = apisum::testing::rng(61);
  const std::vector<std::string> words = {"activity", "finish", "close", "screen", "stack",
                                          "return", "call", "view", "thread", "state"};
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::string> texts;
    const int n = 1 + rng() % 12;
    for (int i = 0; i < n; ++i) {
      std::string t = "S" + std::to_string(i);
      for (int k = 1 + rng() % 5; k > 0; --k) t += " " + words[rng() % words.size()];
      texts.push_back(t + ".");
    }
    TextRankConfig cfg;
    cfg.summary_k = 1 + rng() % 6;
    auto s = extract_summary(make_corpus(texts), cfg, resources());
    size_t pos = 0;
    size_t picked = 0;
    for (const auto& t : texts) {
      if (pos < s.text.size() && s.text.compare(pos, t.size(), t) == 0) {
        pos += t.size() + 1;
        ++picked;
      }
    }
    EXPECT_GE(pos, s.text.size());
    EXPECT_EQ(picked, std::min<size_t>(cfg.summary_k, s.sentence_scores.size()));
  }
}

TEST(ExtractSummary, Deterministic) {
  auto c = make_corpus({"Call finish to close the screen.", "The screen closes after finish.",
                        "Return right after the call.", "Finish does not stop the code.",
                        "The back stack resumes.", "Close the activity with finish."});
  TextRankConfig cfg;
  cfg.summary_k = 2;
  EXPECT_EQ(to_json(extract_summary(c, cfg, resources())).dump(),
            to_json(extract_summary(c, cfg, resources())).dump());
}

}  // namespace
}  // namespace apisum::textrank
