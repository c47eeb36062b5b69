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
#include <random>

#include <gtest/gtest.h>

#include "apisum/fixtures.hpp"
#include "apisum/metrics.hpp"
#include "test_util.hpp"

namespace apisum::metrics {
namespace {

Tokens toks(std::string_view s) { return util::word_tokens(s); }

Tokens random_tokens(std::mt19937_64& rng, size_t max_len, int vocab) {
  Tokens t;
  const size_t len = rng() % (max_len + 1);
  for (size_t i = 0; i < len; ++i) t.push_back(std::string(1, static_cast<char>('a' + rng() % vocab)));
  return t;
}

// For every candidate n-gram position, count it once if some unused
// reference position holds the same n-gram. Quadratic, no maps.
size_t brute_force_matches(const Tokens& cand, const Tokens& ref, size_t n) {
  if (cand.size() < n || ref.size() < n) return 0;
  std::vector<bool> used(ref.size() - n + 1, false);
  size_t match = 0;
  for (size_t i = 0; i + n <= cand.size(); ++i) {
    for (size_t j = 0; j + n <= ref.size(); ++j) {
      if (used[j]) continue;
      bool eq = true;
      for (size_t k = 0; k < n && eq; ++k) eq = cand[i + k] == ref[j + k];
      if (eq) {
        used[j] = true;
        ++match;
        break;
      }
    }
  }
  return match;
}

TEST(NGramCounts, Examples) {
  auto c = ngram_counts({"a", "b", "a", "b"}, 2);
  EXPECT_EQ(c.counts.size(), 2u);
  EXPECT_EQ(c.count({"a", "b"}), 2u);
  EXPECT_EQ(c.count({"b", "a"}), 1u);
  EXPECT_TRUE(ngram_counts({"a"}, 2).counts.empty());
  auto d = ngram_counts(toks("the cat sat on the mat"), 2);
  EXPECT_EQ(d.counts.size(), 5u);
  EXPECT_EQ(d.total(), 5u);
  for (const auto& [_, n] : d.counts) EXPECT_EQ(n, 1u);
  EXPECT_THROW(ngram_counts({"a"}, 0), ArgumentError);
}

TEST(NGramCounts, PropertyTotal) {
  auto rng = apisum::testing::rng(67);
  for (int rep = 0; rep < 300; ++rep) {
    auto t = random_tokens(rng, 12, 3);
    const int n = 1 + rng() % 4;
    const size_t expect = t.size() >= static_cast<size_t>(n) ? t.size() - n + 1 : 0;
    EXPECT_EQ(ngram_counts(t, n).total(), expect);
  }
}

TEST(Rouge, Examples) {
  EXPECT_DOUBLE_EQ(rouge_n(toks("the cat sat"), toks("the cat sat")).recall, 1.0);
  EXPECT_DOUBLE_EQ(rouge_n(toks("the cat on the mat"), toks("the cat sat on the mat")).recall, 0.6);
  EXPECT_DOUBLE_EQ(rouge_n(toks("the cat on the mat"), toks("the cat sat on the mat")).precision,
                   0.75);
  EXPECT_DOUBLE_EQ(rouge_n(toks("dogs bark loudly"), toks("the cat sat")).recall, 0.0);
  EXPECT_DOUBLE_EQ(rouge_n(toks("x"), toks("the cat sat")).precision, 0.0);
  EXPECT_THROW(rouge_n(toks("a b"), toks("a")), ArgumentError);
  EXPECT_THROW(rouge_n(toks("a b"), {}), ArgumentError);
}

TEST(Rouge, PropertyMatchesBruteForce) {
  auto rng = apisum::testing::rng(71);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto cand = random_tokens(rng, 12, 4);
    auto ref = random_tokens(rng, 12, 4);
    const int n = 1 + rng() % 3;
    if (ref.size() < static_cast<size_t>(n)) {
      EXPECT_THROW(rouge_n(cand, ref, n), ArgumentError);
      continue;
    }
    const auto s = rouge_n(cand, ref, n);
    const size_t m = brute_force_matches(cand, ref, n);
    EXPECT_EQ(s.recall, static_cast<double>(m) / static_cast<double>(ref.size() - n + 1));
    const size_t cn = cand.size() >= static_cast<size_t>(n) ? cand.size() - n + 1 : 0;
    EXPECT_EQ(s.precision, cn ? static_cast<double>(m) / static_cast<double>(cn) : 0.0);
    EXPECT_GE(s.recall, 0.0);
    EXPECT_LE(s.recall, 1.0);
    EXPECT_GE(s.f, 0.0);
    EXPECT_LE(s.f, 1.0);
    EXPECT_DOUBLE_EQ(rouge_n(ref, ref, n).recall, 1.0);
  }
}

TEST(Bleu, IdenticalIsOne) {
  EXPECT_DOUBLE_EQ(bleu(toks("the cat sat on the mat"), {toks("the cat sat on the mat")}), 1.0);
}

TEST(Bleu, ClippedCounts) {
  BleuOptions o{1, Smoothing::kNone};
  EXPECT_DOUBLE_EQ(bleu({"the", "the", "the"}, {{"the", "cat"}}, o), 1.0 / 3.0);
}

TEST(Bleu, BrevityPenalty) {
  BleuOptions o{1, Smoothing::kNone};
  EXPECT_DOUBLE_EQ(bleu({"cat"}, {{"cat", "sat"}}, o), std::exp(-1.0));
  EXPECT_NEAR(bleu({"cat"}, {{"cat", "sat"}}, o), 0.3679, 1e-4);
  // Equal length: BP = exp(0) = 1.
  EXPECT_DOUBLE_EQ(bleu({"cat", "sat"}, {{"cat", "sat"}}, o), 1.0);
}

TEST(Bleu, ClosestReferenceLength) {
  BleuOptions o{1, Smoothing::kNone};
  // c = 2; references of length 3 and 1 are equally close, the shorter wins.
  EXPECT_DOUBLE_EQ(bleu({"a", "b"}, {{"a", "b", "c"}, {"a"}}, o), 1.0);
  // Only the length-3 reference: BP = exp(1 - 3/2).
  EXPECT_DOUBLE_EQ(bleu({"a", "b"}, {{"a", "b", "c"}}, o), std::exp(-0.5));
}

TEST(Bleu, Smoothing) {
  // No matching bigram: unsmoothed is 0, smoothed is tiny but positive.
  const Tokens cand = {"a", "b"};
  const std::vector<Tokens> refs = {{"b", "a"}};
  EXPECT_EQ(bleu(cand, refs, {2, Smoothing::kNone}), 0.0);
  const double s = bleu(cand, refs, {2, Smoothing::kAddEpsilon});
  EXPECT_NEAR(s, std::sqrt(1e-9), 1e-15);
  // A length-1 candidate has no bigrams at all.
  EXPECT_EQ(bleu({"a"}, {{"a"}}, {2, Smoothing::kNone}), 0.0);
}

TEST(Bleu, Errors) {
  EXPECT_EQ(bleu({}, {{"a"}}), 0.0);
  EXPECT_THROW(bleu({"a"}, {{"a"}}, {0}), ArgumentError);
  EXPECT_THROW(bleu({"a"}, {}), ArgumentError);
}

TEST(Bleu, PropertyInUnitInterval) {
  auto rng = apisum::testing::rng(73);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto cand = random_tokens(rng, 12, 4);
    std::vector<Tokens> refs;
    for (int k = 1 + rng() % 3; k > 0; --k) refs.push_back(random_tokens(rng, 12, 4));
    for (auto sm : {Smoothing::kNone, Smoothing::kAddEpsilon}) {
      const double b = bleu(cand, refs, {static_cast<int>(1 + rng() % 4), sm});
      EXPECT_GE(b, 0.0);
      EXPECT_LE(b, 1.0);
    }
  }
}

TEST(FMeasure, Examples) {
  EXPECT_NEAR(f_measure(0.9393, 0.7948), 0.86103, 5e-6);
  EXPECT_DOUBLE_EQ(f_measure(0.5, 0.5), 0.5);
  EXPECT_NEAR(f_measure(0.3818, 0.5908), 0.46384, 5e-6);
  EXPECT_EQ(f_measure(0.0, 0.0), 0.0);
}

TEST(FMeasure, PropertySymmetricBoundedMonotone) {
  auto rng = apisum::testing::rng(79);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const double p = u(rng), r = u(rng), dp = u(rng) * (1 - p);
    EXPECT_DOUBLE_EQ(f_measure(p, r), f_measure(r, p));
    EXPECT_NEAR(f_measure(p, p), p, 1e-15);
    EXPECT_GE(f_measure(p, r), std::min(p, r) - 1e-15);
    EXPECT_LE(f_measure(p, r), std::max(p, r) + 1e-15);
    EXPECT_GE(f_measure(p + dp, r), f_measure(p, r) - 1e-15);
  }
}

TEST(FMeasure, PrintedTablesReproduced) {
  for (const auto& row : fixtures::bart_rows()) {
    EXPECT_NEAR(f_measure(row.precision, row.recall), row.f_measure, 5e-4) << row.method;
  }
  size_t mismatches = 0;
  for (const auto& row : fixtures::textrank_rows()) {
    if (std::abs(f_measure(row.precision, row.recall) - row.f_measure) > 5e-4) {
      ++mismatches;
      EXPECT_STREQ(row.method, "activity.onBackPressed");
    }
  }
  EXPECT_EQ(mismatches, 1u);
}

TEST(ScoreSummary, UsesBleuAndRouge2) {
  auto s = score_summary("The cat sat on the mat.", "the cat sat on the mat");
  EXPECT_DOUBLE_EQ(s.score.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.score.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.score.f_measure, 1.0);
  auto t = score_summary("the cat on the mat", "the cat sat on the mat");
  EXPECT_DOUBLE_EQ(t.score.recall, 0.6);
  const Tokens c = toks("the cat on the mat"), r = toks("the cat sat on the mat");
  EXPECT_DOUBLE_EQ(t.score.precision, bleu(c, {r}));
  EXPECT_DOUBLE_EQ(t.score.f_measure, f_measure(t.score.precision, t.score.recall));
}

TEST(ScoreSummary, EmptyCandidateWarns) {
  auto s = score_summary("", "ref text here");
  EXPECT_EQ(s.score.precision, 0.0);
  EXPECT_EQ(s.score.f_measure, 0.0);
  EXPECT_EQ(s.warnings.size(), 1u);
  EXPECT_THROW(score_summary("x y", ""), ArgumentError);
}

TEST(ScoreTable, JsonRoundTrip) {
  auto t = fixtures::bart_table();
  auto back = score_table_from_json(to_json(t));
  EXPECT_EQ(back.algorithm, "abstractive");
  ASSERT_EQ(back.rows.size(), 25u);
  EXPECT_EQ(back.rows.at("activity.onStop").precision, 0.3902);
  nlohmann::json dup = nlohmann::json::array();
  dup.push_back(to_json(t)[0]);
  dup.push_back(to_json(t)[0]);
  EXPECT_THROW(score_table_from_json(dup), FormatError);
  EXPECT_THROW(score_table_from_json(nlohmann::json::object()), FormatError);
}

TEST(Oracle, Parse) {
  auto o = oracle_from_json({{"activity.finish", "Call finish."}});
  EXPECT_EQ(o.at("activity.finish"), "Call finish.");
  EXPECT_THROW(oracle_from_json({{"activity.finish", 3}}), FormatError);
}

}  // namespace
}  // namespace apisum::metrics
