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

// Statistics for comparing two summarizers over the same set of methods:
// Shapiro-Wilk normality (Royston's AS R94), the paired Student t-test,
// t critical values, Tukey box-plot numbers, and the report that ties them
// together.

#ifndef APISUM_STATS_HPP_
#define APISUM_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apisum/error.hpp"
#include "apisum/metrics.hpp"

namespace apisum::stats {

// ---------------------------------------------------------------------------
// Distributions

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Inverse standard normal CDF. Acklam's rational approximation followed by
/// one Halley step against erfc, good to about 1e-15.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw ArgumentError("normal_quantile: p must be in [0,1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b). `one_minus_x` lets callers pass
/// 1 - x without cancellation.
inline double incomplete_beta(double x, double a, double b,
                              std::optional<double> one_minus_x = std::nullopt) {
  if (!(a > 0.0 && b > 0.0)) throw ArgumentError("incomplete_beta: a, b must be positive");
  const double y = one_minus_x.value_or(1.0 - x);
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cf(x, a, b) / a;
  return 1.0 - front * detail::beta_cf(y, b, a) / b;
}

/// P(T > t) for Student's t with `df` degrees of freedom.
inline double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
  const double two_sided = incomplete_beta(df / (df + t2), df / 2.0, 0.5, t2 / (df + t2));
  return t >= 0.0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

inline double student_t_cdf(double t, double df) { return student_t_sf(-t, df); }

/// Inverse CDF by bracketing and bisection on the survival function.
inline double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("student_t_quantile: p must be in (0,1)");
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);
  const double tail = 1.0 - p;
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_sf(hi, df) > tail) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_sf(mid, df) > tail) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

enum class Tails { kOne, kTwo };

inline std::string_view to_string(Tails t) { return t == Tails::kOne ? "one" : "two"; }

/// Critical value of |t| at significance `alpha`.
inline double t_critical(double alpha, int df, Tails tails) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must be in (0,1)");
  if (df < 1) throw ArgumentError("df must be >= 1");
  const double p = tails == Tails::kOne ? 1.0 - alpha : 1.0 - alpha / 2.0;
  return student_t_quantile(p, static_cast<double>(df));
}

// ---------------------------------------------------------------------------
// Shapiro-Wilk

struct NormalityResult {
  double w = 0.0;
  double p_value = 0.0;
  int n = 0;
};

namespace detail {

// cc[0] + cc[1] x + ... + cc[nord-1] x^(nord-1)
inline double poly(const double* cc, int nord, double x) {
  double ret = cc[0];
  if (nord > 1) {
    double p = x * cc[nord - 1];
    for (int j = nord - 2; j > 0; --j) p = (p + cc[j]) * x;
    ret += p;
  }
  return ret;
}

// Upper-half coefficients a_1..a_{n/2} (positive, for the largest order
// statistics first).
inline std::vector<double> shapiro_coefficients(int n) {
  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  const int half = n / 2;
  std::vector<double> a(static_cast<size_t>(half));
  if (n == 3) {
    a[0] = std::sqrt(0.5);
    return a;
  }
  const double an25 = n + 0.25;
  std::vector<double> m(static_cast<size_t>(half));
  double summ2 = 0.0;
  for (int i = 0; i < half; ++i) {
    m[i] = normal_quantile((i + 1 - 0.375) / an25);
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
  const double a1 = poly(c1, 6, rsn) - m[0] / ssumm2;
  int first_scaled;
  double fac;
  if (n > 5) {
    first_scaled = 2;
    const double a2 = -m[1] / ssumm2 + poly(c2, 6, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    first_scaled = 1;
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (int i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

}  // namespace detail

/// Shapiro-Wilk W and its p-value via Royston's (1995) AS R94
/// approximation. Valid for 3 <= n <= 5000.
inline NormalityResult shapiro_wilk(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 3) throw ArgumentError("Shapiro-Wilk needs at least 3 samples");
  if (n > 5000) throw ArgumentError("Shapiro-Wilk approximation is valid up to n=5000");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (range < 1e-19) throw DegenerateSampleError("Shapiro-Wilk: all samples identical", x.front());

  const auto a = detail::shapiro_coefficients(n);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) / range * ((v - mean) / range);
  double num = 0.0;
  for (int i = 0; i < n / 2; ++i) num += a[i] * (x[n - 1 - i] - x[i]) / range;
  // Sum of squared coefficients is 1 by construction, so W is the squared
  // correlation between data and coefficients.
  double w = num * num / ss;
  w = std::min(w, 1.0);
  const double w1 = 1.0 - w;

  NormalityResult r{w, 0.0, n};
  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;   // 6/pi
    constexpr double stqr = 1.04719755119660;  // pi/3
    r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
    return r;
  }
  static constexpr double g[] = {-2.273, 0.459};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  double y = std::log(w1);
  const double xx = std::log(static_cast<double>(n));
  double m;
  double s;
  if (n <= 11) {
    const double gamma = detail::poly(g, 2, n);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    m = detail::poly(c3, 4, n);
    s = std::exp(detail::poly(c4, 4, n));
  } else {
    m = detail::poly(c5, 4, xx);
    s = std::exp(detail::poly(c6, 3, xx));
  }
  r.p_value = 0.5 * std::erfc((y - m) / s / std::sqrt(2.0));
  return r;
}

// ---------------------------------------------------------------------------
// Paired t-test

struct PairedTestResult {
  double t_score = 0.0;
  int df = 0;
  double p_one_tailed = 0.5;  // tail in the direction of the observed mean
  double p_two_tailed = 1.0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
};

/// Paired Student t-test on a - b. All-zero differences give t = 0 and
/// p = 1; a constant non-zero shift has no variance and is rejected.
inline PairedTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("paired samples must have equal length");
  if (a.size() < 2) throw ArgumentError("paired t-test needs at least 2 pairs");
  const size_t n = a.size();
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  PairedTestResult r;
  r.df = static_cast<int>(n) - 1;
  r.mean_diff = mean;
  r.sd_diff = sd;
  const bool all_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
  if (all_zero) return r;
  if (sd <= 1e-15 * std::max(1.0, std::abs(mean))) {
    throw DegenerateSampleError("degenerate: constant shift between paired samples", mean);
  }
  r.t_score = mean / (sd / std::sqrt(static_cast<double>(n)));
  r.p_one_tailed = student_t_sf(std::abs(r.t_score), r.df);
  r.p_two_tailed = std::min(1.0, 2.0 * r.p_one_tailed);
  return r;
}

// ---------------------------------------------------------------------------
// Box plots

struct BoxplotStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double lower_whisker = 0.0;
  double upper_whisker = 0.0;
  double mean = 0.0;
  std::vector<double> outliers;
};

/// Quantile of sorted data with linear interpolation between order
/// statistics (position (n-1)q).
inline double quantile_sorted(const std::vector<double>& x, double q) {
  const double h = (static_cast<double>(x.size()) - 1.0) * q;
  const auto lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= x.size()) return x.back();
  return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

/// Tukey box plot: whiskers reach the most extreme points within 1.5 IQR
/// of the quartiles, anything further out is an outlier.
inline BoxplotStats boxplot_stats(std::span<const double> samples) {
  if (samples.empty()) throw ArgumentError("box plot needs at least one sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  BoxplotStats s;
  s.min = x.front();
  s.max = x.back();
  s.q1 = quantile_sorted(x, 0.25);
  s.median = quantile_sorted(x, 0.5);
  s.q3 = quantile_sorted(x, 0.75);
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.lower_whisker = s.q1;
  s.upper_whisker = s.q3;
  for (double v : x) {
    if (v < lo_fence || v > hi_fence) {
      s.outliers.push_back(v);
      continue;
    }
    s.lower_whisker = std::min(s.lower_whisker, v);
    s.upper_whisker = std::max(s.upper_whisker, v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algorithm comparison

struct ComparisonConfig {
  double alpha = 0.05;
  Tails decision_tails = Tails::kTwo;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must be in (0,1)");
  }
};

struct NormalityEntry {
  std::optional<NormalityResult> result;
  std::string error;  // set when the test could not run
  bool normal(double alpha) const { return result && result->p_value > alpha; }
};

struct MetricComparison {
  std::string metric;
  NormalityEntry normality_a;
  NormalityEntry normality_b;
  PairedTestResult test;
  double t_critical_one = 0.0;
  double t_critical_two = 0.0;
  bool reject_one_tailed = false;
  bool reject_two_tailed = false;
  bool reject = false;  // under ComparisonConfig::decision_tails
  BoxplotStats box_a;
  BoxplotStats box_b;
};

struct ComparisonReport {
  std::string algorithm_a;
  std::string algorithm_b;
  std::vector<std::string> methods;  // shared keys, ascending
  ComparisonConfig config;
  std::vector<MetricComparison> metrics;  // precision, recall, f_measure
};

namespace detail {

inline NormalityEntry try_normality(const std::vector<double>& xs) {
  NormalityEntry e;
  try {
    e.result = shapiro_wilk(xs);
  } catch (const Error& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace detail

/// Runs normality, paired t-test and box-plot statistics for precision,
/// recall and F-measure over the methods both tables share.
inline ComparisonReport compare_algorithms(const metrics::ScoreTable& a,
                                           const metrics::ScoreTable& b,
                                           const ComparisonConfig& config = {}) {
  config.validate();
  ComparisonReport rep;
  rep.algorithm_a = a.algorithm.empty() ? "a" : a.algorithm;
  rep.algorithm_b = b.algorithm.empty() ? "b" : b.algorithm;
  rep.config = config;
  for (const auto& [method, _] : a.rows) {
    if (b.rows.count(method)) rep.methods.push_back(method);
  }
  if (rep.methods.size() < 3) {
    throw ArgumentError("comparison needs at least 3 shared methods, found " +
                        std::to_string(rep.methods.size()));
  }
  using Getter = double (*)(const metrics::EvalScore&);
  const std::pair<const char*, Getter> kMetrics[] = {
      {"precision", [](const metrics::EvalScore& s) { return s.precision; }},
      {"recall", [](const metrics::EvalScore& s) { return s.recall; }},
      {"f_measure", [](const metrics::EvalScore& s) { return s.f_measure; }},
  };
  const int df = static_cast<int>(rep.methods.size()) - 1;
  for (const auto& [name, get] : kMetrics) {
    std::vector<double> xa;
    std::vector<double> xb;
    for (const auto& m : rep.methods) {
      xa.push_back(get(a.rows.at(m)));
      xb.push_back(get(b.rows.at(m)));
    }
    MetricComparison mc;
    mc.metric = name;
    mc.normality_a = detail::try_normality(xa);
    mc.normality_b = detail::try_normality(xb);
    mc.test = paired_t_test(xa, xb);
    mc.t_critical_one = t_critical(config.alpha, df, Tails::kOne);
    mc.t_critical_two = t_critical(config.alpha, df, Tails::kTwo);
    mc.reject_one_tailed = mc.test.p_one_tailed < config.alpha;
    mc.reject_two_tailed = mc.test.p_two_tailed < config.alpha;
    mc.reject = config.decision_tails == Tails::kOne ? mc.reject_one_tailed : mc.reject_two_tailed;
    mc.box_a = boxplot_stats(xa);
    mc.box_b = boxplot_stats(xb);
    rep.metrics.push_back(std::move(mc));
  }
  return rep;
}

inline nlohmann::json to_json(const BoxplotStats& s) {
  return {{"min", s.min},
          {"q1", s.q1},
          {"median", s.median},
          {"q3", s.q3},
          {"max", s.max},
          {"lower_whisker", s.lower_whisker},
          {"upper_whisker", s.upper_whisker},
          {"mean", s.mean},
          {"outliers", s.outliers}};
}

inline nlohmann::json to_json(const NormalityEntry& e) {
  if (!e.result) return {{"error", e.error}};
  return {{"w", e.result->w}, {"p_value", e.result->p_value}, {"n", e.result->n}};
}

inline nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& m : r.metrics) {
    metrics.push_back({
        {"metric", m.metric},
        {"normality", {{r.algorithm_a, to_json(m.normality_a)}, {r.algorithm_b, to_json(m.normality_b)}}},
        {"paired_t",
         {{"t_score", m.test.t_score},
          {"df", m.test.df},
          {"mean_diff", m.test.mean_diff},
          {"sd_diff", m.test.sd_diff},
          {"p_one_tailed", m.test.p_one_tailed},
          {"p_two_tailed", m.test.p_two_tailed},
          {"t_critical_one_tailed", m.t_critical_one},
          {"t_critical_two_tailed", m.t_critical_two}}},
        {"reject_h0_one_tailed", m.reject_one_tailed},
        {"reject_h0_two_tailed", m.reject_two_tailed},
        {"reject_h0", m.reject},
        {"boxplot", {{r.algorithm_a, to_json(m.box_a)}, {r.algorithm_b, to_json(m.box_b)}}},
    });
  }
  return {{"algorithm_a", r.algorithm_a},
          {"algorithm_b", r.algorithm_b},
          {"alpha", r.config.alpha},
          {"decision_tails", std::string(to_string(r.config.decision_tails))},
          {"n_methods", r.methods.size()},
          {"methods", r.methods},
          {"metrics", metrics}};
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace detail

/// Markdown rendering: t-test table, normality table, box-plot numbers.
inline std::string to_markdown(const ComparisonReport& r) {
  using detail::fmt;
  std::ostringstream os;
  os << "# " << r.algorithm_a << " vs " << r.algorithm_b << "\n\n";
  os << "Shared methods: " << r.methods.size() << ", alpha = " << fmt("%g", r.config.alpha)
     << ", decision uses " << to_string(r.config.decision_tails) << "-tailed p.\n\n";

  os << "## Paired t-test\n\n|";
  for (const auto& m : r.metrics) os << " " << m.metric << " t-score | " << m.metric << " p-value |";
  os << "\n|";
  for (size_t i = 0; i < r.metrics.size(); ++i) os << "---|---|";
  os << "\n|";
  for (const auto& m : r.metrics) {
    os << " " << fmt("%.4f", m.test.t_score) << " | " << fmt("%.2E", m.test.p_two_tailed) << " |";
  }
  os << "\n\n";
  os << "| metric | mean diff | df | p (one-tailed) | p (two-tailed) | t-crit one | t-crit two | H0 |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& m : r.metrics) {
    os << "| " << m.metric << " | " << fmt("%.4f", m.test.mean_diff) << " | " << m.test.df << " | "
       << fmt("%.3E", m.test.p_one_tailed) << " | " << fmt("%.3E", m.test.p_two_tailed) << " | "
       << fmt("%.4f", m.t_critical_one) << " | " << fmt("%.4f", m.t_critical_two) << " | "
       << (m.reject ? "rejected" : "retained") << " |\n";
  }

  os << "\n## Shapiro-Wilk\n\n| algorithm |";
  for (const auto& m : r.metrics) os << " " << m.metric << " W | p |";
  os << "\n|---|";
  for (size_t i = 0; i < r.metrics.size(); ++i) os << "---|---|";
  os << "\n";
  auto normal_row = [&](const std::string& algo, auto pick) {
    os << "| " << algo << " |";
    for (const auto& m : r.metrics) {
      const NormalityEntry& e = pick(m);
      if (e.result) {
        os << " " << fmt("%.4f", e.result->w) << " | " << fmt("%.4f", e.result->p_value) << " |";
      } else {
        os << " n/a | " << e.error << " |";
      }
    }
    os << "\n";
  };
  normal_row(r.algorithm_a, [](const MetricComparison& m) -> const NormalityEntry& { return m.normality_a; });
  normal_row(r.algorithm_b, [](const MetricComparison& m) -> const NormalityEntry& { return m.normality_b; });

  os << "\n## Box plots\n\n";
  os << "| metric | algorithm | min | lower whisker | q1 | median | q3 | upper whisker | max | outliers |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& m : r.metrics) {
    for (const auto* pair : {&m.box_a, &m.box_b}) {
      const auto& b = *pair;
      os << "| " << m.metric << " | " << (pair == &m.box_a ? r.algorithm_a : r.algorithm_b) << " | "
         << fmt("%.4f", b.min) << " | " << fmt("%.4f", b.lower_whisker) << " | " << fmt("%.4f", b.q1)
         << " | " << fmt("%.4f", b.median) << " | " << fmt("%.4f", b.q3) << " | "
         << fmt("%.4f", b.upper_whisker) << " | " << fmt("%.4f", b.max) << " | ";
      for (size_t i = 0; i < b.outliers.size(); ++i) os << (i ? ", " : "") << fmt("%.4f", b.outliers[i]);
      os << " |\n";
    }
  }
  return os.str();
}

}  // namespace apisum::stats

#endif  // APISUM_STATS_HPP_
