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

// Reference per-method scores for the 25-method BART run and the 15-method
// TextRank baseline, verbatim (F included, even where it
// disagrees with P and R).

#ifndef APISUM_FIXTURES_HPP_
#define APISUM_FIXTURES_HPP_

#include <string>
#include <vector>

#include "apisum/metrics.hpp"

namespace apisum::fixtures {

struct PrintedRow {
  const char* method;
  double precision;
  double recall;
  double f_measure;
};

inline const std::vector<PrintedRow>& bart_rows() {
  static const std::vector<PrintedRow> rows = {
      {"asyncTask.onPostExecute", 0.9393, 0.7948, 0.8611},
      {"fragment.onCreateView", 0.6418, 0.7277, 0.6820},
      {"activity.onCreate", 0.6608, 0.7448, 0.7002},
      {"asyncTask.doInBackground", 0.6563, 0.6237, 0.6396},
      {"activity.onPause", 0.4545, 0.4381, 0.4461},
      {"activity.findViewById", 0.875, 0.6764, 0.7630},
      {"activity.onDestroy", 0.9324, 0.6666, 0.7774},
      {"activity.finish", 0.62, 0.5864, 0.6027},
      {"activity.setContentView", 0.5555, 0.7963, 0.6545},
      {"activity.startActivityForResult", 0.5, 0.475, 0.4871},
      {"recyclerview.onBindViewHolder", 0.75, 0.6153, 0.6760},
      {"activity.startActivity", 0.5530, 0.6825, 0.6109},
      {"activity.onBackPressed", 0.9318, 0.7735, 0.8453},
      {"activity.onActivityResult", 0.4042, 0.6551, 0.4999},
      {"activity.onStop", 0.3902, 0.3809, 0.3855},
      {"activity.onStart", 0.7741, 0.8482, 0.8095},
      {"adapter.notifyDataSetChanged", 0.4258, 0.3905, 0.4073},
      {"adapter.getView", 0.6728, 0.7231, 0.6970},
      {"view.onDraw", 0.7032, 0.8451, 0.7676},
      {"activity.onSaveInstanceState", 0.8027, 0.6459, 0.7158},
      {"activity.onNewIntent", 0.5725, 0.4286, 0.4902},
      {"activity.onActivityCreated", 0.7394, 0.8725, 0.8005},
      {"activity.onCreateOptionsMenu", 0.856, 0.6551, 0.7421},
      {"activity.runOnUiThread", 0.53, 0.6034, 0.5643},
      {"asyncTask.onProgressUpdate", 0.856, 0.7348, 0.7907},
  };
  return rows;
}

inline const std::vector<PrintedRow>& textrank_rows() {
  static const std::vector<PrintedRow> rows = {
      {"asyncTask.onPostExecute", 0.3818, 0.5908, 0.4638},
      {"fragment.onCreateView", 0.1940, 0.3939, 0.2599},
      {"activity.onCreate", 0.1690, 0.4, 0.2376},
      {"asyncTask.doInBackground", 0.2413, 0.3159, 0.2736},
      {"activity.onPause", 0.1666, 0.2391, 0.1964},
      {"activity.findViewById", 0.1791, 0.3636, 0.2399},
      {"activity.onDestroy", 0.1408, 0.3333, 0.1980},
      {"activity.finish", 0.2222, 0.3636, 0.2758},
      {"activity.setContentView", 0.3030, 0.5454, 0.3896},
      {"activity.startActivityForResult", 0.2222, 0.5128, 0.3100},
      {"recyclerview.onBindViewHolder", 0.1941, 0.4878, 0.2777},
      {"activity.startActivity", 0.2941, 0.4878, 0.3669},
      {"activity.onBackPressed", 0.4745, 0.5284, 0.5578},
      {"activity.onActivityResult", 0.274, 0.3285, 0.2987},
      {"activity.onStop", 0.1281, 0.1934, 0.1541},
  };
  return rows;
}

/// Printed "Average" rows (precision, recall, F).
inline constexpr PrintedRow kBartPrintedAverage{"average", 0.5718, 0.6634, 0.6142};
inline constexpr PrintedRow kTextRankPrintedAverage{"average", 0.2504, 0.4056, 0.3096};

inline metrics::ScoreTable to_table(const std::vector<PrintedRow>& rows, std::string algorithm) {
  metrics::ScoreTable t;
  t.algorithm = std::move(algorithm);
  for (const auto& r : rows) t.rows[r.method] = {r.precision, r.recall, r.f_measure};
  return t;
}

inline metrics::ScoreTable bart_table() { return to_table(bart_rows(), "abstractive"); }
inline metrics::ScoreTable textrank_table() { return to_table(textrank_rows(), "textrank"); }

}  // namespace apisum::fixtures

#endif  // APISUM_FIXTURES_HPP_
