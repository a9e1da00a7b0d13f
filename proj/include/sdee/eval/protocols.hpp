// Copyright 2026 The sdee Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sdee/eval/effect.hpp"
#include "sdee/eval/estimators.hpp"

namespace sdee::eval {

enum class Metric { lsd, re_star, mar, mmre, mdmre, sa };
inline constexpr std::size_t kMetricCount = 6;
inline const std::array<std::string, kMetricCount> kMetricNames{"lsd", "re_star", "mar", "mmre", "mdmre", "sa"};

/// One estimator on one split.
struct SplitResult {
  std::string protocol;
  int split = 0;
  std::string estimator;
  std::vector<std::size_t> test_rows;
  std::vector<double> predictions;
  std::vector<double> actuals;
  double random_guess_mar = 0.0;
  std::array<std::optional<double>, kMetricCount> values;
  std::array<std::string, kMetricCount> undefined;  // reason when a value is missing
  std::optional<std::string> error;                 // the estimator itself failed

  std::optional<double> value(Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

/// Mean and sample standard deviation over the splits where a metric was
/// defined; `reason` explains an empty cell.
struct MetricCell {
  std::optional<double> mean;
  std::optional<double> stddev;
  std::size_t n = 0;
  std::string reason;
};

struct MetricRow {
  std::string estimator;
  std::array<MetricCell, kMetricCount> cells;
  const MetricCell& cell(Metric m) const { return cells[static_cast<std::size_t>(m)]; }
};

struct MetricReport {
  std::string protocol;  // "random" or "kfold"
  std::uint64_t seed = 0;
  int splits = 0;
  std::vector<MetricRow> rows;     // estimator order as given
  std::vector<SplitResult> raw;    // split-major, then estimator order
  const MetricRow* find(const std::string& estimator) const;
  /// Per-split values of one metric for one estimator (defined splits only).
  std::vector<double> series(const std::string& estimator, Metric m) const;
};

inline constexpr int kRandomGuessTrials = 1000;

/// r trials; each shuffles the rows with a seed derived from (seed, trial),
/// tests on the first x and trains on the rest. Throws InputError unless
/// 1 <= x < n and r >= 1.
MetricReport randomized_trials(const Dataset& data, const EstimatorList& estimators, std::size_t x = 55, int r = 20,
                               std::uint64_t seed = 1);

/// Contiguous folds of a seeded shuffle; fold sizes differ by at most one.
/// Throws InputError unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed);

MetricReport kfold(const Dataset& data, const EstimatorList& estimators, std::size_t k = 10, std::uint64_t seed = 1);

/// estimator,metric,mean,stddev,n,note
void write_report_csv(std::ostream& out, const MetricReport& report);
/// Aligned text table: one row per estimator, "mean (sd)" per metric.
void write_report_table(std::ostream& out, const MetricReport& report);
/// One JSON object per SplitResult.
void write_raw_jsonl(std::ostream& out, const MetricReport& report);

struct BaselineComparison {
  std::string baseline;
  EffectReport mar;             // subject MAR series vs baseline MAR series
  std::optional<double> sa;     // SA of the subject with the baseline's MAR as reference
};

struct SignificanceReport {
  std::string subject;
  EffectReport estimates_vs_actuals;  // subject predictions vs true efforts
  std::vector<BaselineComparison> baselines;
};

/// Tests the subject's estimates against the true efforts, and its MAR
/// series against each baseline's, with SA relative to each baseline.
SignificanceReport significance_suite(std::span<const double> subject_estimates, std::span<const double> true_values,
                                      std::span<const double> subject_mar,
                                      const std::map<std::string, std::vector<double>>& baseline_mar,
                                      std::uint64_t seed = 1, const std::string& subject = "DevSDEE");

/// The same from a protocol report's raw splits.
SignificanceReport significance_suite(const MetricReport& report, std::uint64_t seed = 1,
                                      const std::string& subject = "DevSDEE");

void write_significance_table(std::ostream& out, const SignificanceReport& report);

}  // namespace sdee::eval
