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

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdee/eval/error_metrics.hpp"

namespace sdee::eval {

/// (mean1 - mean2) / pooled standard deviation. Throws UndefinedMetric for a
/// group smaller than two or zero pooled variance.
template <typename D1, typename D2>
double cohens_d(const Eigen::DenseBase<D1>& x1, const Eigen::DenseBase<D2>& x2) {
  const double n1 = static_cast<double>(x1.size()), n2 = static_cast<double>(x2.size());
  if (n1 < 2 || n2 < 2) throw UndefinedMetric("Cohen's d needs two values per group");
  const double pooled = ((n1 - 1) * variance(x1) + (n2 - 1) * variance(x2)) / (n1 + n2 - 2);
  if (pooled == 0.0) throw UndefinedMetric("Cohen's d is undefined for zero pooled variance");
  return (mean(x1) - mean(x2)) / std::sqrt(pooled);
}

/// Small-sample correction d (1 - 3 / (4 (n1 + n2) - 9)).
inline double hedges_g(double d, std::size_t n1, std::size_t n2) {
  if (n1 < 2 || n2 < 2) throw UndefinedMetric("Hedges' g needs two values per group");
  return d * (1.0 - 3.0 / (4.0 * static_cast<double>(n1 + n2) - 9.0));
}

/// (mean1 - mean2) / sd(control).
template <typename D1, typename D2>
double glass_delta(const Eigen::DenseBase<D1>& x1, const Eigen::DenseBase<D2>& control) {
  if (x1.size() < 1) throw UndefinedMetric("Glass's delta needs a treatment value");
  const double sd = stddev(control);
  if (sd == 0.0) throw UndefinedMetric("Glass's delta is undefined for a constant control group");
  return (mean(x1) - mean(control)) / sd;
}

/// (#(x1 > x2) - #(x1 < x2)) / (n1 n2) over all cross pairs, counted by
/// sorting x2 and binary search: O((n1 + n2) log n2).
template <typename D1, typename D2>
double cliffs_delta(const Eigen::DenseBase<D1>& x1, const Eigen::DenseBase<D2>& x2) {
  if (x1.size() == 0 || x2.size() == 0) throw UndefinedMetric("Cliff's delta needs two non-empty groups");
  std::vector<double> sorted(static_cast<std::size_t>(x2.size()));
  for (Eigen::Index i = 0; i < x2.size(); ++i) sorted[static_cast<std::size_t>(i)] = static_cast<double>(x2(i));
  std::sort(sorted.begin(), sorted.end());
  std::int64_t dominance = 0;
  for (Eigen::Index i = 0; i < x1.size(); ++i) {
    const double v = static_cast<double>(x1(i));
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), v);
    dominance += below - above;
  }
  return static_cast<double>(dominance) / (static_cast<double>(x1.size()) * static_cast<double>(x2.size()));
}

inline double cohens_d(std::span<const double> a, std::span<const double> b) {
  return cohens_d(detail::view(a), detail::view(b));
}
inline double glass_delta(std::span<const double> a, std::span<const double> control) {
  return glass_delta(detail::view(a), detail::view(control));
}
inline double cliffs_delta(std::span<const double> a, std::span<const double> b) {
  return cliffs_delta(detail::view(a), detail::view(b));
}

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t test. Throws UndefinedMetric for a group
/// smaller than two or when both variances are zero.
WelchResult welch_t_test(std::span<const double> x1, std::span<const double> x2);

/// Group-difference statistic for the bootstrap; default: mean(x1) - mean(x2).
using GroupStatistic = std::function<double(std::span<const double>, std::span<const double>)>;

double mean_difference(std::span<const double> x1, std::span<const double> x2);

struct BootstrapResult {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p = 1.0;  // two-sided, from the mean-centred null resamples
  WelchResult welch;
};

inline constexpr int kBootstrapSamples = 5000;
inline constexpr double kConfidence = 0.95;
inline constexpr int kPermutations = 10000;

/// Percentile bootstrap CI of `statistic` and a two-sided p-value from
/// resampling both groups after shifting each to the pooled mean:
/// p = (1 + #{|s*| >= |s|}) / (n_boot + 1). Deterministic per seed. Throws
/// InputError for a group smaller than two.
BootstrapResult bootstrap_test(std::span<const double> x1, std::span<const double> x2,
                               const GroupStatistic& statistic = mean_difference, int n_boot = kBootstrapSamples,
                               double confidence = kConfidence, std::uint64_t seed = 1);

/// Two-sided permutation p-value of Cliff's delta,
/// (1 + #{|delta*| >= |delta|}) / (n_perm + 1).
double cliffs_delta_p(std::span<const double> x1, std::span<const double> x2, int n_perm = kPermutations,
                      std::uint64_t seed = 1);

/// One comparison of two samples. Entries that cannot be computed are
/// empty, with the reason in `undefined`.
struct EffectReport {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double mean1 = 0.0;
  double mean2 = 0.0;
  std::optional<double> t_value;
  std::optional<double> t_p;
  std::optional<double> cliffs_delta;
  std::optional<double> cliffs_p;
  std::optional<double> cohens_d;
  std::optional<double> hedges_g;
  std::optional<double> glass_delta;  // x2 is the control group
  std::optional<double> param_p;      // bootstrap p of the mean difference
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  int n_bootstrap = kBootstrapSamples;
  double confidence = kConfidence;
  std::vector<std::string> undefined;
};

EffectReport effect_report(std::span<const double> x1, std::span<const double> x2, std::uint64_t seed,
                           int n_bootstrap = kBootstrapSamples, double confidence = kConfidence);

}  // namespace sdee::eval
