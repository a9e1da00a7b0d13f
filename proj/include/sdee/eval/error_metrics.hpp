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
#include <span>
#include <vector>

#include "sdee/common/error.hpp"

namespace sdee::eval {

namespace detail {

template <typename DA, typename DB>
void check_pairs(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act, Eigen::Index min_n = 1) {
  if (est.size() != act.size()) throw InputError("estimates and actuals differ in length");
  if (est.size() < min_n) throw UndefinedMetric("needs at least " + std::to_string(min_n) + " pair(s)");
}

inline Eigen::Map<const Eigen::VectorXd> view(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace detail

template <typename Derived>
double mean(const Eigen::DenseBase<Derived>& x) {
  if (x.size() == 0) throw UndefinedMetric("mean of an empty sample");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += static_cast<double>(x(i));
  return s / static_cast<double>(x.size());
}

/// Sample variance (n - 1 denominator).
template <typename Derived>
double variance(const Eigen::DenseBase<Derived>& x) {
  if (x.size() < 2) throw UndefinedMetric("variance needs at least two values");
  const double m = mean(x);
  double ss = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) ss += (static_cast<double>(x(i)) - m) * (static_cast<double>(x(i)) - m);
  return ss / static_cast<double>(x.size() - 1);
}

template <typename Derived>
double stddev(const Eigen::DenseBase<Derived>& x) {
  return std::sqrt(variance(x));
}

/// Median; the mean of the two central values for even n.
template <typename Derived>
double median(const Eigen::DenseBase<Derived>& x) {
  if (x.size() == 0) throw UndefinedMetric("median of an empty sample");
  std::vector<double> v(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) v[static_cast<std::size_t>(i)] = static_cast<double>(x(i));
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

/// |e_hat - e| / e. Throws UndefinedMetric for e <= 0.
inline double mre(double e_hat, double e) {
  if (!(e > 0.0)) throw UndefinedMetric("MRE needs a positive actual effort");
  return std::abs(e_hat - e) / e;
}

/// Mean MRE in percent.
template <typename DA, typename DB>
double mmre(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act) {
  detail::check_pairs(est, act);
  double s = 0.0;
  for (Eigen::Index i = 0; i < est.size(); ++i) s += mre(static_cast<double>(est(i)), static_cast<double>(act(i)));
  return 100.0 * s / static_cast<double>(est.size());
}

/// Median MRE in percent.
template <typename DA, typename DB>
double mdmre(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act) {
  detail::check_pairs(est, act);
  Eigen::VectorXd m(est.size());
  for (Eigen::Index i = 0; i < est.size(); ++i) m[i] = mre(static_cast<double>(est(i)), static_cast<double>(act(i)));
  return 100.0 * median(m);
}

/// Mean absolute residual.
template <typename DA, typename DB>
double mar(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act) {
  detail::check_pairs(est, act);
  double s = 0.0;
  for (Eigen::Index i = 0; i < est.size(); ++i) s += std::abs(static_cast<double>(est(i)) - static_cast<double>(act(i)));
  return s / static_cast<double>(est.size());
}

/// sqrt(sum_i (ln e_hat_i - ln mean(e))^2), measured against the mean of the
/// actual efforts. Throws UndefinedMetric for any non-positive value.
template <typename DA, typename DB>
double lsd(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act) {
  detail::check_pairs(est, act);
  for (Eigen::Index i = 0; i < est.size(); ++i) {
    if (!(static_cast<double>(est(i)) > 0.0) || !(static_cast<double>(act(i)) > 0.0)) {
      throw UndefinedMetric("LSD needs positive estimates and actuals");
    }
  }
  const double log_mean = std::log(mean(act));
  double s = 0.0;
  for (Eigen::Index i = 0; i < est.size(); ++i) {
    const double d = std::log(static_cast<double>(est(i))) - log_mean;
    s += d * d;
  }
  return std::sqrt(s);
}

/// var(e_hat - e) / var(e), sample variances. Throws UndefinedMetric for
/// fewer than two pairs or constant actuals.
template <typename DA, typename DB>
double re_star(const Eigen::DenseBase<DA>& est, const Eigen::DenseBase<DB>& act) {
  detail::check_pairs(est, act, 2);
  Eigen::VectorXd residual(est.size());
  for (Eigen::Index i = 0; i < est.size(); ++i) residual[i] = static_cast<double>(est(i)) - static_cast<double>(act(i));
  const double va = variance(act);
  if (va == 0.0) throw UndefinedMetric("RE* needs actual efforts that vary");
  return variance(residual) / va;
}

/// Standardized accuracy in percent against a baseline MAR. Throws
/// UndefinedMetric unless the baseline MAR is positive.
inline double sa(double mar_p, double mar_baseline) {
  if (!(mar_baseline > 0.0)) throw UndefinedMetric("SA needs a positive baseline MAR");
  return (1.0 - mar_p / mar_baseline) * 100.0;
}

inline double mmre(std::span<const double> est, std::span<const double> act) {
  return mmre(detail::view(est), detail::view(act));
}
inline double mdmre(std::span<const double> est, std::span<const double> act) {
  return mdmre(detail::view(est), detail::view(act));
}
inline double mar(std::span<const double> est, std::span<const double> act) {
  return mar(detail::view(est), detail::view(act));
}
inline double lsd(std::span<const double> est, std::span<const double> act) {
  return lsd(detail::view(est), detail::view(act));
}
inline double re_star(std::span<const double> est, std::span<const double> act) {
  return re_star(detail::view(est), detail::view(act));
}

/// Random guessing over one sample: every item is predicted by the effort
/// of a uniformly drawn other item; the MAR is averaged over `trials`
/// seeded runs. Throws InputError for fewer than two targets.
double random_guess_mar(std::span<const double> targets, int trials, std::uint64_t seed);

/// Random guessing for a train/test split: every test item is predicted by
/// the effort of a uniformly drawn training item.
double random_guess_mar(std::span<const double> train_targets, std::span<const double> test_targets, int trials,
                        std::uint64_t seed);

}  // namespace sdee::eval
