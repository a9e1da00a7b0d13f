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
#include <span>
#include <string>

#include "sdee/common/error.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::metrics {

/// Pearson product-moment correlation. Throws InputError on a length
/// mismatch or fewer than two samples, UndefinedMetric when either series is
/// constant.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::DenseBase<DerivedX>& x, const Eigen::DenseBase<DerivedY>& y) {
  if (x.size() != y.size()) throw InputError("pearson: series lengths differ");
  if (x.size() < 2) throw InputError("pearson: need at least two samples");
  const Eigen::ArrayXd xa = x.derived().template cast<double>().array();
  const Eigen::ArrayXd ya = y.derived().template cast<double>().array();
  const Eigen::ArrayXd dx = xa - xa.mean();
  const Eigen::ArrayXd dy = ya - ya.mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetric("pearson: zero variance");
  return std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  using Map = Eigen::Map<const Eigen::ArrayXd>;
  return pearson(Map(x.data(), static_cast<Eigen::Index>(x.size())),
                 Map(y.data(), static_cast<Eigen::Index>(y.size())));
}

struct CorrelationReport {
  double sloc_effort = 0.0;
  double devcount_effort = 0.0;
  double time_effort = 0.0;
};

/// Correlates each activity metric with effort. Errors name the failing pair.
CorrelationReport correlation_report(std::span<const EffortRecord> records);

}  // namespace sdee::metrics
