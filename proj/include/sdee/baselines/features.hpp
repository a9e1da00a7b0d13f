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
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sdee/common/error.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::baselines {

/// Columns of the default baseline feature set, in order.
inline const std::array<std::string, 3> kDefaultFeatures{"dev_count", "sloc_m", "dev_time_months"};

/// n records x p features with their efforts.
struct FeatureMatrix {
  Eigen::MatrixXd rows;
  Eigen::VectorXd targets;
  std::vector<std::string> names;

  /// (dev_count, sloc_m, dev_time_months) -> effort_pm.
  static FeatureMatrix from_records(std::span<const metrics::EffortRecord> records);
  /// The single column sloc_m -> effort_pm.
  static FeatureMatrix loc_only(std::span<const metrics::EffortRecord> records);

  Eigen::Index size() const { return rows.rows(); }
  Eigen::Index features() const { return rows.cols(); }
  /// Rows picked by index, in the given order.
  FeatureMatrix subset(std::span<const std::size_t> indices) const;
};

/// Per-feature (min, max) frozen at fit time.
struct MinMax {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  static MinMax fit(const Eigen::MatrixXd& rows);

  /// Maps a raw row into [0,1]^p, clamping values outside the fitted range.
  /// A constant training column maps to 0.
  template <typename Derived>
  Eigen::VectorXd apply(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != min.size()) throw InputError("feature count does not match the fitted normalization");
    Eigen::VectorXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double range = max[i] - min[i];
      out[i] = range > 0.0 ? std::clamp((static_cast<double>(x(i)) - min[i]) / range, 0.0, 1.0) : 0.0;
    }
    return out;
  }

  Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const;
};

/// sqrt(sum_i w_i (x_i - y_i)^2). Throws InputError on a dimension mismatch
/// or a negative weight.
template <typename DX, typename DY, typename DW>
double weighted_euclidean(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                          const Eigen::MatrixBase<DW>& w) {
  if (x.size() != y.size() || x.size() != w.size()) throw InputError("weighted_euclidean: dimension mismatch");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double wi = static_cast<double>(w(i));
    if (wi < 0.0 || std::isnan(wi)) throw InputError("weighted_euclidean: negative weight");
    const double d = static_cast<double>(x(i)) - static_cast<double>(y(i));
    sum += wi * d * d;
  }
  return std::sqrt(sum);
}

}  // namespace sdee::baselines
