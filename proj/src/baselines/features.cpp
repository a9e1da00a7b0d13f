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

#include "sdee/baselines/features.hpp"

namespace sdee::baselines {

FeatureMatrix FeatureMatrix::from_records(std::span<const metrics::EffortRecord> records) {
  FeatureMatrix m;
  m.rows.resize(static_cast<Eigen::Index>(records.size()), 3);
  m.targets.resize(static_cast<Eigen::Index>(records.size()));
  m.names.assign(kDefaultFeatures.begin(), kDefaultFeatures.end());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    m.rows(r, 0) = static_cast<double>(records[i].dev_count);
    m.rows(r, 1) = static_cast<double>(records[i].sloc_m);
    m.rows(r, 2) = records[i].dev_time_months;
    m.targets[r] = records[i].effort_pm;
  }
  return m;
}

FeatureMatrix FeatureMatrix::loc_only(std::span<const metrics::EffortRecord> records) {
  FeatureMatrix m;
  m.rows.resize(static_cast<Eigen::Index>(records.size()), 1);
  m.targets.resize(static_cast<Eigen::Index>(records.size()));
  m.names = {"sloc_m"};
  for (std::size_t i = 0; i < records.size(); ++i) {
    m.rows(static_cast<Eigen::Index>(i), 0) = static_cast<double>(records[i].sloc_m);
    m.targets[static_cast<Eigen::Index>(i)] = records[i].effort_pm;
  }
  return m;
}

FeatureMatrix FeatureMatrix::subset(std::span<const std::size_t> indices) const {
  FeatureMatrix m;
  m.names = names;
  m.rows.resize(static_cast<Eigen::Index>(indices.size()), rows.cols());
  m.targets.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(indices[i]);
    if (src >= rows.rows()) throw InputError("feature row index out of range");
    m.rows.row(static_cast<Eigen::Index>(i)) = rows.row(src);
    m.targets[static_cast<Eigen::Index>(i)] = targets[src];
  }
  return m;
}

MinMax MinMax::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw InputError("cannot fit a normalization on zero rows");
  return {rows.colwise().minCoeff().transpose(), rows.colwise().maxCoeff().transpose()};
}

Eigen::MatrixXd MinMax::transform(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) out.row(r) = apply(rows.row(r).transpose()).transpose();
  return out;
}

}  // namespace sdee::baselines
