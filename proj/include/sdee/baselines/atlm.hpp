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
#include <string>
#include <vector>

#include "sdee/baselines/features.hpp"

namespace sdee::baselines {

/// Linear model y = beta_0 + sum_i beta_i x_i on raw features.
struct AtlmModel {
  Eigen::VectorXd beta;  // intercept first
  std::vector<std::string> names;
  /// ||X^T (y - X beta)||_inf of the fit, intercept column included.
  double normal_residual = 0.0;

  /// Throws InputError when the query has the wrong number of features.
  double predict(const Eigen::VectorXd& x) const;
};

/// Ordinary least squares with an intercept, solved by column-pivoted QR on
/// a column-scaled design and refined once against the extended-precision
/// residual. Throws SingularFit naming the first column (in design order,
/// intercept = 0) that is a linear combination of the ones before it, and
/// InputError when there are fewer rows than coefficients.
AtlmModel atlm_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> names = {});
AtlmModel atlm_fit(const FeatureMatrix& train);

}  // namespace sdee::baselines
