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

#include "sdee/common/error.hpp"

namespace sdee::embed {

/// Cosine similarity accumulated in double. Identical inputs give exactly
/// 1.0 (sqrt(fl(x*x)) == x in binary floating point), which the identical-
/// text calibration pairs rely on.
template <typename DerivedU, typename DerivedV>
double cosine(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != v.size()) throw InputError("cosine: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double a = static_cast<double>(u.derived().coeff(i));
    const double b = static_cast<double>(v.derived().coeff(i));
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  if (!(nu > 0.0) || !(nv > 0.0)) throw UndefinedMetric("cosine: zero or non-finite vector");
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

}  // namespace sdee::embed
