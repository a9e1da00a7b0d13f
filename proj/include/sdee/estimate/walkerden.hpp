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
#include <span>

#include "sdee/common/error.hpp"

namespace sdee::estimate {

/// Walkerden's triangle aggregation of efforts ordered nearest-first: the
/// i-th of k efforts gets weight (k - i) / (k (k + 1) / 2), so k = 3 gives
/// (3a + 2b + c) / 6. Throws InputError for an empty list.
template <typename Derived>
double walkerden(const Eigen::DenseBase<Derived>& efforts) {
  const Eigen::Index k = efforts.size();
  if (k == 0) throw InputError("walkerden needs at least one effort");
  double weighted = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) weighted += static_cast<double>(k - i) * static_cast<double>(efforts(i));
  return weighted / (static_cast<double>(k) * static_cast<double>(k + 1) / 2.0);
}

inline double walkerden(std::span<const double> efforts) {
  return walkerden(Eigen::Map<const Eigen::VectorXd>(efforts.data(), static_cast<Eigen::Index>(efforts.size())));
}

}  // namespace sdee::estimate
