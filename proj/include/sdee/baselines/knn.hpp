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
#include <vector>

#include "sdee/baselines/features.hpp"

namespace sdee::baselines {

struct Neighbour {
  Eigen::Index row = 0;
  double distance = 0.0;
};

/// Analogy-based estimation: the unweighted mean effort of the k nearest
/// training rows under the weighted Euclidean distance on min-max
/// normalized features. Ties in distance go to the lower row index.
class KnnEstimator {
 public:
  /// Throws InputError on an empty training set or a weight vector of the
  /// wrong length.
  explicit KnnEstimator(FeatureMatrix train, Eigen::VectorXd weights = {});

  /// The k (at most n) nearest rows, nearest first.
  std::vector<Neighbour> neighbours(const Eigen::VectorXd& raw_query, Eigen::Index k) const;
  double predict(const Eigen::VectorXd& raw_query, Eigen::Index k) const;

  const FeatureMatrix& train() const { return train_; }
  const MinMax& normalization() const { return norm_; }

 private:
  FeatureMatrix train_;
  MinMax norm_;
  Eigen::MatrixXd normalized_;
  Eigen::VectorXd weights_;
};

/// ABE over the training features.
double abe_estimate(const FeatureMatrix& train, const Eigen::VectorXd& query, Eigen::Index k);

/// The LOC straw man: ABE on the single feature sloc_m.
double loc_strawman_estimate(const FeatureMatrix& train_loc, double query_sloc, Eigen::Index k);

}  // namespace sdee::baselines
