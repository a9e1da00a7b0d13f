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

#include "sdee/baselines/knn.hpp"

#include <algorithm>

namespace sdee::baselines {

KnnEstimator::KnnEstimator(FeatureMatrix train, Eigen::VectorXd weights) : train_(std::move(train)) {
  if (train_.size() == 0) throw InputError("kNN estimation needs at least one training row");
  if (weights.size() == 0) weights = Eigen::VectorXd::Ones(train_.features());
  if (weights.size() != train_.features()) throw InputError("one weight per feature is required");
  if ((weights.array() < 0.0).any()) throw InputError("feature weights must be non-negative");
  weights_ = std::move(weights);
  norm_ = MinMax::fit(train_.rows);
  normalized_ = norm_.transform(train_.rows);
}

std::vector<Neighbour> KnnEstimator::neighbours(const Eigen::VectorXd& raw_query, Eigen::Index k) const {
  if (k < 1) throw InputError("k must be at least 1");
  const Eigen::VectorXd q = norm_.apply(raw_query);
  std::vector<Neighbour> all(static_cast<std::size_t>(normalized_.rows()));
  for (Eigen::Index r = 0; r < normalized_.rows(); ++r) {
    all[static_cast<std::size_t>(r)] = {r, weighted_euclidean(normalized_.row(r).transpose(), q, weights_)};
  }
  const auto take = static_cast<std::size_t>(std::min<Eigen::Index>(k, normalized_.rows()));
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    [](const Neighbour& a, const Neighbour& b) {
                      return a.distance != b.distance ? a.distance < b.distance : a.row < b.row;
                    });
  all.resize(take);
  return all;
}

double KnnEstimator::predict(const Eigen::VectorXd& raw_query, Eigen::Index k) const {
  double sum = 0.0;
  const auto nn = neighbours(raw_query, k);
  for (const auto& n : nn) sum += train_.targets[n.row];
  return sum / static_cast<double>(nn.size());
}

double abe_estimate(const FeatureMatrix& train, const Eigen::VectorXd& query, Eigen::Index k) {
  return KnnEstimator(train).predict(query, k);
}

double loc_strawman_estimate(const FeatureMatrix& train_loc, double query_sloc, Eigen::Index k) {
  if (train_loc.features() != 1) throw InputError("the LOC estimator takes exactly one feature");
  return KnnEstimator(train_loc).predict(Eigen::VectorXd::Constant(1, query_sloc), k);
}

}  // namespace sdee::baselines
