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
#include <cstddef>
#include <string>
#include <vector>

#include "sdee/corpus/types.hpp"

namespace sdee::estimate {

struct IndexEntry {
  std::string owner;
  std::string repo;
  Eigen::VectorXf values;
};

struct Hit {
  std::size_t entry = 0;  // index into VectorIndex::entries()
  double similarity = 0.0;
};

/// Description vectors with their angle to a fixed reference direction.
/// Retrieval scans candidates in a band around the query's reference
/// cosine and widens the band until the triangle inequality on angles,
/// cos(q, c) <= cos(|theta_q - theta_c|), proves that nothing outside it
/// could enter the result; results are therefore identical to a full scan.
class VectorIndex {
 public:
  static constexpr double kInitialBand = 0.05;

  VectorIndex() = default;
  /// Throws InputError on an empty or zero reference, or on an entry whose
  /// dimension differs from the reference. Zero entry vectors are dropped.
  VectorIndex(std::vector<IndexEntry> entries, Eigen::VectorXf reference);

  /// One entry per (owner, repo) from the stored description vectors.
  static VectorIndex from_corpus(const corpus::Corpus& corpus);

  /// Up to k entries with cosine >= alpha, most similar first, ties by
  /// (owner, repo). Throws InputError on a dimension mismatch or k == 0 and
  /// UndefinedMetric for a zero query.
  std::vector<Hit> top_k(const Eigen::VectorXf& query, std::size_t k, double alpha) const;

  /// The same contract answered by scoring every entry.
  std::vector<Hit> scan(const Eigen::VectorXf& query, std::size_t k, double alpha) const;

  const std::vector<IndexEntry>& entries() const { return entries_; }
  const Eigen::VectorXf& reference() const { return reference_; }
  std::size_t size() const { return entries_.size(); }
  int dim() const { return static_cast<int>(reference_.size()); }

  /// Number of candidates scored by the most recent top_k call on this
  /// thread; exposed for diagnostics and tests.
  static std::size_t last_candidates_scored();

 private:
  std::vector<IndexEntry> entries_;  // sorted by reference cosine ascending
  std::vector<double> ref_cos_;
  std::vector<double> angle_;
  Eigen::VectorXf reference_;
};

}  // namespace sdee::estimate
