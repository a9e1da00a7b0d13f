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

#include <cstdint>
#include <span>
#include <vector>

#include "sdee/embed/model.hpp"

namespace sdee::embed {

enum class PairLabel { same, different };

struct TestPair {
  std::size_t a = 0;  // index into SimilarityTestBed::docs
  std::size_t b = 0;
  PairLabel label = PairLabel::same;
};

/// Held-out same/different description pairs. A "same" pair is a test
/// description paired with itself; a "different" pair joins two distinct
/// test descriptions.
struct SimilarityTestBed {
  std::vector<Document> docs;
  std::vector<TestPair> pairs;
};

struct TestbedSplit {
  std::vector<Document> train;
  SimilarityTestBed testbed;
};

/// Shuffles with `split_seed` and splits 2:1 into train and test (test gets
/// max(2, n/3) documents). The test-bed holds `n_pairs` pairs (default: two
/// per test document), half same and half different (the extra one is a
/// same pair when odd). Throws InputError for fewer than 3 descriptions or
/// when no two test descriptions differ.
TestbedSplit build_testbed(std::span<const Document> descriptions, std::uint64_t split_seed,
                           std::size_t n_pairs = 0);

struct ScoreStats {
  double min = 0.0;
  double avg = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single score
  double max = 0.0;
  std::size_t count = 0;
};

ScoreStats score_stats(std::span<const double> scores);

/// Cosine score of every test-bed pair whose two sides could be inferred.
struct PairScores {
  std::vector<double> scores;
  std::vector<bool> same;
  std::size_t skipped = 0;
};

PairScores score_pairs(const SimilarityModel& model, const SimilarityTestBed& testbed);

struct CalibrationResult {
  double alpha_hat = 0.0;  // == stats_same.avg
  ScoreStats stats_same;
  ScoreStats stats_different;
  std::size_t skipped_pairs = 0;
};

/// alpha_hat is the mean score of the same pairs. Throws UndefinedMetric
/// when no same pair could be scored.
CalibrationResult calibrate(const PairScores& scores);
CalibrationResult calibrate(const SimilarityModel& model, const SimilarityTestBed& testbed);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
  double combined = 0.0;  // (f1 + roc_auc) / 2
  std::size_t skipped_pairs = 0;
};

/// Area under the ROC curve as the Mann-Whitney rank statistic; tied
/// scores count one half. Throws UndefinedMetric unless both classes occur.
double roc_auc(std::span<const double> scores, const std::vector<bool>& positive);

/// A pair is predicted "same" iff its score >= alpha. Precision is 0 when
/// nothing is predicted positive.
ClassificationMetrics classification_metrics(std::span<const double> scores, const std::vector<bool>& same,
                                             double alpha);

ClassificationMetrics evaluate_similarity_model(const SimilarityModel& model, const SimilarityTestBed& testbed,
                                                double alpha_hat);

}  // namespace sdee::embed
