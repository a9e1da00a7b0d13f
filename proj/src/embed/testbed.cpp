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

#include "sdee/embed/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "sdee/common/error.hpp"
#include "sdee/common/random.hpp"
#include "sdee/embed/cosine.hpp"
#include "sdee/embed/pvdbow.hpp"

namespace sdee::embed {

TestbedSplit build_testbed(std::span<const Document> descriptions, std::uint64_t split_seed, std::size_t n_pairs) {
  const std::size_t n = descriptions.size();
  if (n < 3) throw InputError("a test-bed needs at least 3 descriptions");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(split_seed);
  rng.shuffle(std::span<std::size_t>(order));

  const std::size_t n_test = std::max<std::size_t>(2, n / 3);
  TestbedSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = descriptions[order[i]];
    if (i < n_test) {
      split.testbed.docs.push_back(d);
    } else {
      split.train.push_back(d);
    }
  }
  const auto& test = split.testbed.docs;
  if (n_pairs == 0) n_pairs = 2 * n_test;
  const std::size_t n_same = (n_pairs + 1) / 2;
  const std::size_t n_diff = n_pairs / 2;

  std::vector<std::pair<std::size_t, std::size_t>> distinct;
  for (std::size_t a = 0; a < test.size(); ++a) {
    for (std::size_t b = a + 1; b < test.size(); ++b) {
      if (test[a].tokens != test[b].tokens) distinct.emplace_back(a, b);
    }
  }
  if (n_diff > 0 && distinct.empty()) throw InputError("test partition has no two distinct descriptions");

  for (std::size_t i = 0; i < n_same; ++i) {
    split.testbed.pairs.push_back({i % test.size(), i % test.size(), PairLabel::same});
  }
  rng.shuffle(std::span(distinct));
  for (std::size_t i = 0; i < n_diff; ++i) {
    const auto [a, b] = distinct[i % distinct.size()];
    split.testbed.pairs.push_back({a, b, PairLabel::different});
  }
  return split;
}

ScoreStats score_stats(std::span<const double> scores) {
  ScoreStats s;
  s.count = scores.size();
  if (scores.empty()) return s;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  s.min = *lo;
  s.max = *hi;
  s.avg = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  if (scores.size() > 1) {
    double ss = 0.0;
    for (const double x : scores) ss += (x - s.avg) * (x - s.avg);
    s.stddev = std::sqrt(ss / static_cast<double>(scores.size() - 1));
  }
  return s;
}

PairScores score_pairs(const SimilarityModel& model, const SimilarityTestBed& testbed) {
  // Inference is deterministic per text, so each description is inferred once.
  std::vector<std::optional<Eigen::VectorXf>> vectors(testbed.docs.size());
  for (std::size_t i = 0; i < testbed.docs.size(); ++i) {
    try {
      vectors[i] = infer_values(testbed.docs[i].tokens, model);
    } catch (const OutOfVocabulary&) {
    }
  }
  PairScores out;
  for (const auto& p : testbed.pairs) {
    if (!vectors.at(p.a) || !vectors.at(p.b)) {
      ++out.skipped;
      continue;
    }
    try {
      out.scores.push_back(cosine(*vectors[p.a], *vectors[p.b]));
      out.same.push_back(p.label == PairLabel::same);
    } catch (const UndefinedMetric&) {
      ++out.skipped;
    }
  }
  return out;
}

CalibrationResult calibrate(const PairScores& scores) {
  std::vector<double> same, different;
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    (scores.same[i] ? same : different).push_back(scores.scores[i]);
  }
  if (same.empty()) throw UndefinedMetric("no same-description pair could be scored");
  CalibrationResult r;
  r.stats_same = score_stats(same);
  r.stats_different = score_stats(different);
  r.alpha_hat = r.stats_same.avg;
  r.skipped_pairs = scores.skipped;
  return r;
}

CalibrationResult calibrate(const SimilarityModel& model, const SimilarityTestBed& testbed) {
  if (testbed.pairs.empty()) throw InputError("empty test-bed");
  return calibrate(score_pairs(model, testbed));
}

double roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) throw InputError("roc_auc: scores and labels differ in length");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Mid-ranks over tie groups.
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (positive[idx[k]]) {
        rank_sum += mid;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw UndefinedMetric("roc_auc needs both same and different pairs");
  const double np = static_cast<double>(n_pos);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

ClassificationMetrics classification_metrics(std::span<const double> scores, const std::vector<bool>& same,
                                             double alpha) {
  ClassificationMetrics m;
  m.roc_auc = roc_auc(scores, same);
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= alpha;
    if (predicted && same[i]) ++tp;
    else if (predicted) ++fp;
    else if (same[i]) ++fn;
    else ++tn;
  }
  m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(scores.size());
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  m.combined = (m.f1 + m.roc_auc) / 2.0;
  return m;
}

ClassificationMetrics evaluate_similarity_model(const SimilarityModel& model, const SimilarityTestBed& testbed,
                                                double alpha_hat) {
  const auto scored = score_pairs(model, testbed);
  auto m = classification_metrics(scored.scores, scored.same, alpha_hat);
  m.skipped_pairs = scored.skipped;
  return m;
}

}  // namespace sdee::embed
