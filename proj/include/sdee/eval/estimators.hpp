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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdee/baselines/mlp.hpp"
#include "sdee/corpus/types.hpp"
#include "sdee/embed/model.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::eval {

/// Effort records with their description documents, row-aligned.
struct Dataset {
  std::vector<metrics::EffortRecord> records;
  std::vector<embed::Document> docs;  // empty when no description is available

  std::size_t size() const { return records.size(); }
  std::vector<double> targets() const;
  std::vector<double> targets(std::span<const std::size_t> rows) const;

  /// Every repository of the corpus whose effort record survives
  /// clean_dataset, in corpus order.
  static Dataset from_corpus(const corpus::Corpus& corpus);
};

/// An estimator fitted on the training rows of each split and asked for
/// the test rows. Implementations are stateless between calls.
class EffortEstimator {
 public:
  virtual ~EffortEstimator() = default;
  virtual std::string name() const = 0;
  /// Predictions for `test`, in order. `seed` is derived per split and
  /// estimator. Throws sdee::Error when the estimator cannot be fitted.
  virtual std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                          std::span<const std::size_t> test, std::uint64_t seed) const = 0;
};

using EstimatorList = std::vector<std::shared_ptr<const EffortEstimator>>;

inline constexpr std::size_t kBaselineK = 2;

/// The description-similarity estimator: embeds every description, takes
/// the k most similar training descriptions (at or above `alpha`, when
/// given) and aggregates their efforts with Walkerden's weights. Trains a
/// model on the training descriptions of each split unless a fixed model is
/// supplied.
class DevSdeeEstimator : public EffortEstimator {
 public:
  struct Options {
    embed::TrainingScenario scenario{10, 50, 0, 1};
    std::size_t k = 2;
    std::optional<double> alpha;
    std::shared_ptr<const embed::SimilarityModel> fixed_model;
  };
  DevSdeeEstimator();
  explicit DevSdeeEstimator(Options options);
  std::string name() const override { return "DevSDEE"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;

 private:
  Options options_;
};

class AtlmEstimator : public EffortEstimator {
 public:
  std::string name() const override { return "ATLM"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;
};

class AbeEstimator : public EffortEstimator {
 public:
  explicit AbeEstimator(std::size_t k = kBaselineK) : k_(k) {}
  std::string name() const override { return "ABE"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;

 private:
  std::size_t k_;
};

class LocEstimator : public EffortEstimator {
 public:
  explicit LocEstimator(std::size_t k = kBaselineK) : k_(k) {}
  std::string name() const override { return "LOC"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;

 private:
  std::size_t k_;
};

class MlpEstimator : public EffortEstimator {
 public:
  explicit MlpEstimator(baselines::MlpOptions options = {}) : options_(options) {}
  std::string name() const override { return "NeuralNet"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;

 private:
  baselines::MlpOptions options_;
};

/// Returns the true efforts; a sanity check for the protocol drivers.
class PerfectOracle : public EffortEstimator {
 public:
  std::string name() const override { return "Oracle"; }
  std::vector<double> fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                  std::span<const std::size_t> test, std::uint64_t seed) const override;
};

/// DevSDEE, ATLM, ABE, LOC and NeuralNet with default settings.
EstimatorList default_estimators(DevSdeeEstimator::Options devsdee = {});

}  // namespace sdee::eval
