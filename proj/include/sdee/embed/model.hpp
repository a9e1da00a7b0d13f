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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sdee::embed {

using RowMatrixXf = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Fixed PV-DBOW settings.
inline constexpr int kNegatives = 5;
inline constexpr double kLearningRateStart = 0.025;
inline constexpr double kLearningRateEnd = 0.0001;
inline constexpr int kInferenceEpochs = 50;
inline constexpr std::uint64_t kMinWordCount = 2;
inline constexpr double kNoiseExponent = 0.75;
/// Frequent-word subsampling: a word making up fraction f of the training
/// tokens is kept with probability (sqrt(f / t) + 1) * t / f, t = this.
inline constexpr double kSubsampleThreshold = 1e-3;

struct TrainingScenario {
  int epochs = 10;
  int vector_size = 50;
  /// Number of leading documents trained on; 0 means all of them.
  int training_samples = 0;
  std::uint64_t seed = 1;

  /// Throws InputError unless epochs >= 1, vector_size >= 1 and
  /// 1 <= training_samples <= corpus_size (after resolving 0).
  void validate(std::size_t corpus_size) const;
  bool operator==(const TrainingScenario&) const = default;
};

struct Document {
  std::string id;
  std::vector<std::string> tokens;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> words, std::vector<std::uint64_t> counts);

  /// Words seen at least `min_count` times, most frequent first, ties by
  /// byte order.
  static Vocabulary build(std::span<const Document> docs, std::uint64_t min_count);

  std::optional<std::uint32_t> find(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }

  /// In-vocabulary ids of `tokens`, in order; unknown words are skipped.
  std::vector<std::uint32_t> encode(std::span<const std::string> tokens) const;

  bool operator==(const Vocabulary& o) const { return words_ == o.words_ && counts_ == o.counts_; }

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// A trained paragraph-vector model. `word_vectors` are the output
/// (context) weights of PV-DBOW; they stay frozen during inference.
struct SimilarityModel {
  Vocabulary vocab;
  RowMatrixXf word_vectors;  // |vocab| x dim
  RowMatrixXf doc_vectors;   // samples x dim
  TrainingScenario scenario;
  std::vector<std::string> doc_ids;

  int dim() const { return scenario.vector_size; }
  /// Stable identifier derived from the scenario and a hash of the weights.
  std::string id() const;
  bool operator==(const SimilarityModel& o) const;
};

struct EmbeddingVector {
  Eigen::VectorXf values;
  double ref_cos_sim = 0.0;
};

/// Seeded random unit vector used as the fixed reference direction of a
/// corpus.
Eigen::VectorXf make_reference_vector(int dim, std::uint64_t seed);

}  // namespace sdee::embed
