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

#include <span>
#include <string>
#include <vector>

#include "sdee/embed/model.hpp"

namespace sdee::embed {

struct TrainingTrace {
  std::vector<double> epoch_loss;  // mean negative-sampling loss per observation
};

/// PV-DBOW with negative sampling: every document vector is trained to
/// predict the words of its document against `kNegatives` noise words drawn
/// from the unigram^0.75 distribution, learning rate decaying linearly from
/// `kLearningRateStart` to `kLearningRateEnd`, frequent words subsampled
/// at `kSubsampleThreshold`. Single-threaded and fully
/// determined by the scenario seed.
///
/// Throws TrainingError for an empty corpus, or naming the document when a
/// document has no tokens (or none that survive the vocabulary floor).
SimilarityModel train(std::span<const Document> docs, const TrainingScenario& scenario,
                      TrainingTrace* trace = nullptr);

/// Fits a fresh document vector for `tokens` against the frozen word
/// vectors for `kInferenceEpochs` passes. The start vector and noise draws
/// are seeded from the model seed and the token sequence, so identical text
/// always yields an identical vector.
///
/// Throws OutOfVocabulary when no token is in the model vocabulary.
Eigen::VectorXf infer_values(std::span<const std::string> tokens, const SimilarityModel& model);

/// `infer_values` plus the cosine against the corpus reference vector.
EmbeddingVector infer_vector(std::span<const std::string> tokens, const SimilarityModel& model,
                             const Eigen::VectorXf& reference);

}  // namespace sdee::embed
