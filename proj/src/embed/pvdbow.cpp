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

#include "sdee/embed/pvdbow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdee/common/error.hpp"
#include "sdee/common/random.hpp"
#include "sdee/embed/cosine.hpp"
#include "sdee/embed/negative_sampling.hpp"

namespace sdee::embed {
namespace {

/// Cumulative unigram^0.75 table for noise-word draws.
class NoiseSampler {
 public:
  explicit NoiseSampler(const Vocabulary& vocab) : cumulative_(vocab.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      acc += std::pow(static_cast<double>(vocab.count(i)), kNoiseExponent);
      cumulative_[i] = acc;
    }
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::uint32_t>(std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1));
  }

  /// A noise word different from `avoid` whenever the vocabulary allows.
  std::uint32_t draw_excluding(Rng& rng, std::uint32_t avoid) const {
    std::uint32_t w = draw(rng);
    for (int tries = 0; w == avoid && cumulative_.size() > 1 && tries < 64; ++tries) w = draw(rng);
    return w;
  }

 private:
  std::vector<double> cumulative_;
};

/// Scratch space for one observation: target ids, gathered target rows and
/// the gradient buffers.
struct StepBuffers {
  explicit StepBuffers(int dim) : ids(1 + kNegatives), targets(1 + kNegatives, dim) {}
  std::vector<std::uint32_t> ids;
  RowMatrixXf targets;
  Eigen::VectorXf grad_doc;
  RowMatrixXf grad_targets;
};

void draw_targets(StepBuffers& buf, std::uint32_t word, const NoiseSampler& noise, Rng& rng,
                  const RowMatrixXf& word_vectors) {
  buf.ids[0] = word;
  for (int j = 1; j <= kNegatives; ++j) buf.ids[j] = noise.draw_excluding(rng, word);
  for (int j = 0; j <= kNegatives; ++j) buf.targets.row(j) = word_vectors.row(buf.ids[j]);
}

double learning_rate(std::uint64_t done, std::uint64_t total) {
  const double progress = total == 0 ? 0.0 : static_cast<double>(done) / static_cast<double>(total);
  return kLearningRateStart - (kLearningRateStart - kLearningRateEnd) * progress;
}

std::uint64_t token_hash(std::span<const std::string> tokens) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& t : tokens) {
    for (const char c : t) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= 0xFF;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-word keep probability under frequent-word subsampling.
std::vector<double> keep_probabilities(const Vocabulary& vocab) {
  double total = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) total += static_cast<double>(vocab.count(i));
  const double threshold = kSubsampleThreshold * total;
  std::vector<double> keep(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const double c = static_cast<double>(vocab.count(i));
    keep[i] = std::min(1.0, (std::sqrt(c / threshold) + 1.0) * threshold / c);
  }
  return keep;
}

bool dropped(const std::vector<double>& keep, std::uint32_t word, Rng& rng) {
  return keep[word] < 1.0 && rng.uniform() >= keep[word];
}

void init_row(Eigen::Ref<Eigen::VectorXf> v, Rng& rng) {
  const auto dim = static_cast<float>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = (static_cast<float>(rng.uniform()) - 0.5f) / dim;
}

}  // namespace

SimilarityModel train(std::span<const Document> docs, const TrainingScenario& scenario, TrainingTrace* trace) {
  if (docs.empty()) throw TrainingError("cannot train on an empty corpus");
  scenario.validate(docs.size());
  const std::size_t samples =
      scenario.training_samples == 0 ? docs.size() : static_cast<std::size_t>(scenario.training_samples);
  const auto training = docs.subspan(0, samples);
  for (const auto& d : training) {
    if (d.tokens.empty()) throw TrainingError("document '" + d.id + "' has no tokens");
  }

  SimilarityModel model;
  model.scenario = scenario;
  model.scenario.training_samples = static_cast<int>(samples);
  model.vocab = Vocabulary::build(training, kMinWordCount);
  if (model.vocab.size() == 0) throw TrainingError("no word occurs at least twice; vocabulary is empty");

  std::vector<std::vector<std::uint32_t>> encoded;
  std::uint64_t total_tokens = 0;
  for (const auto& d : training) {
    encoded.push_back(model.vocab.encode(d.tokens));
    if (encoded.back().empty()) throw TrainingError("document '" + d.id + "' has no in-vocabulary tokens");
    total_tokens += encoded.back().size();
    model.doc_ids.push_back(d.id);
  }

  const int dim = scenario.vector_size;
  Rng rng(scenario.seed);
  model.doc_vectors.resize(static_cast<Eigen::Index>(samples), dim);
  for (Eigen::Index r = 0; r < model.doc_vectors.rows(); ++r) {
    Eigen::VectorXf row(dim);
    init_row(row, rng);
    model.doc_vectors.row(r) = row.transpose();
  }
  model.word_vectors = RowMatrixXf::Zero(static_cast<Eigen::Index>(model.vocab.size()), dim);

  const NoiseSampler noise(model.vocab);
  const auto keep = keep_probabilities(model.vocab);
  StepBuffers buf(dim);
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), 0);
  const std::uint64_t total_steps = total_tokens * static_cast<std::uint64_t>(scenario.epochs);
  std::uint64_t done = 0;
  Eigen::VectorXf doc(dim);

  for (int epoch = 0; epoch < scenario.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::uint64_t observed = 0;
    for (const std::size_t d : order) {
      for (const std::uint32_t word : encoded[d]) {
        const auto lr = static_cast<float>(learning_rate(done++, total_steps));
        if (dropped(keep, word, rng)) continue;
        ++observed;
        draw_targets(buf, word, noise, rng, model.word_vectors);
        doc = model.doc_vectors.row(static_cast<Eigen::Index>(d)).transpose();
        loss_sum += negative_sampling_loss(doc, buf.targets, &buf.grad_doc, &buf.grad_targets);
        for (int j = 0; j <= kNegatives; ++j) model.word_vectors.row(buf.ids[j]) -= lr * buf.grad_targets.row(j);
        model.doc_vectors.row(static_cast<Eigen::Index>(d)) -= lr * buf.grad_doc.transpose();
      }
    }
    if (trace) trace->epoch_loss.push_back(observed == 0 ? 0.0 : loss_sum / static_cast<double>(observed));
    if (!model.doc_vectors.allFinite() || !model.word_vectors.allFinite()) {
      throw TrainingError("non-finite weights after epoch " + std::to_string(epoch + 1));
    }
  }
  return model;
}

Eigen::VectorXf infer_values(std::span<const std::string> tokens, const SimilarityModel& model) {
  const auto ids = model.vocab.encode(tokens);
  if (ids.empty()) throw OutOfVocabulary("none of the description's words are in the model vocabulary");
  const int dim = model.dim();
  Rng rng(derive_seed(model.scenario.seed, token_hash(tokens)));
  Eigen::VectorXf doc(dim);
  init_row(doc, rng);

  const NoiseSampler noise(model.vocab);
  const auto keep = keep_probabilities(model.vocab);
  StepBuffers buf(dim);
  const std::uint64_t total_steps = ids.size() * static_cast<std::uint64_t>(kInferenceEpochs);
  std::uint64_t done = 0;
  for (int epoch = 0; epoch < kInferenceEpochs; ++epoch) {
    for (const std::uint32_t word : ids) {
      const auto lr = static_cast<float>(learning_rate(done++, total_steps));
      if (dropped(keep, word, rng)) continue;
      draw_targets(buf, word, noise, rng, model.word_vectors);
      negative_sampling_loss(doc, buf.targets, &buf.grad_doc, nullptr);
      doc -= lr * buf.grad_doc;
    }
  }
  return doc;
}

EmbeddingVector infer_vector(std::span<const std::string> tokens, const SimilarityModel& model,
                             const Eigen::VectorXf& reference) {
  EmbeddingVector v{infer_values(tokens, model), 0.0};
  v.ref_cos_sim = cosine(v.values, reference);
  return v;
}

}  // namespace sdee::embed
