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
#include <string>
#include <vector>

#include "json.hpp"
#include "sdee/common/error.hpp"
#include "sdee/corpus/taxonomy.hpp"
#include "sdee/corpus/types.hpp"
#include "sdee/embed/model.hpp"
#include "sdee/estimate/index.hpp"

namespace sdee::estimate {

inline constexpr std::size_t kDefaultK = 2;

struct Feature {
  std::string name;
  std::string description;
  bool operator==(const Feature&) const = default;
};

struct EstimateRequest {
  std::string title;
  std::string description;
  std::vector<std::string> languages;
  std::string category;     // one of the 11 abstract groups
  std::string subcategory;  // category id; optional
  std::vector<std::string> operating_systems;
  std::vector<Feature> features;

  /// Title, description, then each feature's name and description, one
  /// paragraph each.
  std::string document_text() const;

  /// Throws ValidationError naming the first offending field. When a
  /// taxonomy is given, a non-empty subcategory must belong to `category`.
  void validate(const corpus::CategoryTaxonomy* taxonomy = nullptr) const;

  bool operator==(const EstimateRequest&) const = default;
};

/// Parses the HTTP/CLI request body; "k" is returned separately. Throws
/// ValidationError for a wrongly typed or missing required field.
EstimateRequest request_from_json(const nlohmann::json& j, std::optional<std::size_t>* k = nullptr);
nlohmann::json request_to_json(const EstimateRequest& request);

struct Match {
  std::string owner;
  std::string repo;
  double similarity = 0.0;
  double effort_pm = 0.0;
  std::string snippet;
  bool operator==(const Match&) const = default;
};

struct EstimateResult {
  double effort_pm = 0.0;
  std::size_t k_used = 0;
  std::vector<Match> matches;  // most similar first
  double alpha_hat = 0.0;
  std::string model_id;
};

nlohmann::json result_to_json(const EstimateResult& result);
nlohmann::json match_to_json(const Match& match);

/// No stored project reaches the similarity threshold. Carries the best
/// sub-threshold candidate, when there is one, for diagnostics.
class NoSimilarSoftware : public Error {
 public:
  NoSimilarSoftware(std::optional<Match> best, double alpha_hat);
  const std::optional<Match>& best_below_threshold() const noexcept { return best_; }

 private:
  std::optional<Match> best_;
};

/// The description shares no word with the model vocabulary.
class EstimationError : public InputError {
 public:
  using InputError::InputError;
};

/// Immutable estimation context: a calibrated model plus the indexed store.
/// Safe for concurrent estimate calls.
class Estimator {
 public:
  /// Indexes every stored vector whose repository has an effort record.
  /// Threshold: `alpha_override` if given, else the store's calibrated
  /// alpha-hat; throws InputError when neither exists.
  Estimator(std::shared_ptr<const corpus::Corpus> corpus, std::shared_ptr<const embed::SimilarityModel> model,
            std::optional<double> alpha_override = std::nullopt);

  EstimateResult estimate(const EstimateRequest& request, std::size_t k = kDefaultK) const;

  /// Retrieval and aggregation for an already embedded query.
  EstimateResult estimate_vector(const Eigen::VectorXf& query, std::size_t k = kDefaultK) const;

  double alpha_hat() const { return alpha_hat_; }
  const std::string& model_id() const { return model_id_; }
  const VectorIndex& index() const { return index_; }
  const corpus::Corpus& corpus() const { return *corpus_; }
  const embed::SimilarityModel& model() const { return *model_; }
  /// Effort of an indexed repository.
  double effort_of(const std::string& owner, const std::string& repo) const;

 private:
  Match make_match(const Hit& hit) const;

  std::shared_ptr<const corpus::Corpus> corpus_;
  std::shared_ptr<const embed::SimilarityModel> model_;
  VectorIndex index_;
  std::vector<double> effort_;  // parallel to index_.entries()
  std::vector<std::string> snippet_;
  double alpha_hat_ = 0.0;
  std::string model_id_;
};

/// Fills `corpus.vectors` (one row per repository and category), the
/// reference vector and the model id by inferring every description with
/// `model`. Repositories whose description is out of vocabulary are skipped
/// and returned by key.
std::vector<std::string> embed_corpus(corpus::Corpus& corpus, const embed::SimilarityModel& model,
                                      std::uint64_t reference_seed);

/// One training document per repository description, keyed "owner/repo".
std::vector<embed::Document> corpus_documents(const corpus::Corpus& corpus);

/// Description snippet used in match listings: the first `max_chars` bytes
/// of the whitespace-collapsed raw text, cut at a UTF-8 boundary.
std::string snippet(const std::string& raw_text, std::size_t max_chars = 160);

}  // namespace sdee::estimate
