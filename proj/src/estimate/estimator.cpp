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

#include "sdee/estimate/estimator.hpp"

#include <map>

#include "sdee/corpus/tokenize.hpp"
#include "sdee/embed/cosine.hpp"
#include "sdee/embed/pvdbow.hpp"
#include "sdee/estimate/walkerden.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::estimate {

namespace {

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

template <typename T>
T field(const nlohmann::json& j, const char* name, bool required) {
  if (!j.contains(name) || j.at(name).is_null()) {
    if (required) throw ValidationError(name, "is required");
    return T{};
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(name, "has the wrong type");
  }
}

}  // namespace

std::string EstimateRequest::document_text() const {
  std::string text = title;
  text += "\n\n";
  text += description;
  for (const auto& f : features) {
    text += "\n\n";
    text += f.name;
    text += "\n";
    text += f.description;
  }
  return text;
}

void EstimateRequest::validate(const corpus::CategoryTaxonomy* taxonomy) const {
  if (blank(description)) throw ValidationError("description", "must not be empty");
  if (!corpus::is_abstract_group(category)) throw ValidationError("category", "unknown category '" + category + "'");
  if (taxonomy && !subcategory.empty()) {
    const auto* c = taxonomy->find(subcategory);
    if (!c) throw ValidationError("subcategory", "unknown subcategory '" + subcategory + "'");
    if (c->abstract_group != category) {
      throw ValidationError("subcategory", "'" + subcategory + "' does not belong to '" + category + "'");
    }
  }
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (blank(features[i].name) && blank(features[i].description)) {
      throw ValidationError("features[" + std::to_string(i) + "]", "must have a name or a description");
    }
  }
}

EstimateRequest request_from_json(const nlohmann::json& j, std::optional<std::size_t>* k) {
  if (!j.is_object()) throw ValidationError("body", "must be a JSON object");
  EstimateRequest r;
  r.title = field<std::string>(j, "title", false);
  r.description = field<std::string>(j, "description", true);
  r.languages = field<std::vector<std::string>>(j, "languages", false);
  r.category = field<std::string>(j, "category", true);
  r.subcategory = field<std::string>(j, "subcategory", false);
  r.operating_systems = field<std::vector<std::string>>(j, "operating_systems", false);
  if (j.contains("features") && !j.at("features").is_null()) {
    if (!j.at("features").is_array()) throw ValidationError("features", "must be an array");
    for (std::size_t i = 0; i < j.at("features").size(); ++i) {
      const auto& f = j.at("features").at(i);
      const std::string name = "features[" + std::to_string(i) + "]";
      if (!f.is_object()) throw ValidationError(name, "must be an object");
      try {
        r.features.push_back({f.value("name", std::string{}), f.value("description", std::string{})});
      } catch (const nlohmann::json::exception&) {
        throw ValidationError(name, "has the wrong type");
      }
    }
  }
  if (k) {
    k->reset();
    if (j.contains("k") && !j.at("k").is_null()) {
      const auto& v = j.at("k");
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ValidationError("k", "must be a positive integer");
      *k = v.get<std::size_t>();
    }
  }
  return r;
}

nlohmann::json request_to_json(const EstimateRequest& r) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : r.features) features.push_back({{"name", f.name}, {"description", f.description}});
  return {{"title", r.title},
          {"description", r.description},
          {"languages", r.languages},
          {"category", r.category},
          {"subcategory", r.subcategory},
          {"operating_systems", r.operating_systems},
          {"features", features}};
}

nlohmann::json match_to_json(const Match& m) {
  return {{"owner", m.owner},
          {"repo", m.repo},
          {"similarity", m.similarity},
          {"effort_person_months", m.effort_pm},
          {"snippet", m.snippet}};
}

nlohmann::json result_to_json(const EstimateResult& r) {
  nlohmann::json matches = nlohmann::json::array();
  for (const auto& m : r.matches) matches.push_back(match_to_json(m));
  return {{"effort_person_months", r.effort_pm},
          {"k_used", r.k_used},
          {"alpha_hat", r.alpha_hat},
          {"model_id", r.model_id},
          {"matches", matches}};
}

NoSimilarSoftware::NoSimilarSoftware(std::optional<Match> best, double alpha_hat)
    : Error(best ? "no similar software at or above threshold " + std::to_string(alpha_hat) + " (best: " + best->owner +
                       "/" + best->repo + " at " + std::to_string(best->similarity) + ")"
                 : "no similar software: the store holds no comparable project"),
      best_(std::move(best)) {}

Estimator::Estimator(std::shared_ptr<const corpus::Corpus> corpus, std::shared_ptr<const embed::SimilarityModel> model,
                     std::optional<double> alpha_override)
    : corpus_(std::move(corpus)), model_(std::move(model)) {
  if (!corpus_ || !model_) throw InputError("estimator needs a corpus and a model");
  model_id_ = model_->id();
  if (!corpus_->model_id.empty() && corpus_->model_id != model_id_) {
    throw InputError("store vectors were built with model " + corpus_->model_id + ", but model " + model_id_ +
                     " was loaded");
  }
  if (alpha_override) {
    alpha_hat_ = *alpha_override;
  } else if (corpus_->alpha_hat) {
    alpha_hat_ = *corpus_->alpha_hat;
  } else {
    throw InputError("store has no calibrated threshold; run calibrate or pass an explicit alpha");
  }
  if (corpus_->reference.size() != static_cast<std::size_t>(model_->dim())) {
    throw InputError("store reference vector does not match the model dimension");
  }

  std::map<std::pair<std::string, std::string>, double> efforts;
  for (const auto& e : metrics::effort_records(*corpus_)) efforts[{e.owner, e.repo}] = e.effort_pm;

  auto full = VectorIndex::from_corpus(*corpus_);
  std::vector<IndexEntry> kept;
  for (const auto& e : full.entries()) {
    if (efforts.count({e.owner, e.repo})) kept.push_back(e);
  }
  index_ = VectorIndex(std::move(kept), full.reference());
  for (const auto& e : index_.entries()) {
    effort_.push_back(efforts.at({e.owner, e.repo}));
    const auto* repo = corpus_->find(e.owner, e.repo);
    snippet_.push_back(repo ? snippet(repo->description.raw_text) : std::string{});
  }
}

double Estimator::effort_of(const std::string& owner, const std::string& repo) const {
  for (std::size_t i = 0; i < index_.size(); ++i) {
    if (index_.entries()[i].owner == owner && index_.entries()[i].repo == repo) return effort_[i];
  }
  throw InputError("repository not indexed: " + owner + "/" + repo);
}

Match Estimator::make_match(const Hit& hit) const {
  const auto& e = index_.entries()[hit.entry];
  return {e.owner, e.repo, hit.similarity, effort_[hit.entry], snippet_[hit.entry]};
}

EstimateResult Estimator::estimate_vector(const Eigen::VectorXf& query, std::size_t k) const {
  const auto hits = index_.top_k(query, k, alpha_hat_);
  if (hits.empty()) {
    const auto best = index_.top_k(query, 1, -1.0);
    throw NoSimilarSoftware(best.empty() ? std::nullopt : std::optional<Match>(make_match(best.front())), alpha_hat_);
  }
  EstimateResult r;
  r.alpha_hat = alpha_hat_;
  r.model_id = model_id_;
  std::vector<double> efforts;
  for (const auto& h : hits) {
    r.matches.push_back(make_match(h));
    efforts.push_back(effort_[h.entry]);
  }
  r.k_used = r.matches.size();
  r.effort_pm = walkerden(std::span<const double>(efforts));
  return r;
}

EstimateResult Estimator::estimate(const EstimateRequest& request, std::size_t k) const {
  request.validate();
  if (k == 0) throw ValidationError("k", "must be a positive integer");
  const auto tokens = corpus::tokenize(request.document_text());
  Eigen::VectorXf query;
  try {
    query = embed::infer_values(tokens, *model_);
  } catch (const OutOfVocabulary&) {
    throw EstimationError(
        "the description shares no words with the model vocabulary; describe the product's purpose and features in "
        "more detail");
  }
  return estimate_vector(query, k);
}

std::vector<std::string> embed_corpus(corpus::Corpus& corpus, const embed::SimilarityModel& model,
                                      std::uint64_t reference_seed) {
  const auto reference = embed::make_reference_vector(model.dim(), reference_seed);
  corpus.reference.assign(reference.data(), reference.data() + reference.size());
  corpus.model_id = model.id();
  corpus.vectors.clear();
  std::vector<std::string> skipped;
  for (const auto& repo : corpus.repos) {
    embed::EmbeddingVector v;
    try {
      v = embed::infer_vector(repo.description.tokens, model, reference);
    } catch (const OutOfVocabulary&) {
      skipped.push_back(repo.key());
      continue;
    }
    std::vector<float> values(v.values.data(), v.values.data() + v.values.size());
    for (const auto& category : repo.categories) {
      corpus.vectors.push_back({repo.owner, repo.repo, category, values, v.ref_cos_sim});
    }
  }
  return skipped;
}

std::vector<embed::Document> corpus_documents(const corpus::Corpus& corpus) {
  std::vector<embed::Document> docs;
  docs.reserve(corpus.repos.size());
  for (const auto& repo : corpus.repos) docs.push_back({repo.key(), repo.description.tokens});
  return docs;
}

std::string snippet(const std::string& raw_text, std::size_t max_chars) {
  std::string out;
  bool space = false;
  for (const char c : raw_text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
    if (out.size() >= max_chars) break;
  }
  if (out.size() > max_chars) out.resize(max_chars);
  // Do not end inside a multi-byte sequence.
  std::size_t cut = out.size();
  while (cut > 0 && (static_cast<unsigned char>(out[cut - 1]) & 0xC0) == 0x80) --cut;
  if (cut > 0 && (static_cast<unsigned char>(out[cut - 1]) & 0x80)) {
    const unsigned char lead = static_cast<unsigned char>(out[cut - 1]);
    const std::size_t need = lead >= 0xF0 ? 4 : lead >= 0xE0 ? 3 : lead >= 0xC0 ? 2 : 1;
    if (out.size() - (cut - 1) < need) out.resize(cut - 1);
  }
  return out;
}

}  // namespace sdee::estimate
