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

#include "sdee/eval/estimators.hpp"

#include <map>

#include "sdee/baselines/atlm.hpp"
#include "sdee/baselines/knn.hpp"
#include "sdee/common/random.hpp"
#include "sdee/corpus/clean.hpp"
#include "sdee/embed/pvdbow.hpp"
#include "sdee/estimate/index.hpp"
#include "sdee/estimate/walkerden.hpp"

namespace sdee::eval {

namespace {

baselines::FeatureMatrix features(const Dataset& data, std::span<const std::size_t> rows, bool loc_only) {
  std::vector<metrics::EffortRecord> picked;
  picked.reserve(rows.size());
  for (const auto r : rows) picked.push_back(data.records.at(r));
  return loc_only ? baselines::FeatureMatrix::loc_only(picked) : baselines::FeatureMatrix::from_records(picked);
}

}  // namespace

std::vector<double> Dataset::targets() const {
  std::vector<double> t;
  t.reserve(records.size());
  for (const auto& r : records) t.push_back(r.effort_pm);
  return t;
}

std::vector<double> Dataset::targets(std::span<const std::size_t> rows) const {
  std::vector<double> t;
  t.reserve(rows.size());
  for (const auto r : rows) t.push_back(records.at(r).effort_pm);
  return t;
}

Dataset Dataset::from_corpus(const corpus::Corpus& corpus) {
  Dataset d;
  std::map<std::pair<std::string, std::string>, metrics::EffortRecord> by_key;
  const auto all = metrics::effort_records(corpus);
  for (auto& r : corpus::clean_dataset(all)) by_key.emplace(std::make_pair(r.owner, r.repo), std::move(r));
  for (const auto& repo : corpus.repos) {
    const auto it = by_key.find({repo.owner, repo.repo});
    if (it == by_key.end()) continue;
    d.records.push_back(it->second);
    d.docs.push_back({repo.key(), repo.description.tokens});
  }
  return d;
}

DevSdeeEstimator::DevSdeeEstimator() = default;
DevSdeeEstimator::DevSdeeEstimator(Options options) : options_(std::move(options)) {}

std::vector<double> DevSdeeEstimator::fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                                  std::span<const std::size_t> test, std::uint64_t seed) const {
  if (data.docs.size() != data.records.size()) throw InputError("DevSDEE needs a description for every record");
  if (train.empty()) throw InputError("DevSDEE needs training rows");
  std::shared_ptr<const embed::SimilarityModel> model = options_.fixed_model;
  if (!model) {
    std::vector<embed::Document> docs;
    for (const auto r : train) docs.push_back(data.docs[r]);
    auto scenario = options_.scenario;
    scenario.seed = seed;
    scenario.training_samples = 0;
    model = std::make_shared<embed::SimilarityModel>(embed::train(docs, scenario));
  }

  std::vector<estimate::IndexEntry> entries;
  std::vector<double> efforts;
  for (const auto r : train) {
    try {
      entries.push_back({data.records[r].owner, data.records[r].repo, embed::infer_values(data.docs[r].tokens, *model)});
    } catch (const OutOfVocabulary&) {
      continue;
    }
  }
  if (entries.empty()) throw InputError("no training description could be embedded");
  const auto reference = embed::make_reference_vector(model->dim(), seed);
  const estimate::VectorIndex index(std::move(entries), reference);
  std::map<std::pair<std::string, std::string>, double> effort_of;
  for (const auto r : train) effort_of[{data.records[r].owner, data.records[r].repo}] = data.records[r].effort_pm;

  const double alpha = options_.alpha.value_or(-1.0);
  std::vector<double> out;
  for (const auto r : test) {
    const auto q = embed::infer_values(data.docs[r].tokens, *model);
    const auto hits = index.top_k(q, options_.k, alpha);
    if (hits.empty()) throw UndefinedMetric("no training project reaches the similarity threshold");
    std::vector<double> e;
    for (const auto& h : hits) {
      const auto& entry = index.entries()[h.entry];
      e.push_back(effort_of.at({entry.owner, entry.repo}));
    }
    out.push_back(estimate::walkerden(std::span<const double>(e)));
  }
  return out;
}

std::vector<double> AtlmEstimator::fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                               std::span<const std::size_t> test, std::uint64_t) const {
  const auto fit = baselines::atlm_fit(features(data, train, false));
  const auto q = features(data, test, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < q.size(); ++i) out.push_back(fit.predict(q.rows.row(i).transpose()));
  return out;
}

std::vector<double> AbeEstimator::fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                              std::span<const std::size_t> test, std::uint64_t) const {
  const baselines::KnnEstimator knn(features(data, train, false));
  const auto q = features(data, test, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    out.push_back(knn.predict(q.rows.row(i).transpose(), static_cast<Eigen::Index>(k_)));
  }
  return out;
}

std::vector<double> LocEstimator::fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                              std::span<const std::size_t> test, std::uint64_t) const {
  const baselines::KnnEstimator knn(features(data, train, true));
  const auto q = features(data, test, true);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    out.push_back(knn.predict(q.rows.row(i).transpose(), static_cast<Eigen::Index>(k_)));
  }
  return out;
}

std::vector<double> MlpEstimator::fit_predict(const Dataset& data, std::span<const std::size_t> train,
                                              std::span<const std::size_t> test, std::uint64_t seed) const {
  auto options = options_;
  options.seed = seed;
  const auto net = baselines::mlp_fit(features(data, train, false), options);
  const auto q = features(data, test, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < q.size(); ++i) out.push_back(net.predict(q.rows.row(i).transpose()));
  return out;
}

std::vector<double> PerfectOracle::fit_predict(const Dataset& data, std::span<const std::size_t>,
                                               std::span<const std::size_t> test, std::uint64_t) const {
  return data.targets(test);
}

EstimatorList default_estimators(DevSdeeEstimator::Options devsdee) {
  return {std::make_shared<DevSdeeEstimator>(std::move(devsdee)), std::make_shared<AtlmEstimator>(),
          std::make_shared<AbeEstimator>(), std::make_shared<LocEstimator>(), std::make_shared<MlpEstimator>()};
}

}  // namespace sdee::eval
