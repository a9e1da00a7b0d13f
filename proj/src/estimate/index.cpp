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

#include "sdee/estimate/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "sdee/common/error.hpp"
#include "sdee/embed/cosine.hpp"

namespace sdee::estimate {

namespace {

// Slack on the angular bound; covers rounding in acos near +-1.
constexpr double kBoundMargin = 1e-6;

thread_local std::size_t t_last_scored = 0;

bool ranks_before(const std::vector<IndexEntry>& entries, const Hit& a, const Hit& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  const auto& ea = entries[a.entry];
  const auto& eb = entries[b.entry];
  return std::tie(ea.owner, ea.repo) < std::tie(eb.owner, eb.repo);
}

}  // namespace

VectorIndex::VectorIndex(std::vector<IndexEntry> entries, Eigen::VectorXf reference)
    : reference_(std::move(reference)) {
  if (reference_.size() == 0 || reference_.squaredNorm() == 0.0f) throw InputError("index reference vector is empty");
  std::vector<std::pair<double, IndexEntry>> keyed;
  keyed.reserve(entries.size());
  for (auto& e : entries) {
    if (e.values.size() != reference_.size()) {
      throw InputError("vector for " + e.owner + "/" + e.repo + " has dimension " + std::to_string(e.values.size()) +
                       ", index expects " + std::to_string(reference_.size()));
    }
    if (e.values.squaredNorm() == 0.0f) continue;
    const double r = embed::cosine(e.values, reference_);
    keyed.emplace_back(r, std::move(e));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [r, e] : keyed) {
    ref_cos_.push_back(r);
    angle_.push_back(std::acos(r));
    entries_.push_back(std::move(e));
  }
}

VectorIndex VectorIndex::from_corpus(const corpus::Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, const corpus::DescVectorRow*> unique;
  for (const auto& v : corpus.vectors) unique.emplace(std::make_pair(v.owner, v.repo), &v);
  std::vector<IndexEntry> entries;
  for (const auto& [key, row] : unique) {
    IndexEntry e{key.first, key.second,
                 Eigen::Map<const Eigen::VectorXf>(row->vector.data(), static_cast<Eigen::Index>(row->vector.size()))};
    entries.push_back(std::move(e));
  }
  Eigen::VectorXf ref =
      Eigen::Map<const Eigen::VectorXf>(corpus.reference.data(), static_cast<Eigen::Index>(corpus.reference.size()));
  return VectorIndex(std::move(entries), std::move(ref));
}

std::vector<Hit> VectorIndex::scan(const Eigen::VectorXf& query, std::size_t k, double alpha) const {
  if (k == 0) throw InputError("k must be at least 1");
  if (query.size() != reference_.size()) throw InputError("query dimension does not match the index");
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double s = embed::cosine(query, entries_[i].values);
    if (s >= alpha) hits.push_back({i, s});
  }
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) { return ranks_before(entries_, a, b); });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

std::vector<Hit> VectorIndex::top_k(const Eigen::VectorXf& query, std::size_t k, double alpha) const {
  if (k == 0) throw InputError("k must be at least 1");
  if (query.size() != reference_.size()) throw InputError("query dimension does not match the index");
  const double rq = embed::cosine(query, reference_);
  const double theta_q = std::acos(rq);
  const std::size_t n = entries_.size();
  t_last_scored = 0;

  // [lo, hi) is the scored window in reference-cosine order.
  const auto centre = static_cast<std::size_t>(std::lower_bound(ref_cos_.begin(), ref_cos_.end(), rq) - ref_cos_.begin());
  std::size_t lo = centre, hi = centre;
  std::vector<Hit> hits;
  auto score = [&](std::size_t i) {
    const double s = embed::cosine(query, entries_[i].values);
    ++t_last_scored;
    if (s >= alpha) hits.push_back({i, s});
  };
  // Upper bound on the cosine of any entry outside the window.
  auto outside_bound = [&]() {
    double bound = -2.0;
    if (lo > 0) bound = std::max(bound, std::cos(std::abs(theta_q - angle_[lo - 1])));
    if (hi < n) bound = std::max(bound, std::cos(std::abs(angle_[hi] - theta_q)));
    return bound;
  };

  double band = kInitialBand;
  while (true) {
    while (lo > 0 && rq - ref_cos_[lo - 1] <= band) score(--lo);
    while (hi < n && ref_cos_[hi] - rq <= band) score(hi++);
    const bool widened_enough = t_last_scored >= std::min(n, 4 * k);
    if (widened_enough) {
      if (lo == 0 && hi == n) break;
      const double bound = outside_bound() + kBoundMargin;
      if (bound < alpha) break;
      if (hits.size() >= k) {
        std::nth_element(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k - 1), hits.end(),
                         [&](const Hit& a, const Hit& b) { return ranks_before(entries_, a, b); });
        if (hits[k - 1].similarity > bound) break;
      }
    }
    band *= 2.0;
  }
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) { return ranks_before(entries_, a, b); });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

std::size_t VectorIndex::last_candidates_scored() { return t_last_scored; }

}  // namespace sdee::estimate
