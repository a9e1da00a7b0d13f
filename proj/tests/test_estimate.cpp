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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <tuple>

#include "sdee/common/error.hpp"
#include "sdee/corpus/taxonomy.hpp"
#include "sdee/estimate/estimator.hpp"
#include "sdee/estimate/index.hpp"
#include "sdee/estimate/walkerden.hpp"
#include "support.hpp"

using namespace sdee;
using namespace sdee::estimate;

namespace {

struct OracleHit {
  std::string owner, repo;
  double similarity;
};

double dot_cosine(const Eigen::VectorXf& a, const Eigen::VectorXf& b) {
  double dot = 0, na = 0, nb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    dot += double(a[i]) * double(b[i]);
    na += double(a[i]) * double(a[i]);
    nb += double(b[i]) * double(b[i]);
  }
  return dot / std::sqrt(na * nb);
}

// Exhaustive scan written independently of the index.
std::vector<OracleHit> oracle_top_k(const std::vector<IndexEntry>& entries, const Eigen::VectorXf& q, std::size_t k,
                                    double alpha) {
  std::vector<OracleHit> all;
  for (const auto& e : entries) {
    const double s = dot_cosine(q, e.values);
    if (s >= alpha) all.push_back({e.owner, e.repo, s});
  }
  std::sort(all.begin(), all.end(), [](const OracleHit& a, const OracleHit& b) {
    return std::make_tuple(-a.similarity, a.owner, a.repo) < std::make_tuple(-b.similarity, b.owner, b.repo);
  });
  if (all.size() > k) all.resize(k);
  return all;
}

void check_same(const VectorIndex& index, const std::vector<Hit>& got, const std::vector<OracleHit>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& e = index.entries()[got[i].entry];
    CHECK(e.owner == want[i].owner);
    CHECK(e.repo == want[i].repo);
    CHECK(got[i].similarity == doctest::Approx(want[i].similarity).epsilon(1e-12));
  }
}

// Clustered random vectors give many near-ties in reference angle.
VectorIndex synthetic_index(std::mt19937_64& gen, std::size_t n, int dim, std::vector<IndexEntry>* copy) {
  std::normal_distribution<float> nd;
  std::vector<Eigen::VectorXf> centres(5, Eigen::VectorXf(dim));
  for (auto& c : centres)
    for (int i = 0; i < dim; ++i) c[i] = nd(gen);
  std::vector<IndexEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXf v = centres[i % 5];
    for (int d = 0; d < dim; ++d) v[d] += 0.3f * nd(gen);
    entries.push_back({"o" + std::to_string(i % 7), "r" + std::to_string(i), v});
  }
  // exact duplicates exercise the (owner, repo) tie-break
  entries.push_back({"a", "dup2", entries[0].values});
  entries.push_back({"a", "dup1", entries[0].values});
  *copy = entries;
  Eigen::VectorXf ref(dim);
  for (int d = 0; d < dim; ++d) ref[d] = nd(gen);
  return VectorIndex(std::move(entries), ref.normalized());
}

const corpus::CategoryTaxonomy& taxonomy() {
  static const auto t = corpus::CategoryTaxonomy::load(testing::fixture_dir() / "taxonomy.json");
  return t;
}

EstimateRequest compression_request() {
  std::ifstream in(testing::fixture_dir() / "queries" / "compression_library.json");
  return request_from_json(nlohmann::json::parse(in));
}

}  // namespace

TEST_CASE("walkerden weights") {
  CHECK(walkerden(std::vector<double>{6, 3, 3}) == doctest::Approx(4.5));
  CHECK(walkerden(std::vector<double>{9, 3}) == doctest::Approx(7.0));
  CHECK(walkerden(std::vector<double>{42}) == 42.0);
  CHECK(walkerden(std::vector<double>{5, 5, 5, 5}) == doctest::Approx(5.0));
  Eigen::Vector3d v(3, 2, 1);
  CHECK(walkerden(v) == doctest::Approx((9.0 + 4.0 + 1.0) / 6.0));
  CHECK_THROWS_AS(walkerden(std::vector<double>{}), InputError);
}

TEST_CASE("walkerden properties over random inputs") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.1, 500.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 1 + t % 6;
    std::vector<double> e(k);
    for (auto& x : e) x = u(gen);
    const double w = walkerden(e);
    CHECK(w >= *std::min_element(e.begin(), e.end()) - 1e-9);
    CHECK(w <= *std::max_element(e.begin(), e.end()) + 1e-9);
    if (k == 3) CHECK(w == doctest::Approx((3 * e[0] + 2 * e[1] + e[2]) / 6.0).epsilon(1e-12));
    // moving the larger of two neighbours nearer never lowers the estimate
    for (std::size_t i = 0; i + 1 < k; ++i) {
      auto swapped = e;
      if (swapped[i] < swapped[i + 1]) std::swap(swapped[i], swapped[i + 1]);
      CHECK(walkerden(swapped) >= w - 1e-9);
    }
  }
}

TEST_CASE("prefiltered retrieval equals the exhaustive oracle on synthetic data") {
  std::mt19937_64 gen(29);
  std::vector<IndexEntry> copy;
  const auto index = synthetic_index(gen, 1500, 8, &copy);
  std::normal_distribution<float> nd;
  std::uniform_real_distribution<double> ua(-0.5, 0.99);
  std::size_t scored = 0;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXf q = copy[static_cast<std::size_t>(t * 7) % copy.size()].values;
    for (int d = 0; d < q.size(); ++d) q[d] += (t % 3) * 0.2f * nd(gen);
    const std::size_t k = 1 + t % 10;
    const double alpha = t % 4 == 0 ? -1.0 : ua(gen);
    check_same(index, index.top_k(q, k, alpha), oracle_top_k(copy, q, k, alpha));
    check_same(index, index.scan(q, k, alpha), oracle_top_k(copy, q, k, alpha));
    scored += VectorIndex::last_candidates_scored();
  }
  MESSAGE("mean candidates scored " << scored / 200.0 << " of " << index.size());
}

TEST_CASE("retrieval tie-break and availability cap") {
  std::mt19937_64 gen(3);
  std::vector<IndexEntry> copy;
  const auto index = synthetic_index(gen, 50, 4, &copy);
  const auto hits = index.top_k(copy[0].values, 3, 0.0);
  REQUIRE(hits.size() == 3);
  // three identical vectors: ordered by (owner, repo)
  CHECK(index.entries()[hits[0].entry].repo == "dup1");
  CHECK(index.entries()[hits[1].entry].repo == "dup2");
  CHECK(hits[0].similarity == 1.0);
  CHECK(hits[2].similarity == 1.0);
  CHECK(index.top_k(copy[0].values, 5, 0.999999).size() == 3);
  CHECK(index.top_k(copy[0].values, 5, 1.5).empty());
}

TEST_CASE("retrieval input errors") {
  std::vector<IndexEntry> entries{{"a", "b", Eigen::Vector2f(1, 0)}};
  const VectorIndex index(entries, Eigen::Vector2f(0, 1));
  CHECK_THROWS_AS(index.top_k(Eigen::Vector3f(1, 0, 0), 1, 0.0), InputError);
  CHECK_THROWS_AS(index.top_k(Eigen::Vector2f(1, 0), 0, 0.0), InputError);
  CHECK_THROWS_AS(index.top_k(Eigen::Vector2f(0, 0), 1, 0.0), UndefinedMetric);
  std::vector<IndexEntry> bad{{"a", "b", Eigen::Vector3f(1, 0, 0)}};
  CHECK_THROWS_AS(VectorIndex(bad, Eigen::Vector2f(0, 1)), InputError);
  CHECK_THROWS_AS(VectorIndex({}, Eigen::Vector2f(0, 0)), InputError);
  // a lone entry is still found
  CHECK(index.top_k(Eigen::Vector2f(1, 0.1f), 3, -1.0).size() == 1);
}

TEST_CASE("fixture retrieval matches the oracle for 100 queries and is scale invariant") {
  const auto& p = testing::fixture_pipeline();
  const auto index = VectorIndex::from_corpus(*p.corpus);
  const auto& entries = index.entries();
  REQUIRE(entries.size() == p.corpus->repos.size());
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<std::size_t> pick(0, p.corpus->repos.size() - 1);
  std::uniform_real_distribution<double> ua(0.0, 0.95);
  for (int t = 0; t < 100; ++t) {
    // query text: words mixed from two stored descriptions
    const auto& a = p.corpus->repos[pick(gen)].description.tokens;
    const auto& b = p.corpus->repos[pick(gen)].description.tokens;
    std::vector<std::string> tokens(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(a.size() / 2));
    tokens.insert(tokens.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(b.size() / 3));
    const auto q = embed::infer_values(tokens, *p.model);
    const std::size_t k = 1 + t % 5;
    const double alpha = t % 2 ? ua(gen) : -1.0;
    const auto got = index.top_k(q, k, alpha);
    check_same(index, got, oracle_top_k(entries, q, k, alpha));
    const auto scaled = index.top_k((q * 3.25f).eval(), k, alpha);
    REQUIRE(scaled.size() == got.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(scaled[i].entry == got[i].entry);
  }
}

TEST_CASE("estimate retrieves a stored project from its own description") {
  const auto& p = testing::fixture_pipeline();
  const Estimator est(p.corpus, p.model);
  CHECK(est.alpha_hat() == 1.0);
  CHECK(est.model_id() == p.model->id());
  for (std::size_t i = 0; i < est.index().size(); i += 9) {
    const auto& entry = est.index().entries()[i];
    const auto* repo = p.corpus->find(entry.owner, entry.repo);
    REQUIRE(repo);
    EstimateRequest req;
    req.description = repo->description.raw_text;
    req.category = "Software library";
    const auto r = est.estimate(req, 1);
    REQUIRE(r.k_used >= 1);
    CHECK(r.matches[0].similarity == 1.0);
    // identical vectors may exist; the source must be among the exact matches
    bool found = false;
    const auto all = est.estimate(req, 60);
    for (const auto& m : all.matches) found = found || (m.owner == repo->owner && m.repo == repo->repo);
    CHECK(found);
    if (all.k_used == 1) CHECK(r.effort_pm == doctest::Approx(est.effort_of(repo->owner, repo->repo)));
  }
}

TEST_CASE("compression query finds compression libraries") {
  const auto& p = testing::fixture_pipeline();
  const Estimator est(p.corpus, p.model, -1.0);
  const auto req = compression_request();
  req.validate(&taxonomy());
  const auto r = est.estimate(req, 2);
  REQUIRE(r.k_used == 2);
  for (const auto& m : r.matches) {
    const auto* repo = p.corpus->find(m.owner, m.repo);
    REQUIRE(repo);
    CHECK(std::find(repo->categories.begin(), repo->categories.end(), "compression") != repo->categories.end());
  }
  CHECK(r.matches[0].similarity >= r.matches[1].similarity);
  CHECK(r.effort_pm == doctest::Approx((2 * r.matches[0].effort_pm + r.matches[1].effort_pm) / 3.0));
  CHECK_FALSE(r.matches[0].snippet.empty());

  // deterministic
  const auto again = est.estimate(req, 2);
  CHECK(result_to_json(again).dump() == result_to_json(r).dump());
}

TEST_CASE("no similar software carries the best candidate") {
  const auto& p = testing::fixture_pipeline();
  const Estimator est(p.corpus, p.model, 1.5);
  try {
    est.estimate(compression_request(), 2);
    FAIL("expected NoSimilarSoftware");
  } catch (const NoSimilarSoftware& e) {
    REQUIRE(e.best_below_threshold().has_value());
    CHECK(e.best_below_threshold()->similarity < 1.5);
  }
}

TEST_CASE("estimate rejects unusable requests") {
  const auto& p = testing::fixture_pipeline();
  const Estimator est(p.corpus, p.model);
  EstimateRequest req;
  req.category = "Software library";
  req.description = "zzqqxx yyvvww";
  CHECK_THROWS_AS(est.estimate(req), EstimationError);
  req.description = "  ";
  try {
    est.estimate(req);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "description");
  }
  req.description = "compression";
  req.category = "Not a group";
  CHECK_THROWS_AS(est.estimate(req), ValidationError);
  CHECK_THROWS_AS(est.estimate(compression_request(), 0), ValidationError);
}

TEST_CASE("estimator construction checks") {
  const auto& p = testing::fixture_pipeline();
  auto no_alpha = std::make_shared<corpus::Corpus>(*p.corpus);
  no_alpha->alpha_hat.reset();
  CHECK_THROWS_AS(Estimator(no_alpha, p.model), InputError);
  CHECK_NOTHROW(Estimator(no_alpha, p.model, 0.5));
  auto other = std::make_shared<corpus::Corpus>(*p.corpus);
  other->model_id = "pvdbow-other";
  CHECK_THROWS_AS(Estimator(other, p.model), InputError);
}

TEST_CASE("request validation against the taxonomy") {
  auto req = compression_request();
  CHECK_NOTHROW(req.validate(&taxonomy()));
  req.subcategory = "web-server";
  try {
    req.validate(&taxonomy());
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "subcategory");
  }
  req.subcategory = "nope";
  CHECK_THROWS_AS(req.validate(&taxonomy()), ValidationError);
  req.subcategory.clear();
  req.features.push_back({"", " "});
  CHECK_THROWS_AS(req.validate(), ValidationError);
}

TEST_CASE("request json") {
  std::optional<std::size_t> k;
  const auto j = nlohmann::json::parse(
      R"({"title":"t","description":"d","category":"Software library","features":[{"name":"n","description":"x"}],"k":3})");
  const auto r = request_from_json(j, &k);
  CHECK(k == std::optional<std::size_t>(3));
  CHECK(r.features.size() == 1);
  CHECK(request_from_json(request_to_json(r)) == r);
  CHECK(r.document_text() == "t\n\nd\n\nn\nx");

  auto bad = j;
  bad["k"] = 0;
  CHECK_THROWS_AS(request_from_json(bad, &k), ValidationError);
  bad = j;
  bad["languages"] = "C++";
  try {
    request_from_json(bad);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "languages");
  }
  bad = j;
  bad.erase("description");
  CHECK_THROWS_AS(request_from_json(bad), ValidationError);
  CHECK_THROWS_AS(request_from_json(nlohmann::json::array()), ValidationError);
}

TEST_CASE("snippets collapse whitespace and respect UTF-8") {
  CHECK(snippet("  a \n\n b\tc  ") == "a b c");
  CHECK(snippet("abcdef", 3) == "abc");
  // "é" is two bytes; cutting after its first byte drops it
  CHECK(snippet("ab\xC3\xA9", 3) == "ab");
  CHECK(snippet("ab\xC3\xA9", 4) == "ab\xC3\xA9");
  CHECK(snippet("", 10).empty());
}

TEST_CASE("embedding a corpus writes one row per category") {
  const auto& p = testing::fixture_pipeline();
  std::size_t expected = 0;
  for (const auto& r : p.corpus->repos) expected += r.categories.size();
  CHECK(p.corpus->vectors.size() == expected);
  CHECK(p.corpus->reference.size() == 20);
  Eigen::VectorXf ref = Eigen::Map<const Eigen::VectorXf>(p.corpus->reference.data(), 20);
  for (const auto& v : p.corpus->vectors) {
    CHECK(v.vector.size() == 20);
    const Eigen::VectorXf x = Eigen::Map<const Eigen::VectorXf>(v.vector.data(), 20);
    CHECK(std::abs(v.ref_cos_sim - dot_cosine(x, ref)) < 1e-6);
  }
}
