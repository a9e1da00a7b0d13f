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
#include <set>
#include <sstream>

#include "support.hpp"

#include "sdee/common/error.hpp"
#include "sdee/common/random.hpp"
#include "sdee/corpus/activity.hpp"
#include "sdee/metrics/correlation.hpp"
#include "sdee/metrics/effort.hpp"

using namespace sdee;
using namespace sdee::metrics;

namespace {

constexpr std::int64_t kMonthSeconds = 2630016;  // 30.44 days

corpus::ReleaseWindow window(const std::string& no, std::int64_t start_s, std::int64_t end_s) {
  return {no, Timestamp{std::chrono::seconds{start_s}}, Timestamp{std::chrono::seconds{end_s}}, 0};
}

corpus::CommitStat commit(const std::string& dev, std::int64_t ts, std::int64_t modified = 0) {
  corpus::CommitStat c;
  c.commit_id = dev + std::to_string(ts);
  c.dev_id = dev;
  c.timestamp = Timestamp{std::chrono::seconds{ts}};
  c.sloc_modified = modified;
  return c;
}

long double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("dev_time is the mean window length in months") {
  const std::int64_t day = 86400;
  const std::vector<corpus::ReleaseWindow> two = {window("a", 0, 61 * day), window("b", 100 * day, 161 * day)};
  CHECK(dev_time(two) == doctest::Approx(61.0 / 30.44).epsilon(1e-12));
  CHECK(dev_time(two) == doctest::Approx(2.004).epsilon(1e-3));
  const std::vector<corpus::ReleaseWindow> zero = {window("a", 5, 5)};
  CHECK(dev_time(zero) == 0.0);
  CHECK_THROWS_AS(dev_time({}), UndefinedMetric);
  const std::vector<corpus::ReleaseWindow> reversed = {window("a", 10, 5)};
  CHECK_THROWS_AS(dev_time(reversed), InputError);
}

TEST_CASE("effort is developers times months") {
  CHECK(effort(4, 2.5) == 10.0);
  CHECK(effort(1, 1.0) == 1.0);
  CHECK_THROWS_AS(effort(0, 5.0), DomainError);
  CHECK_THROWS_AS(effort(2, -1.0), DomainError);
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto d = 1 + static_cast<std::int64_t>(rng.below(20));
    const double t = rng.uniform() * 30;
    CHECK(effort(d + 1, t) >= effort(d, t));
    CHECK(effort(d, t + rng.uniform()) >= effort(d, t));
  }
}

TEST_CASE("rollup averages per-release efforts") {
  corpus::RepositoryActivity act;
  act.owner = "o";
  act.repo = "r";
  // 2 devs x 3 months = 6, 1 dev x 3 months = 3, 3 devs x 1 month = 3
  act.releases.push_back({window("v1", 0, 3 * kMonthSeconds), "v1", {commit("a", 0, 5), commit("b", 10, 7)}});
  act.releases.push_back({window("v2", 3 * kMonthSeconds, 6 * kMonthSeconds), "v1", {commit("a", 4 * kMonthSeconds, 1)}});
  act.releases.push_back({window("v3", 6 * kMonthSeconds, 7 * kMonthSeconds),
                          "v2",
                          {commit("a", 6 * kMonthSeconds + 1), commit("c", 6 * kMonthSeconds + 2),
                           commit("d", 6 * kMonthSeconds + 3)}});
  const auto rec = release_effort_rollup(act);
  REQUIRE(rec.per_release.size() == 3);
  CHECK(rec.per_release[0].effort_pm == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rec.per_release[1].effort_pm == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rec.per_release[2].effort_pm == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rec.effort_pm == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rec.dev_count == 4);
  CHECK(rec.sloc_m == 13);
  CHECK(rec.dev_time_months == doctest::Approx(7.0 / 3.0).epsilon(1e-12));

  corpus::RepositoryActivity single;
  single.releases.push_back({window("v1", 0, 2 * kMonthSeconds), "v1", {commit("a", 0), commit("b", 1)}});
  const auto s = release_effort_rollup(single);
  CHECK(s.effort_pm == doctest::Approx(4.0).epsilon(1e-12));
  // with one release and uniform developers, effort = dev_count x dev_time
  CHECK(s.effort_pm == doctest::Approx(s.dev_count * s.dev_time_months).epsilon(1e-9));

  corpus::RepositoryActivity instant;
  instant.releases.push_back({window("v1", 100, 100), "v1", {commit("a", 100)}});
  CHECK(release_effort_rollup(instant).effort_pm == 0.0);

  CHECK_THROWS_AS(release_effort_rollup(corpus::RepositoryActivity{}), UndefinedMetric);
}

TEST_CASE("rollup scales with window length and ignores commit order") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<corpus::ReleaseInfo> releases;
    std::vector<corpus::CommitStat> commits;
    std::int64_t t = 0;
    const int nrel = 1 + static_cast<int>(rng.below(4));
    for (int r = 0; r < nrel; ++r) {
      const int nc = 1 + static_cast<int>(rng.below(6));
      for (int c = 0; c < nc; ++c) {
        t += 1 + static_cast<std::int64_t>(rng.below(20 * 86400));
        commits.push_back(commit("d" + std::to_string(rng.below(5)), t, static_cast<std::int64_t>(rng.below(40))));
      }
      releases.push_back({"v" + std::to_string(r), Timestamp{std::chrono::seconds{t}}, 0});
    }
    const auto base = release_effort_rollup(corpus::attribute_commits("o", "r", releases, commits));

    auto shuffled = commits;
    rng.shuffle(std::span(shuffled));
    CHECK(release_effort_rollup(corpus::attribute_commits("o", "r", releases, shuffled)) == base);

    const std::int64_t c = 2 + static_cast<std::int64_t>(rng.below(4));
    auto scaled_releases = releases;
    auto scaled_commits = commits;
    for (auto& r : scaled_releases) r.date = Timestamp{r.date.time_since_epoch() * c};
    for (auto& s : scaled_commits) s.timestamp = Timestamp{s.timestamp.time_since_epoch() * c};
    const auto scaled = release_effort_rollup(corpus::attribute_commits("o", "r", scaled_releases, scaled_commits));
    CHECK(scaled.dev_time_months == doctest::Approx(base.dev_time_months * static_cast<double>(c)).epsilon(1e-12));
    CHECK(scaled.effort_pm == doctest::Approx(base.effort_pm * static_cast<double>(c)).epsilon(1e-12));
    CHECK(scaled.dev_count == base.dev_count);
  }
}

TEST_CASE("pearson examples") {
  std::vector<double> x, y, neg;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i + 1.0);
    neg.push_back(-i);
  }
  CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  const std::vector<double> a = {1, 2, 3}, b = {2, 1, 3};
  CHECK(pearson(a, b) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> flat = {2, 2, 2};
  CHECK_THROWS_AS(pearson(a, flat), UndefinedMetric);
  CHECK_THROWS_AS(pearson(a, x), InputError);
  const std::vector<double> one = {1};
  CHECK_THROWS_AS(pearson(one, one), InputError);
}

TEST_CASE("pearson matches the oracle and its symmetries") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal(0, 5);
      y[i] = rng.normal(0, 5) + 0.5 * x[i];
    }
    const double r = pearson(x, y);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(r == doctest::Approx(static_cast<double>(pearson_oracle(x, y))).epsilon(1e-9));
    CHECK(pearson(y, x) == r);
    const double a = rng.below(2) ? 1.0 + rng.uniform() * 10 : -1.0 - rng.uniform() * 10;
    std::vector<double> ax(n);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + 7.0;
    CHECK(pearson(ax, y) == doctest::Approx(a > 0 ? r : -r).epsilon(1e-9));
  }
}

TEST_CASE("fixture effort records and correlations") {
  const auto& c = testing::fixture_corpus();
  const auto records = effort_records(c);
  REQUIRE(records.size() == 60);
  for (const auto& r : records) {
    const auto* repo = c.find(r.owner, r.repo);
    REQUIRE(repo);
    const auto act = corpus::repository_activity(c, *repo);
    std::set<std::string> devs;
    double sum = 0.0;
    for (const auto& rel : act.releases) {
      for (const auto& s : rel.commits) devs.insert(s.dev_id);
      sum += rel.window.end >= rel.window.start ? 0.0 : 1.0;
    }
    CHECK(sum == 0.0);
    CHECK(r.dev_count == static_cast<std::int64_t>(devs.size()));
    CHECK(r.dev_count >= 0);
    CHECK(r.dev_time_months >= 0.0);
    CHECK(r.sloc_m >= 0);
    CHECK(r.effort_pm >= 0.0);
    double mean = 0.0;
    for (const auto& pr : r.per_release) mean += pr.effort_pm;
    CHECK(r.effort_pm == doctest::Approx(mean / static_cast<double>(r.per_release.size())).epsilon(1e-12));
  }
  const auto corr = correlation_report(records);
  for (double v : {corr.sloc_effort, corr.devcount_effort, corr.time_effort}) {
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) <= 1.0);
  }

  auto exact = records;
  for (auto& r : exact) r.effort_pm = static_cast<double>(r.dev_count);
  CHECK(correlation_report(exact).devcount_effort == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(correlation_report(std::span(records).first(1)), InputError);
  auto flat = records;
  for (auto& r : flat) r.sloc_m = 3;
  try {
    correlation_report(flat);
    FAIL("expected UndefinedMetric");
  } catch (const UndefinedMetric& e) {
    CHECK(std::string(e.what()).find("sloc_m") != std::string::npos);
  }
}

TEST_CASE("metrics CSV") {
  EffortRecord r;
  r.owner = "acme";
  r.repo = "zip";
  r.dev_count = 3;
  r.dev_time_months = 2.5;
  r.sloc_m = 1200;
  r.effort_pm = 7.25;
  std::ostringstream out;
  write_metrics_csv(out, std::span(&r, 1));
  CHECK(out.str() == "owner,repo,dev_count,dev_time_months,sloc_m,effort_pm\nacme,zip,3,2.500000,1200,7.250000\n");
}
