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
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sdee/eval/effect.hpp"
#include "sdee/eval/error_metrics.hpp"
#include "sdee/eval/estimators.hpp"
#include "sdee/eval/protocols.hpp"
#include "support.hpp"

using namespace sdee;
using namespace sdee::eval;

namespace {

using V = std::vector<double>;

// Brute-force oracles, written directly from the definitions.
double o_mean(const V& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}
double o_var(const V& v) {
  const double m = o_mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}
double o_cliff(const V& a, const V& b) {
  long gt = 0, lt = 0;
  for (double x : a)
    for (double y : b) {
      gt += x > y;
      lt += x < y;
    }
  return double(gt - lt) / (a.size() * b.size());
}
double o_median(V v) {
  // selection by counting: the element with the right rank
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

V random_vec(std::mt19937_64& g, std::size_t n, double lo, double hi, bool integer = false) {
  std::uniform_real_distribution<double> u(lo, hi);
  V v(n);
  for (auto& x : v) x = integer ? std::round(u(g)) : u(g);
  return v;
}

bool rel_close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

eval::Dataset fixture_dataset() { return Dataset::from_corpus(testing::fixture_corpus()); }

}  // namespace

TEST_CASE("error metric examples") {
  CHECK(mre(12, 10) == doctest::Approx(0.2));
  CHECK(mre(10, 10) == 0.0);
  CHECK_THROWS_AS(mre(5, 0), UndefinedMetric);
  CHECK(mmre(V{12}, V{10}) == doctest::Approx(20.0));
  CHECK(mmre(V{12, 8}, V{10, 10}) == doctest::Approx(20.0));
  CHECK(mmre(V{3, 4}, V{3, 4}) == 0.0);
  CHECK(mdmre(V{11, 12, 19}, V{10, 10, 10}) == doctest::Approx(20.0));
  CHECK(mdmre(V{12}, V{10}) == doctest::Approx(20.0));
  CHECK(mar(V{12, 9}, V{10, 10}) == doctest::Approx(1.5));
  CHECK(mar(V{0}, V{10}) == 10.0);
  CHECK(mar(V{1, 2}, V{1, 2}) == 0.0);
  const V act{2, 4, 6};
  CHECK(lsd(V{4, 4, 4}, act) == doctest::Approx(0.0));
  CHECK(lsd(V{10 * std::exp(1.0)}, V{10}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lsd(V{0, 4, 4}, act), UndefinedMetric);
  CHECK(re_star(V{5, 7, 9}, act) == doctest::Approx(0.0));
  CHECK(re_star(V{4, 8, 12}, act) == doctest::Approx(1.0));
  CHECK_THROWS_AS(re_star(V{1, 2}, V{3, 3}), UndefinedMetric);
  CHECK_THROWS_AS(re_star(V{1}, V{3}), UndefinedMetric);
  CHECK(sa(5, 10) == doctest::Approx(50.0));
  CHECK(sa(10, 10) == 0.0);
  CHECK(sa(0, 10) == 100.0);
  CHECK(sa(20, 10) == doctest::Approx(-100.0));
  CHECK_THROWS_AS(sa(1, 0), UndefinedMetric);
  CHECK_THROWS_AS(mar(V{1, 2}, V{1}), InputError);
  CHECK_THROWS_AS(mar(V{}, V{}), UndefinedMetric);
}

TEST_CASE("error metrics match brute-force oracles") {
  std::mt19937_64 g(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 7;
    const V e = random_vec(g, n, 0.5, 80);
    const V a = random_vec(g, n, 0.5, 80);
    double s_mre = 0, s_abs = 0, s_lsd = 0;
    V mres, res;
    for (std::size_t i = 0; i < n; ++i) {
      mres.push_back(std::abs(e[i] - a[i]) / a[i]);
      s_mre += mres.back();
      s_abs += std::abs(e[i] - a[i]);
      s_lsd += std::pow(std::log(e[i]) - std::log(o_mean(a)), 2);
      res.push_back(e[i] - a[i]);
    }
    CHECK(rel_close(mmre(e, a), 100 * s_mre / n));
    CHECK(rel_close(mdmre(e, a), 100 * o_median(mres)));
    CHECK(rel_close(mar(e, a), s_abs / n));
    CHECK(rel_close(lsd(e, a), std::sqrt(s_lsd)));
    CHECK(rel_close(re_star(e, a), o_var(res) / o_var(a)));
    const double m = mar(e, a), base = 1 + s_abs;
    CHECK(rel_close(sa(m, base), (1 - m / base) * 100));

    // order of pairs does not matter
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    V e2(n), a2(n);
    for (std::size_t i = 0; i < n; ++i) {
      e2[i] = e[perm[i]];
      a2[i] = a[perm[i]];
    }
    CHECK(rel_close(mar(e2, a2), mar(e, a), 1e-12));
    CHECK(rel_close(mmre(e2, a2), mmre(e, a), 1e-12));
    CHECK(mdmre(e2, a2) == mdmre(e, a));
    CHECK(rel_close(lsd(e2, a2), lsd(e, a), 1e-12));
    CHECK(rel_close(re_star(e2, a2), re_star(e, a), 1e-12));
    // MAR is symmetric, MRE is not
    CHECK(mar(a, e) == mar(e, a));
    if (e[0] != a[0]) CHECK(mre(e[0], a[0]) != mre(a[0], e[0]));
    // SA strictly decreases as MAR grows
    CHECK(sa(m, base) > sa(m + 0.1, base));
  }
}

TEST_CASE("random guessing") {
  CHECK(random_guess_mar(V{4, 4, 4}, 50, 1) == 0.0);
  CHECK(random_guess_mar(V{0, 10}, 10, 1) == 10.0);
  CHECK(random_guess_mar(V{1, 5, 9}, 200, 3) == random_guess_mar(V{1, 5, 9}, 200, 3));
  // expectation over others: mean pairwise |difference| = (4 + 8 + 4) * 2 / 6
  CHECK(random_guess_mar(V{1, 5, 9}, 20000, 3) == doctest::Approx(16.0 / 3.0).epsilon(0.02));
  CHECK(random_guess_mar(V{2, 4}, V{3}, 100, 1) == 1.0);
  CHECK_THROWS_AS(random_guess_mar(V{1}, 10, 1), InputError);
}

TEST_CASE("effect size examples") {
  CHECK(cohens_d(V{1, 2, 3}, V{3, 2, 1}) == 0.0);
  // means 1 and 0, both variances 1
  CHECK(cohens_d(V{0, 1, 2}, V{-1, 0, 1}) == doctest::Approx(1.0));
  CHECK(hedges_g(1.0, 10, 10) == doctest::Approx(1.0 - 3.0 / 71.0));
  CHECK(glass_delta(V{2, 4}, V{0, 2}) == doctest::Approx(2.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(cohens_d(V{1, 1}, V{2, 2}), UndefinedMetric);
  CHECK_THROWS_AS(cohens_d(V{1}, V{2, 3}), UndefinedMetric);
  CHECK_THROWS_AS(glass_delta(V{1, 2}, V{3, 3}), UndefinedMetric);
  CHECK(cliffs_delta(V{3, 4}, V{1, 2}) == 1.0);
  CHECK(cliffs_delta(V{1, 2, 2}, V{2, 1, 2}) == 0.0);
  CHECK(cliffs_delta(V{1, 3}, V{2}) == 0.0);
}

TEST_CASE("effect sizes match brute-force oracles") {
  std::mt19937_64 g(2);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n1 = 2 + t % 7, n2 = 2 + (t / 7) % 7;
    const bool coarse = t % 2 == 0;  // integer data produces ties
    const V a = random_vec(g, n1, 0, 9, coarse), b = random_vec(g, n2, 0, 9, coarse);
    CHECK(cliffs_delta(a, b) == o_cliff(a, b));
    CHECK(cliffs_delta(b, a) == -cliffs_delta(a, b));
    // strictly increasing transform applied to both groups
    V ta = a, tb = b;
    for (auto& x : ta) x = std::exp(x / 3) + x * x * x;
    for (auto& x : tb) x = std::exp(x / 3) + x * x * x;
    CHECK(cliffs_delta(ta, tb) == cliffs_delta(a, b));
    const double pooled = ((n1 - 1) * o_var(a) + (n2 - 1) * o_var(b)) / (n1 + n2 - 2);
    if (pooled > 0) {
      const double d = (o_mean(a) - o_mean(b)) / std::sqrt(pooled);
      CHECK(rel_close(cohens_d(a, b), d));
      CHECK(rel_close(cohens_d(b, a), -d));
      const double gval = hedges_g(d, n1, n2);
      CHECK(rel_close(gval, d * (1 - 3.0 / (4.0 * (n1 + n2) - 9))));
      if (d != 0) {
        CHECK(gval / d > 0.0);
        CHECK(gval / d < 1.0);
      }
    }
    if (o_var(b) > 0) CHECK(rel_close(glass_delta(a, b), (o_mean(a) - o_mean(b)) / std::sqrt(o_var(b))));
  }
}

TEST_CASE("welch t test") {
  // reference values from scipy.stats.ttest_ind([1,2,3,4,5], [2,4,6,8,10], equal_var=False)
  const auto w = welch_t_test(V{1, 2, 3, 4, 5}, V{2, 4, 6, 8, 10});
  CHECK(w.t == doctest::Approx(-1.8973665961010275));
  CHECK(w.df == doctest::Approx(5.882352941176471));
  CHECK(w.p == doctest::Approx(0.10753119).epsilon(1e-6));
  CHECK(welch_t_test(V{1, 2, 3}, V{1, 2, 3}).p == doctest::Approx(1.0));
  CHECK_THROWS_AS(welch_t_test(V{1, 1}, V{2, 2}), UndefinedMetric);
}

TEST_CASE("bootstrap on separated and identical samples") {
  std::mt19937_64 g(5);
  std::normal_distribution<double> n0(0, 1), n10(10, 1);
  V a(50), b(50);
  for (auto& x : a) x = n0(g);
  for (auto& x : b) x = n10(g);
  const auto sep = bootstrap_test(a, b, mean_difference, 5000, 0.95, 7);
  CHECK(sep.p < 0.01);
  CHECK(sep.ci_high < 0);
  CHECK(sep.ci_low <= sep.estimate);
  CHECK(sep.estimate <= sep.ci_high);
  CHECK(sep.welch.p < 0.01);

  const auto same = bootstrap_test(a, a, mean_difference, 5000, 0.95, 7);
  CHECK(same.estimate == 0.0);
  CHECK(same.p > 0.5);
  const auto again = bootstrap_test(a, b, mean_difference, 5000, 0.95, 7);
  CHECK(again.p == sep.p);
  CHECK(again.ci_low == sep.ci_low);
  CHECK(again.ci_high == sep.ci_high);

  const auto rep = effect_report(a, a, 3);
  CHECK(*rep.cliffs_delta == 0.0);
  CHECK(*rep.cohens_d == 0.0);
  CHECK(*rep.hedges_g == 0.0);
  CHECK(*rep.glass_delta == 0.0);
  CHECK(*rep.param_p > 0.5);
  CHECK(*rep.cliffs_p > 0.5);
  CHECK(rep.undefined.empty());

  const auto dom = effect_report(b, a, 3);
  CHECK(*dom.cliffs_delta == 1.0);
  CHECK(*dom.cliffs_p < 0.01);
  for (const auto& p : {*dom.t_p, *dom.cliffs_p, *dom.param_p}) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK_THROWS_AS(bootstrap_test(V{1}, a), InputError);
}

TEST_CASE("effect report marks what cannot be computed") {
  const auto r = effect_report(V{1, 1, 1}, V{2, 2, 2}, 1, 200);
  CHECK_FALSE(r.cohens_d.has_value());
  CHECK_FALSE(r.glass_delta.has_value());
  CHECK(r.cliffs_delta == std::optional<double>(-1.0));
  CHECK_FALSE(r.undefined.empty());
}

TEST_CASE("kfold partitions exactly") {
  for (std::size_t k : {2u, 3u, 5u, 10u, 23u}) {
    const auto folds = kfold_partition(23, k, 9);
    REQUIRE(folds.size() == k);
    std::set<std::size_t> seen;
    std::size_t lo = 23, hi = 0;
    for (const auto& f : folds) {
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
      for (auto i : f) CHECK(seen.insert(i).second);
    }
    CHECK(seen.size() == 23);
    CHECK(hi - lo <= 1);
  }
  CHECK(kfold_partition(10, 5, 1) == kfold_partition(10, 5, 1));
  CHECK_THROWS_AS(kfold_partition(4, 5, 1), InputError);
  CHECK_THROWS_AS(kfold_partition(4, 1, 1), InputError);
}

TEST_CASE("protocols with a perfect oracle") {
  const auto data = fixture_dataset();
  const EstimatorList oracle{std::make_shared<PerfectOracle>()};
  const auto rt = randomized_trials(data, oracle, 5, 4, 3);
  const auto* row = rt.find("Oracle");
  REQUIRE(row);
  CHECK(*row->cell(Metric::mar).mean == 0.0);
  CHECK(*row->cell(Metric::sa).mean == 100.0);
  CHECK(*row->cell(Metric::mmre).mean == 0.0);
  const auto loo = kfold(data, oracle, data.size(), 3);
  CHECK(loo.raw.size() == data.size());
  for (const auto& s : loo.raw) {
    CHECK(s.test_rows.size() == 1);
    CHECK(*s.value(Metric::mar) == 0.0);
    CHECK_FALSE(s.value(Metric::re_star).has_value());
  }
  CHECK_FALSE(loo.find("Oracle")->cell(Metric::re_star).mean.has_value());
  CHECK_FALSE(loo.find("Oracle")->cell(Metric::re_star).reason.empty());
  CHECK_THROWS_AS(randomized_trials(data, oracle, data.size(), 1, 1), InputError);
  CHECK_THROWS_AS(randomized_trials(data, oracle, 0, 1, 1), InputError);
}

TEST_CASE("protocol replication on the fixture") {
  const auto data = fixture_dataset();
  REQUIRE(data.size() == 60);
  const auto estimators = default_estimators();
  const auto start = std::chrono::steady_clock::now();
  const auto rt = randomized_trials(data, estimators, 5, 20, 42);
  for (const auto& est : estimators) {
    const auto* row = rt.find(est->name());
    REQUIRE(row);
    CHECK(row->cell(Metric::mar).n == 20);
    CHECK(row->cell(Metric::sa).mean.has_value());
  }
  const auto* dev = rt.find("DevSDEE");
  const double rg = [&] {
    double s = 0;
    for (const auto& r : rt.raw)
      if (r.estimator == "DevSDEE") s += r.random_guess_mar;
    return s / 20;
  }();
  MESSAGE("DevSDEE MAR " << *dev->cell(Metric::mar).mean << " random guess " << rg << " SA "
                         << *dev->cell(Metric::sa).mean);
  CHECK(*dev->cell(Metric::mar).mean < rg);
  CHECK(*dev->cell(Metric::sa).mean > 0.0);

  std::ostringstream table;
  write_report_table(table, rt);
  MESSAGE(table.str());

  // bit-reproducible
  const auto rt2 = randomized_trials(data, estimators, 5, 20, 42);
  std::ostringstream a, b;
  write_raw_jsonl(a, rt);
  write_raw_jsonl(b, rt2);
  CHECK(a.str() == b.str());

  for (std::size_t k : {3u, 5u, 10u}) {
    const auto kf = kfold(data, estimators, k, 42);
    CHECK(kf.raw.size() == k * estimators.size());
    for (const auto& row : kf.rows) CHECK(row.cell(Metric::mar).n == k);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("protocols took " << secs << " s");
}

TEST_CASE("report writers") {
  const auto data = fixture_dataset();
  const EstimatorList ests{std::make_shared<PerfectOracle>(), std::make_shared<AbeEstimator>()};
  const auto rep = kfold(data, ests, 3, 1);
  std::ostringstream csv;
  write_report_csv(csv, rep);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "estimator,metric,mean,stddev,n,note");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    ++rows;
  }
  CHECK(rows == 12);
  std::ostringstream raw;
  write_raw_jsonl(raw, rep);
  std::istringstream rin(raw.str());
  int n = 0;
  while (std::getline(rin, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("metrics"));
    ++n;
  }
  CHECK(n == 6);
}

TEST_CASE("significance suite") {
  const V same{1, 2, 3, 4, 5, 6};
  const auto r = significance_suite(same, same, same, {{"ABE", same}}, 2);
  CHECK(*r.estimates_vs_actuals.cohens_d == 0.0);
  CHECK(*r.estimates_vs_actuals.cliffs_delta == 0.0);
  REQUIRE(r.baselines.size() == 1);
  CHECK(*r.baselines[0].mar.cliffs_delta == 0.0);
  CHECK(*r.baselines[0].sa == 0.0);
  const auto dom = significance_suite(same, same, V{1, 1.5, 2}, {{"LOC", V{10, 11, 12}}}, 2);
  CHECK(*dom.baselines[0].mar.cliffs_delta == -1.0);
  CHECK(*dom.baselines[0].sa > 0.0);

  const auto data = fixture_dataset();
  const auto rep = randomized_trials(data, default_estimators(), 5, 6, 4);
  const auto suite = significance_suite(rep, 4);
  std::set<std::string> names;
  for (const auto& c : suite.baselines) names.insert(c.baseline);
  CHECK(names == std::set<std::string>{"ABE", "ATLM", "LOC", "NeuralNet"});
  std::ostringstream out;
  write_significance_table(out, suite);
  CHECK(out.str().find("DevSDEE MAR vs ATLM") != std::string::npos);
}
