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

#include "sdee/eval/effect.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <numeric>

#include "sdee/common/random.hpp"

namespace sdee::eval {

namespace {

double percentile(std::vector<double> sorted_values, double q) {
  // linear interpolation between closest ranks
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_values.size() - 1);
  return sorted_values[lo] + (pos - static_cast<double>(lo)) * (sorted_values[hi] - sorted_values[lo]);
}

void resample(std::span<const double> from, std::vector<double>& into, Rng& rng) {
  into.resize(from.size());
  for (auto& v : into) v = from[static_cast<std::size_t>(rng.below(from.size()))];
}

}  // namespace

WelchResult welch_t_test(std::span<const double> x1, std::span<const double> x2) {
  if (x1.size() < 2 || x2.size() < 2) throw UndefinedMetric("the t test needs two values per group");
  const double n1 = static_cast<double>(x1.size()), n2 = static_cast<double>(x2.size());
  const double v1 = variance(detail::view(x1)) / n1;
  const double v2 = variance(detail::view(x2)) / n2;
  const double se2 = v1 + v2;
  if (se2 == 0.0) throw UndefinedMetric("the t test is undefined when both groups are constant");
  WelchResult r;
  r.t = (mean(detail::view(x1)) - mean(detail::view(x2))) / std::sqrt(se2);
  r.df = se2 * se2 / (v1 * v1 / (n1 - 1) + v2 * v2 / (n2 - 1));
  const boost::math::students_t dist(r.df);
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

double mean_difference(std::span<const double> x1, std::span<const double> x2) {
  return mean(detail::view(x1)) - mean(detail::view(x2));
}

BootstrapResult bootstrap_test(std::span<const double> x1, std::span<const double> x2, const GroupStatistic& statistic,
                               int n_boot, double confidence, std::uint64_t seed) {
  if (x1.size() < 2 || x2.size() < 2) throw InputError("the bootstrap needs at least two values per group");
  if (n_boot < 1) throw InputError("the bootstrap needs at least one resample");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InputError("confidence must lie in (0, 1)");

  BootstrapResult r;
  r.estimate = statistic(x1, x2);
  try {
    r.welch = welch_t_test(x1, x2);
  } catch (const UndefinedMetric&) {
    r.welch = {0.0, 0.0, r.estimate == 0.0 ? 1.0 : 0.0};
  }

  // Null samples: both groups shifted to the pooled mean.
  const double pooled = (std::accumulate(x1.begin(), x1.end(), 0.0) + std::accumulate(x2.begin(), x2.end(), 0.0)) /
                        static_cast<double>(x1.size() + x2.size());
  const double m1 = mean(detail::view(x1)), m2 = mean(detail::view(x2));
  std::vector<double> c1(x1.begin(), x1.end()), c2(x2.begin(), x2.end());
  for (auto& v : c1) v += pooled - m1;
  for (auto& v : c2) v += pooled - m2;

  Rng ci_rng(derive_seed(seed, 0));
  Rng null_rng(derive_seed(seed, 1));
  std::vector<double> stats(static_cast<std::size_t>(n_boot));
  std::vector<double> b1, b2;
  std::size_t extreme = 0;
  // Tolerance so that a null statistic equal to the observed one counts.
  const double observed = std::abs(r.estimate);
  const double tol = 1e-12 * std::max(1.0, observed);
  for (int b = 0; b < n_boot; ++b) {
    resample(x1, b1, ci_rng);
    resample(x2, b2, ci_rng);
    stats[static_cast<std::size_t>(b)] = statistic(b1, b2);
    resample(c1, b1, null_rng);
    resample(c2, b2, null_rng);
    if (std::abs(statistic(b1, b2)) >= observed - tol) ++extreme;
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = 1.0 - confidence;
  r.ci_low = percentile(stats, alpha / 2.0);
  r.ci_high = percentile(stats, 1.0 - alpha / 2.0);
  r.p = (1.0 + static_cast<double>(extreme)) / (static_cast<double>(n_boot) + 1.0);
  return r;
}

double cliffs_delta_p(std::span<const double> x1, std::span<const double> x2, int n_perm, std::uint64_t seed) {
  if (x1.empty() || x2.empty()) throw UndefinedMetric("Cliff's delta needs two non-empty groups");
  if (n_perm < 1) throw InputError("the permutation test needs at least one permutation");
  const double observed = std::abs(cliffs_delta(x1, x2));
  std::vector<double> pool(x1.begin(), x1.end());
  pool.insert(pool.end(), x2.begin(), x2.end());
  Rng rng(seed);
  std::size_t extreme = 0;
  const std::span<const double> all(pool);
  for (int i = 0; i < n_perm; ++i) {
    rng.shuffle(std::span<double>(pool));
    const double d = std::abs(cliffs_delta(all.first(x1.size()), all.subspan(x1.size())));
    // deltas are multiples of 1 / (n1 n2); compare with a half-step margin
    if (d >= observed - 0.5 / static_cast<double>(x1.size() * x2.size())) ++extreme;
  }
  return (1.0 + static_cast<double>(extreme)) / (static_cast<double>(n_perm) + 1.0);
}

EffectReport effect_report(std::span<const double> x1, std::span<const double> x2, std::uint64_t seed,
                           int n_bootstrap, double confidence) {
  EffectReport r;
  r.n1 = x1.size();
  r.n2 = x2.size();
  r.n_bootstrap = n_bootstrap;
  r.confidence = confidence;
  if (x1.empty() || x2.empty()) {
    r.undefined.push_back("empty group");
    return r;
  }
  r.mean1 = mean(detail::view(x1));
  r.mean2 = mean(detail::view(x2));
  auto attempt = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      r.undefined.push_back(std::string(name) + ": " + e.what());
    }
  };
  attempt("t", [&] {
    const auto w = welch_t_test(x1, x2);
    r.t_value = w.t;
    r.t_p = w.p;
  });
  attempt("cliffs_delta", [&] {
    r.cliffs_delta = cliffs_delta(x1, x2);
    r.cliffs_p = cliffs_delta_p(x1, x2, kPermutations, derive_seed(seed, 2));
  });
  attempt("cohens_d", [&] {
    r.cohens_d = cohens_d(x1, x2);
    r.hedges_g = hedges_g(*r.cohens_d, x1.size(), x2.size());
  });
  attempt("glass_delta", [&] { r.glass_delta = glass_delta(x1, x2); });
  attempt("bootstrap", [&] {
    const auto b = bootstrap_test(x1, x2, mean_difference, n_bootstrap, confidence, derive_seed(seed, 3));
    r.param_p = b.p;
    r.ci_low = b.ci_low;
    r.ci_high = b.ci_high;
  });
  return r;
}

}  // namespace sdee::eval
