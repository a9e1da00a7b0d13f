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

#include "sdee/eval/protocols.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "sdee/common/random.hpp"

namespace sdee::eval {

namespace {

void fill_metrics(SplitResult& s) {
  auto put = [&](Metric m, auto&& fn) {
    const auto i = static_cast<std::size_t>(m);
    try {
      s.values[i] = fn();
    } catch (const Error& e) {
      s.undefined[i] = e.what();
    }
  };
  const std::span<const double> p(s.predictions), a(s.actuals);
  put(Metric::lsd, [&] { return lsd(p, a); });
  put(Metric::re_star, [&] { return re_star(p, a); });
  put(Metric::mar, [&] { return mar(p, a); });
  put(Metric::mmre, [&] { return mmre(p, a); });
  put(Metric::mdmre, [&] { return mdmre(p, a); });
  put(Metric::sa, [&] { return sa(mar(p, a), s.random_guess_mar); });
}

void run_split(const Dataset& data, const EstimatorList& estimators, const std::string& protocol, int split,
               std::uint64_t split_seed, const std::vector<std::size_t>& train, const std::vector<std::size_t>& test,
               std::vector<SplitResult>& out) {
  const auto train_targets = data.targets(train);
  const auto actuals = data.targets(test);
  const double rg = random_guess_mar(train_targets, actuals, kRandomGuessTrials, derive_seed(split_seed, 0));
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    SplitResult s;
    s.protocol = protocol;
    s.split = split;
    s.estimator = estimators[e]->name();
    s.test_rows = test;
    s.actuals = actuals;
    s.random_guess_mar = rg;
    try {
      s.predictions = estimators[e]->fit_predict(data, train, test, derive_seed(split_seed, e + 1));
      if (s.predictions.size() != test.size()) throw InputError("estimator returned the wrong number of predictions");
      fill_metrics(s);
    } catch (const Error& err) {
      s.error = err.what();
      s.predictions.clear();
      for (auto& u : s.undefined) u = std::string("estimator failed: ") + err.what();
    }
    out.push_back(std::move(s));
  }
}

MetricReport aggregate(std::string protocol, std::uint64_t seed, int splits, const EstimatorList& estimators,
                       std::vector<SplitResult> raw) {
  MetricReport report;
  report.protocol = std::move(protocol);
  report.seed = seed;
  report.splits = splits;
  for (const auto& est : estimators) {
    MetricRow row;
    row.estimator = est->name();
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      std::vector<double> v;
      std::string reason;
      for (const auto& s : raw) {
        if (s.estimator != row.estimator) continue;
        if (s.values[m]) {
          v.push_back(*s.values[m]);
        } else if (reason.empty()) {
          reason = s.undefined[m];
        }
      }
      auto& cell = row.cells[m];
      cell.n = v.size();
      if (v.empty()) {
        cell.reason = reason.empty() ? "no splits" : reason;
        continue;
      }
      const auto view = detail::view(v);
      cell.mean = mean(view);
      cell.stddev = v.size() > 1 ? stddev(view) : 0.0;
      if (v.size() < static_cast<std::size_t>(splits)) {
        cell.reason = "undefined in " + std::to_string(splits - static_cast<int>(v.size())) + " split(s): " + reason;
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.raw = std::move(raw);
  return report;
}

std::string fmt(std::optional<double> v, int precision = 4) {
  if (!v) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

nlohmann::json opt_json(std::optional<double> v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

const MetricRow* MetricReport::find(const std::string& estimator) const {
  for (const auto& r : rows) {
    if (r.estimator == estimator) return &r;
  }
  return nullptr;
}

std::vector<double> MetricReport::series(const std::string& estimator, Metric m) const {
  std::vector<double> v;
  for (const auto& s : raw) {
    if (s.estimator == estimator && s.value(m)) v.push_back(*s.value(m));
  }
  return v;
}

MetricReport randomized_trials(const Dataset& data, const EstimatorList& estimators, std::size_t x, int r,
                               std::uint64_t seed) {
  const std::size_t n = data.size();
  if (x < 1 || x >= n) throw InputError("the test size x must satisfy 1 <= x < n (n = " + std::to_string(n) + ")");
  if (r < 1) throw InputError("at least one trial is required");
  std::vector<SplitResult> raw;
  for (int trial = 0; trial < r; ++trial) {
    const auto trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(trial_seed);
    rng.shuffle(std::span<std::size_t>(order));
    const std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(x));
    const std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(x), order.end());
    run_split(data, estimators, "random", trial, trial_seed, train, test, raw);
  }
  return aggregate("random", seed, r, estimators, std::move(raw));
}

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) throw InputError("k must satisfy 2 <= k <= n (n = " + std::to_string(n) + ")");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t f = 0; f < k; ++f) {
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(f * n / k),
                    order.begin() + static_cast<std::ptrdiff_t>((f + 1) * n / k));
  }
  return folds;
}

MetricReport kfold(const Dataset& data, const EstimatorList& estimators, std::size_t k, std::uint64_t seed) {
  const auto folds = kfold_partition(data.size(), k, seed);
  std::vector<SplitResult> raw;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    run_split(data, estimators, "kfold", static_cast<int>(f), derive_seed(seed, 1000 + f), train, folds[f], raw);
  }
  return aggregate("kfold", seed, static_cast<int>(k), estimators, std::move(raw));
}

void write_report_csv(std::ostream& out, const MetricReport& report) {
  out << "estimator,metric,mean,stddev,n,note\n";
  out << std::setprecision(10);
  for (const auto& row : report.rows) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      const auto& c = row.cells[m];
      std::string note = c.reason;
      for (auto& ch : note) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
      }
      out << row.estimator << ',' << kMetricNames[m] << ',';
      if (c.mean) out << *c.mean;
      out << ',';
      if (c.stddev) out << *c.stddev;
      out << ',' << c.n << ',' << note << '\n';
    }
  }
}

void write_report_table(std::ostream& out, const MetricReport& report) {
  const std::array<std::string, kMetricCount> headers{"LSD", "RE*", "MAR", "MMRE", "MdMRE", "SA"};
  std::vector<std::array<std::string, kMetricCount + 1>> lines;
  lines.push_back({"Estimator", headers[0], headers[1], headers[2], headers[3], headers[4], headers[5]});
  for (const auto& row : report.rows) {
    std::array<std::string, kMetricCount + 1> line;
    line[0] = row.estimator;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      const auto& c = row.cells[m];
      line[m + 1] = c.mean ? fmt(c.mean, 2) + " (" + fmt(c.stddev, 2) + ")" : "undefined";
    }
    lines.push_back(line);
  }
  std::array<std::size_t, kMetricCount + 1> width{};
  for (const auto& l : lines)
    for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], l[i].size());
  out << (report.protocol == "kfold" ? std::to_string(report.splits) + "-fold cross-validation"
                                     : std::to_string(report.splits) + " randomized trials")
      << ", seed " << report.seed << "\n";
  for (std::size_t li = 0; li < lines.size(); ++li) {
    for (std::size_t i = 0; i < lines[li].size(); ++i) {
      out << (i == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << lines[li][i]
          << (i + 1 < lines[li].size() ? "  " : "\n");
    }
    if (li == 0) {
      std::size_t total = 0;
      for (const auto w : width) total += w + 2;
      out << std::string(total - 2, '-') << "\n";
    }
  }
  out << std::left;
  out << "Values are mean (standard deviation) over splits. LSD is measured against the mean actual effort; "
         "SA is relative to per-split random guessing; baselines use dev_count, sloc_m and dev_time_months.\n";
  for (const auto& row : report.rows) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      if (!row.cells[m].reason.empty()) {
        out << "note: " << row.estimator << " " << kMetricNames[m] << ": " << row.cells[m].reason << "\n";
      }
    }
  }
}

void write_raw_jsonl(std::ostream& out, const MetricReport& report) {
  for (const auto& s : report.raw) {
    nlohmann::json j;
    j["protocol"] = s.protocol;
    j["split"] = s.split;
    j["estimator"] = s.estimator;
    j["test_rows"] = s.test_rows;
    j["predictions"] = s.predictions;
    j["actuals"] = s.actuals;
    j["random_guess_mar"] = s.random_guess_mar;
    nlohmann::json metrics = nlohmann::json::object();
    for (std::size_t m = 0; m < kMetricCount; ++m) metrics[kMetricNames[m]] = opt_json(s.values[m]);
    j["metrics"] = metrics;
    j["error"] = s.error ? nlohmann::json(*s.error) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  }
}

SignificanceReport significance_suite(std::span<const double> subject_estimates, std::span<const double> true_values,
                                      std::span<const double> subject_mar,
                                      const std::map<std::string, std::vector<double>>& baseline_mar,
                                      std::uint64_t seed, const std::string& subject) {
  SignificanceReport r;
  r.subject = subject;
  r.estimates_vs_actuals = effect_report(subject_estimates, true_values, derive_seed(seed, 0));
  std::uint64_t i = 1;
  for (const auto& [name, series] : baseline_mar) {
    BaselineComparison c;
    c.baseline = name;
    c.mar = effect_report(subject_mar, series, derive_seed(seed, i++));
    try {
      c.sa = sa(mean(detail::view(subject_mar)), mean(detail::view(series)));
    } catch (const Error&) {
    }
    r.baselines.push_back(std::move(c));
  }
  return r;
}

SignificanceReport significance_suite(const MetricReport& report, std::uint64_t seed, const std::string& subject) {
  std::vector<double> estimates, actuals;
  for (const auto& s : report.raw) {
    if (s.estimator != subject || s.error) continue;
    estimates.insert(estimates.end(), s.predictions.begin(), s.predictions.end());
    actuals.insert(actuals.end(), s.actuals.begin(), s.actuals.end());
  }
  std::map<std::string, std::vector<double>> others;
  for (const auto& row : report.rows) {
    if (row.estimator != subject) others[row.estimator] = report.series(row.estimator, Metric::mar);
  }
  return significance_suite(estimates, actuals, report.series(subject, Metric::mar), others, seed, subject);
}

void write_significance_table(std::ostream& out, const SignificanceReport& r) {
  auto line = [&](const std::string& label, const EffectReport& e) {
    out << std::left << std::setw(28) << label << std::right << std::setw(10) << fmt(e.t_value) << std::setw(10)
        << fmt(e.t_p) << std::setw(10) << fmt(e.cliffs_delta) << std::setw(10) << fmt(e.cliffs_p) << std::setw(10)
        << fmt(e.cohens_d) << std::setw(10) << fmt(e.hedges_g) << std::setw(10) << fmt(e.glass_delta)
        << std::setw(10) << fmt(e.param_p) << "\n";
  };
  out << std::left << std::setw(28) << "Comparison" << std::right << std::setw(10) << "t" << std::setw(10) << "p(t)"
      << std::setw(10) << "delta" << std::setw(10) << "p(delta)" << std::setw(10) << "d" << std::setw(10) << "g"
      << std::setw(10) << "Delta" << std::setw(10) << "p(boot)" << "\n";
  line(r.subject + " estimates vs actual", r.estimates_vs_actuals);
  for (const auto& c : r.baselines) line(r.subject + " MAR vs " + c.baseline, c.mar);
  out << std::left;
  for (const auto& c : r.baselines) out << "SA of " << r.subject << " against " << c.baseline << ": " << fmt(c.sa, 2) << "%\n";
  const auto& e = r.estimates_vs_actuals;
  out << "Bootstrap: " << e.n_bootstrap << " resamples, " << e.confidence * 100 << "% confidence; Welch t test; Cliff's "
      << "delta p by " << kPermutations << " permutations; Cohen's d divides by the pooled standard deviation.\n";
}

}  // namespace sdee::eval
