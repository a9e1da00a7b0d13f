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

#include "sdee/metrics/effort.hpp"

#include <cstdio>
#include <set>

#include "sdee/common/error.hpp"

namespace sdee::metrics {

double dev_time(std::span<const corpus::ReleaseWindow> windows) {
  if (windows.empty()) throw UndefinedMetric("development time needs at least one release window");
  double total_days = 0.0;
  for (const auto& w : windows) {
    if (w.end < w.start) throw InputError("release window " + w.release_no + " ends before it starts");
    total_days += days_between(w.start, w.end);
  }
  return total_days / static_cast<double>(windows.size()) / kDaysPerMonth;
}

double effort(std::int64_t dev_count, double months) {
  if (dev_count < 1) throw DomainError("effort needs at least one developer");
  if (months < 0.0) throw DomainError("negative development time");
  return static_cast<double>(dev_count) * months;
}

EffortRecord release_effort_rollup(const corpus::RepositoryActivity& activity) {
  if (activity.releases.empty()) {
    throw UndefinedMetric(activity.owner + "/" + activity.repo + " has no release with attributed commits");
  }
  EffortRecord rec;
  rec.owner = activity.owner;
  rec.repo = activity.repo;
  std::set<std::string> all_devs;
  std::vector<corpus::ReleaseWindow> windows;
  double effort_sum = 0.0;
  for (const auto& rel : activity.releases) {
    std::set<std::string> devs;
    for (const auto& c : rel.commits) {
      devs.insert(c.dev_id);
      rec.sloc_m += c.sloc_modified;
    }
    all_devs.insert(devs.begin(), devs.end());
    windows.push_back(rel.window);
    const double days = days_between(rel.window.start, rel.window.end);
    const auto n = static_cast<std::int64_t>(devs.size());
    const double e = effort(n, days / kDaysPerMonth);
    rec.per_release.push_back({rel.window.release_no, n, days, e});
    effort_sum += e;
  }
  rec.dev_count = static_cast<std::int64_t>(all_devs.size());
  rec.dev_time_months = dev_time(windows);
  rec.effort_pm = effort_sum / static_cast<double>(activity.releases.size());
  return rec;
}

std::vector<EffortRecord> effort_records(const corpus::Corpus& corpus) {
  std::vector<EffortRecord> out;
  for (const auto& repo : corpus.repos) {
    const auto activity = corpus::repository_activity(corpus, repo);
    if (activity.releases.empty()) continue;
    out.push_back(release_effort_rollup(activity));
  }
  return out;
}

void write_metrics_csv(std::ostream& out, std::span<const EffortRecord> records) {
  out << "owner,repo,dev_count,dev_time_months,sloc_m,effort_pm\n";
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%lld,%.6f,%lld,%.6f", static_cast<long long>(r.dev_count), r.dev_time_months,
                  static_cast<long long>(r.sloc_m), r.effort_pm);
    out << r.owner << ',' << r.repo << ',' << buf << '\n';
  }
}

}  // namespace sdee::metrics
