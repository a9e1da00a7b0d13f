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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sdee/corpus/activity.hpp"
#include "sdee/corpus/types.hpp"

namespace sdee::metrics {

struct ReleaseEffort {
  std::string release_no;
  std::int64_t dev_count = 0;
  double days = 0.0;
  double effort_pm = 0.0;
  bool operator==(const ReleaseEffort&) const = default;
};

/// Developer-activity metrics of one repository.
struct EffortRecord {
  std::string owner;
  std::string repo;
  std::int64_t dev_count = 0;      // distinct developers over all windows
  double dev_time_months = 0.0;    // mean release duration
  std::int64_t sloc_m = 0;         // modified lines, whitespace-only excluded
  double effort_pm = 0.0;          // mean of per-release efforts
  std::vector<ReleaseEffort> per_release;
  bool operator==(const EffortRecord&) const = default;
};

/// Mean release duration (end - start) over the windows, in months of
/// 30.44 days. Throws UndefinedMetric for an empty list, InputError when a
/// window ends before it starts.
double dev_time(std::span<const corpus::ReleaseWindow> windows);

/// dev_count * months. Throws DomainError when dev_count < 1 or months < 0.
double effort(std::int64_t dev_count, double months);

/// Per-release effort (distinct developers in the window times the window
/// length in months) and their mean. Throws UndefinedMetric when no release
/// has attributed commits.
EffortRecord release_effort_rollup(const corpus::RepositoryActivity& activity);

/// Rolls up every repository of the corpus that has attributed commits.
std::vector<EffortRecord> effort_records(const corpus::Corpus& corpus);

/// `metrics report` CSV: owner,repo,dev_count,dev_time_months,sloc_m,effort_pm
void write_metrics_csv(std::ostream& out, std::span<const EffortRecord> records);

}  // namespace sdee::metrics
