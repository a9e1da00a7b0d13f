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

#include "sdee/metrics/correlation.hpp"

#include <vector>

namespace sdee::metrics {

CorrelationReport correlation_report(std::span<const EffortRecord> records) {
  if (records.size() < 2) throw InputError("correlation report needs at least two records");
  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::ArrayXd sloc(n), devs(n), time(n), effort(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    sloc[i] = static_cast<double>(r.sloc_m);
    devs[i] = static_cast<double>(r.dev_count);
    time[i] = r.dev_time_months;
    effort[i] = r.effort_pm;
  }
  const auto pair = [&](const Eigen::ArrayXd& x, const char* name) {
    try {
      return pearson(x, effort);
    } catch (const UndefinedMetric& e) {
      throw UndefinedMetric(std::string(name) + " vs effort_pm: " + e.what());
    }
  };
  return {pair(sloc, "sloc_m"), pair(devs, "dev_count"), pair(time, "dev_time_months")};
}

}  // namespace sdee::metrics
