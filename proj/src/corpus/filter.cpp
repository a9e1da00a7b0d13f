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

#include "sdee/corpus/filter.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sdee::corpus {

Date activity_cutoff(Date today, int years) {
  using namespace std::chrono;
  year_month_day ymd{today};
  ymd -= std::chrono::years{years};
  if (!ymd.ok()) ymd = ymd.year() / ymd.month() / last;
  return Date{ymd};
}

std::vector<RepoRecord> filter_repos(std::span<const RepoRecord> candidates, Date today,
                                     const SelectionRules& rules) {
  const Date cutoff = activity_cutoff(today, rules.max_age_years);
  std::vector<const RepoRecord*> eligible;
  for (const auto& r : candidates) {
    if (r.size_mb > rules.min_size_mb && r.stars > rules.min_stars && r.last_update >= cutoff) {
      eligible.push_back(&r);
    }
  }
  const auto by_stars = [](const RepoRecord* a, const RepoRecord* b) {
    if (a->stars != b->stars) return a->stars > b->stars;
    if (a->owner != b->owner) return a->owner < b->owner;
    return a->repo < b->repo;
  };
  std::stable_sort(eligible.begin(), eligible.end(), by_stars);

  std::map<std::string, std::size_t> taken;
  std::set<const RepoRecord*> kept;
  for (const auto* r : eligible) {
    bool keep = false;
    for (const auto& c : r->categories) {
      if (taken[c] < rules.per_category) {
        ++taken[c];
        keep = true;
      }
    }
    if (r->categories.empty() && taken[""]++ < rules.per_category) keep = true;
    if (keep) kept.insert(r);
  }
  std::vector<RepoRecord> out;
  out.reserve(kept.size());
  for (const auto* r : eligible) {
    if (kept.count(r)) out.push_back(*r);
  }
  return out;
}

}  // namespace sdee::corpus
