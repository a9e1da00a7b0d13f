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

#include <cstddef>
#include <span>
#include <vector>

#include "sdee/corpus/types.hpp"

namespace sdee::corpus {

struct SelectionRules {
  double min_size_mb = 5.0;        // strictly greater
  std::int64_t min_stars = 500;    // strictly greater
  int max_age_years = 3;           // last_update >= today - 3 years
  std::size_t per_category = 100;  // highest-starred kept per category
};

/// Applies the repository selection constraints. The result is ordered by
/// stars descending, ties by (owner, repo). A repository with several
/// categories is kept if it makes the cut in any of them.
std::vector<RepoRecord> filter_repos(std::span<const RepoRecord> candidates, Date today,
                                     const SelectionRules& rules = {});

/// The oldest last_update date still considered active. Feb 29 rolls back
/// to Feb 28.
Date activity_cutoff(Date today, int years);

}  // namespace sdee::corpus
