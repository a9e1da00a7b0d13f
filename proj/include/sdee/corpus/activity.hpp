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

#include <span>
#include <string>
#include <vector>

#include "sdee/corpus/types.hpp"

namespace sdee::corpus {

struct ReleaseActivity {
  ReleaseWindow window;
  std::string previous_release_no;  // equals window.release_no for the first release
  std::vector<CommitStat> commits;
};

/// Commits of one repository grouped by the release they were developed for.
struct RepositoryActivity {
  std::string owner;
  std::string repo;
  std::vector<ReleaseActivity> releases;
  std::vector<CommitStat> orphans;  // committed after the last release
};

/// Attributes commits to releases. Release i (sorted by date) owns the
/// commits in (date[i-1], date[i]]; the first release owns everything up to
/// its date. A window starts at the previous release date (first release:
/// its earliest commit) and ends at the last commit it owns. Releases that
/// own no commits are left out.
RepositoryActivity attribute_commits(std::string owner, std::string repo, std::span<const ReleaseInfo> releases,
                                     std::span<const CommitStat> commits);

/// Collects the activity of `repo` from the commit_stats rows of a corpus.
RepositoryActivity repository_activity(const Corpus& corpus, const RepoRecord& repo);

}  // namespace sdee::corpus
