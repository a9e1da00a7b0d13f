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

#include "sdee/corpus/activity.hpp"

#include <algorithm>

namespace sdee::corpus {

RepositoryActivity attribute_commits(std::string owner, std::string repo, std::span<const ReleaseInfo> releases,
                                     std::span<const CommitStat> commits) {
  RepositoryActivity activity{std::move(owner), std::move(repo), {}, {}};
  std::vector<ReleaseInfo> sorted(releases.begin(), releases.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.date < b.date; });

  std::vector<CommitStat> ordered(commits.begin(), commits.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.commit_id < b.commit_id;
  });

  std::size_t next = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ReleaseActivity rel;
    rel.window.release_no = sorted[i].release_no;
    rel.window.size_bytes = sorted[i].size_bytes;
    rel.previous_release_no = i == 0 ? sorted[i].release_no : sorted[i - 1].release_no;
    while (next < ordered.size() && ordered[next].timestamp <= sorted[i].date) {
      rel.commits.push_back(ordered[next++]);
    }
    if (rel.commits.empty()) continue;
    rel.window.start = i == 0 ? rel.commits.front().timestamp : sorted[i - 1].date;
    rel.window.end = rel.commits.back().timestamp;
    activity.releases.push_back(std::move(rel));
  }
  activity.orphans.assign(ordered.begin() + static_cast<std::ptrdiff_t>(next), ordered.end());
  return activity;
}

RepositoryActivity repository_activity(const Corpus& corpus, const RepoRecord& repo) {
  std::vector<CommitStat> commits;
  for (const auto& row : corpus.commits) {
    if (row.owner == repo.owner && row.repo == repo.repo) commits.push_back(row.stat);
  }
  return attribute_commits(repo.owner, repo.repo, repo.releases, commits);
}

}  // namespace sdee::corpus
