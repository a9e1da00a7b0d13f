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
#include <optional>
#include <string>
#include <vector>

#include "sdee/common/time.hpp"

namespace sdee::corpus {

/// A project description and its normalized token sequence. `tokens` is
/// always `tokenize(raw_text)`; construct through `from_text`.
struct DescriptionDoc {
  std::string raw_text;
  std::vector<std::string> tokens;

  static DescriptionDoc from_text(std::string raw);
  bool operator==(const DescriptionDoc&) const = default;
};

/// One row of release_info, minus the repository identity.
struct ReleaseInfo {
  std::string release_no;
  Timestamp date;
  std::int64_t size_bytes = 0;
  bool operator==(const ReleaseInfo&) const = default;
};

struct RepoRecord {
  std::string owner;
  std::string repo;
  double size_mb = 0.0;
  std::int64_t stars = 0;
  Date last_update;
  std::vector<std::string> categories;
  DescriptionDoc description;
  std::vector<ReleaseInfo> releases;

  std::string key() const { return owner + "/" + repo; }
  bool operator==(const RepoRecord&) const = default;
};

struct ReleaseWindow {
  std::string release_no;
  Timestamp start;
  Timestamp end;
  std::int64_t size_bytes = 0;
  bool operator==(const ReleaseWindow&) const = default;
};

/// Line counts of one commit; whitespace-only lines are never counted.
struct CommitStat {
  std::string commit_id;
  std::string dev_id;
  Timestamp timestamp;
  std::int64_t sloc_added = 0;
  std::int64_t sloc_deleted = 0;
  std::int64_t sloc_modified = 0;
  bool operator==(const CommitStat&) const = default;
};

/// commit_stats row. `dev_time` is the gap (months) since the same
/// developer's previous commit in the same release window; `effort` is that
/// gap times one person.
struct CommitRow {
  std::string owner;
  std::string repo;
  CommitStat stat;
  double effort = 0.0;
  double dev_time = 0.0;
  bool operator==(const CommitRow&) const = default;
};

/// release_effort_estimate row.
struct ReleaseEffortRow {
  std::string owner;
  std::string repo;
  std::string min_release_ids;
  std::string max_release_ids;
  Timestamp start_release_date;
  Timestamp end_release_date;
  double days = 0.0;
  std::int64_t dev_count = 0;
  double effort_pm = 0.0;
  bool operator==(const ReleaseEffortRow&) const = default;
};

/// soft_desc_pva_vec row.
struct DescVectorRow {
  std::string owner;
  std::string repo;
  std::string category;
  std::vector<float> vector;
  double ref_cos_sim = 0.0;
  bool operator==(const DescVectorRow&) const = default;
};

/// Everything persisted in a store. Once built, a corpus is treated as an
/// immutable snapshot; share it as `std::shared_ptr<const Corpus>`.
struct Corpus {
  std::vector<RepoRecord> repos;
  std::vector<CommitRow> commits;
  std::vector<ReleaseEffortRow> release_efforts;
  std::vector<DescVectorRow> vectors;
  /// Fixed random unit vector the description vectors are compared against.
  std::vector<float> reference;
  std::string model_id;
  std::string model_path;
  std::optional<double> alpha_hat;

  const RepoRecord* find(const std::string& owner, const std::string& repo) const;
  bool operator==(const Corpus&) const = default;
};

}  // namespace sdee::corpus
