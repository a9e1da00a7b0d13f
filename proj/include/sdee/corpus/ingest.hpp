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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdee/corpus/filter.hpp"
#include "sdee/corpus/types.hpp"

namespace sdee::corpus {

/// One repository metadata line: {"owner","repo","size_mb","stars",
/// "last_update":"YYYY-MM-DD","categories":[...],"description_path",
/// "releases":[{"release_no","date","size_bytes"}]}. `description_path` is
/// resolved against `base_dir`; `releases` is optional.
RepoRecord repo_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Reads a JSON Lines file of repository metadata. Throws ParseError naming
/// the line for malformed JSON or missing fields.
std::vector<RepoRecord> read_repo_jsonl(const std::filesystem::path& path);

struct IngestOptions {
  std::filesystem::path repos_jsonl;
  std::filesystem::path logs_dir;  // holds <owner>__<repo>.log
  Date today;
  bool apply_filter = true;
  SelectionRules rules;
};

struct IngestReport {
  std::size_t candidates = 0;
  std::size_t kept = 0;
  std::size_t skipped_numstat_lines = 0;
  std::size_t orphan_commits = 0;
  std::vector<std::string> warnings;
};

/// Builds the commit_stats and release_effort_estimate rows of one
/// repository and appends them to the corpus.
void append_activity(Corpus& corpus, const RepoRecord& repo, std::span<const CommitStat> commits,
                     std::size_t* orphan_count = nullptr);

/// Reads metadata and logs, applies the selection filter and returns the
/// corpus (without description vectors). Logs of distinct repositories are
/// parsed concurrently.
Corpus ingest(const IngestOptions& options, IngestReport* report = nullptr);

}  // namespace sdee::corpus
