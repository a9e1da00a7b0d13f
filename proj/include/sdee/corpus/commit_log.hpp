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
#include <istream>
#include <string>
#include <vector>

#include "sdee/corpus/types.hpp"

namespace sdee::corpus {

struct CommitLogParse {
  std::vector<CommitStat> commits;
  /// numstat lines that could not be read and were skipped.
  std::size_t skipped_lines = 0;
};

/// Reads the commit log format:
///
///   C|<commit_id>|<dev_id>|<ISO-8601 timestamp>
///   <added>\t<deleted>\t<path>        (binary: -\t-\t<path>)
///   ...
///   <blank line>
///
/// A block may additionally carry unified-diff payload (`diff --git` ... `@@`
/// hunks). For every file that has payload the counts are taken from the
/// payload with blank-after-trim lines excluded, replacing the numstat
/// figures for that file.
///
/// Per file, modified = min(added, deleted) and the remainders are reported
/// as pure additions or deletions.
///
/// Throws ParseError (with the 1-based line number) on a malformed header or
/// on content outside any commit block.
CommitLogParse parse_commit_log(std::istream& in);

}  // namespace sdee::corpus
