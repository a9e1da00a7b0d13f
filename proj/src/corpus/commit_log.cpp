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

#include "sdee/corpus/commit_log.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <string_view>

#include "sdee/common/error.hpp"

namespace sdee::corpus {
namespace {

struct FileCounts {
  std::int64_t added = 0;
  std::int64_t deleted = 0;
};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; });
}

std::optional<std::int64_t> to_count(std::string_view s) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

std::string_view chomp(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

class BlockBuilder {
 public:
  BlockBuilder(CommitStat header) : stat_(std::move(header)) {}

  void numstat(std::string path, FileCounts counts) { numstat_[std::move(path)] = counts; }

  void begin_patch(std::string path) {
    patch_path_ = std::move(path);
    patch_[patch_path_];
    in_hunk_ = false;
  }

  /// Returns false if the line is not patch content.
  bool patch_line(std::string_view line) {
    if (patch_path_.empty()) return false;
    if (line.rfind("@@", 0) == 0) {
      in_hunk_ = true;
      return true;
    }
    if (!in_hunk_) return true;  // index/mode/---/+++/Binary headers
    if (line.empty()) return true;
    auto& counts = patch_[patch_path_];
    if (line[0] == '+') {
      if (!blank(line.substr(1))) ++counts.added;
    } else if (line[0] == '-') {
      if (!blank(line.substr(1))) ++counts.deleted;
    } else if (line[0] != ' ' && line[0] != '\\') {
      return false;
    }
    return true;
  }

  CommitStat finish() {
    for (const auto& [path, counts] : patch_) numstat_[path] = counts;
    for (const auto& [path, c] : numstat_) {
      const std::int64_t modified = std::min(c.added, c.deleted);
      stat_.sloc_modified += modified;
      stat_.sloc_added += c.added - modified;
      stat_.sloc_deleted += c.deleted - modified;
    }
    return std::move(stat_);
  }

 private:
  CommitStat stat_;
  std::map<std::string, FileCounts> numstat_;
  std::map<std::string, FileCounts> patch_;
  std::string patch_path_;
  bool in_hunk_ = false;
};

CommitStat parse_header(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = line.find('|', start);
    fields.push_back(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (fields.size() != 4 || fields[0] != "C") {
    throw ParseError(line_no, "malformed commit header, expected C|<commit_id>|<dev_id>|<timestamp>");
  }
  if (fields[1].empty() || fields[2].empty()) throw ParseError(line_no, "empty commit or developer id");
  CommitStat stat;
  stat.commit_id = std::string(fields[1]);
  stat.dev_id = std::string(fields[2]);
  try {
    stat.timestamp = parse_timestamp(fields[3]);
  } catch (const InputError& e) {
    throw ParseError(line_no, e.what());
  }
  return stat;
}

}  // namespace

CommitLogParse parse_commit_log(std::istream& in) {
  CommitLogParse result;
  std::optional<BlockBuilder> block;
  std::string raw;
  std::size_t line_no = 0;
  auto close = [&] {
    if (block) result.commits.push_back(block->finish());
    block.reset();
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = chomp(raw);
    if (line.empty()) {
      close();
      continue;
    }
    if (line.rfind("C|", 0) == 0) {
      close();
      block.emplace(parse_header(line, line_no));
      continue;
    }
    if (!block) {
      if (blank(line)) continue;
      throw ParseError(line_no, "expected commit header");
    }
    if (line.rfind("diff --git ", 0) == 0) {
      const std::size_t b = line.rfind(" b/");
      block->begin_patch(std::string(b == std::string_view::npos ? line.substr(11) : line.substr(b + 3)));
      continue;
    }
    if (block->patch_line(line)) continue;

    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      ++result.skipped_lines;
      continue;
    }
    const std::string_view a = line.substr(0, t1);
    const std::string_view d = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string path(line.substr(t2 + 1));
    if (a == "-" && d == "-") {
      block->numstat(path, {});
      continue;
    }
    const auto added = to_count(a);
    const auto deleted = to_count(d);
    if (!added || !deleted || path.empty()) {
      ++result.skipped_lines;
      continue;
    }
    block->numstat(path, {*added, *deleted});
  }
  close();
  return result;
}

}  // namespace sdee::corpus
