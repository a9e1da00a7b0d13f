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

#include "sdee/corpus/ingest.hpp"

#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "sdee/common/error.hpp"
#include "sdee/corpus/activity.hpp"
#include "sdee/corpus/commit_log.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::corpus {

RepoRecord repo_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  RepoRecord r;
  r.owner = j.at("owner").get<std::string>();
  r.repo = j.at("repo").get<std::string>();
  r.size_mb = j.at("size_mb").get<double>();
  r.stars = j.at("stars").get<std::int64_t>();
  if (r.owner.empty() || r.repo.empty()) throw InputError("empty owner or repo");
  if (r.size_mb < 0 || r.stars < 0) throw InputError(r.key() + ": negative size or stars");
  r.last_update = parse_date(j.at("last_update").get<std::string>());
  r.categories = j.value("categories", std::vector<std::string>{});
  const std::string desc = j.value("description_path", std::string{});
  if (!desc.empty()) {
    std::ifstream in(base_dir / desc, std::ios::binary);
    if (!in) throw InputError(r.key() + ": cannot read description " + (base_dir / desc).string());
    std::ostringstream text;
    text << in.rdbuf();
    r.description = DescriptionDoc::from_text(text.str());
  }
  if (j.contains("releases")) {
    for (const auto& rel : j.at("releases")) {
      r.releases.push_back({rel.at("release_no").get<std::string>(),
                            parse_timestamp(rel.at("date").get<std::string>()),
                            rel.value("size_bytes", std::int64_t{0})});
    }
  }
  return r;
}

std::vector<RepoRecord> read_repo_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<RepoRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(repo_from_json(nlohmann::json::parse(line), path.parent_path()));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!seen.insert({out.back().owner, out.back().repo}).second) {
      throw ParseError(line_no, "duplicate repository " + out.back().key());
    }
  }
  return out;
}

void append_activity(Corpus& corpus, const RepoRecord& repo, std::span<const CommitStat> commits,
                     std::size_t* orphan_count) {
  const auto activity = attribute_commits(repo.owner, repo.repo, repo.releases, commits);
  for (const auto& rel : activity.releases) {
    std::map<std::string, Timestamp> last_seen;
    std::set<std::string> devs;
    for (const auto& c : rel.commits) {
      const auto it = last_seen.find(c.dev_id);
      const double months = it == last_seen.end() ? 0.0 : days_between(it->second, c.timestamp) / kDaysPerMonth;
      last_seen[c.dev_id] = c.timestamp;
      devs.insert(c.dev_id);
      corpus.commits.push_back({repo.owner, repo.repo, c, months, months});
    }
    const double days = days_between(rel.window.start, rel.window.end);
    const auto n = static_cast<std::int64_t>(devs.size());
    corpus.release_efforts.push_back({repo.owner, repo.repo, rel.previous_release_no, rel.window.release_no,
                                      rel.window.start, rel.window.end, days, n,
                                      metrics::effort(n, days / kDaysPerMonth)});
  }
  for (const auto& c : activity.orphans) corpus.commits.push_back({repo.owner, repo.repo, c, 0.0, 0.0});
  if (orphan_count) *orphan_count += activity.orphans.size();
}

Corpus ingest(const IngestOptions& options, IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  auto candidates = read_repo_jsonl(options.repos_jsonl);
  rep.candidates = candidates.size();
  Corpus corpus;
  corpus.repos = options.apply_filter ? filter_repos(candidates, options.today, options.rules) : std::move(candidates);
  rep.kept = corpus.repos.size();

  struct Parsed {
    std::vector<CommitStat> commits;
    std::size_t skipped = 0;
    std::string warning;
  };
  auto parse_one = [&](const RepoRecord& r) {
    Parsed p;
    const auto log = options.logs_dir / (r.owner + "__" + r.repo + ".log");
    std::ifstream in(log);
    if (!in) {
      p.warning = r.key() + ": no commit log at " + log.string();
      return p;
    }
    try {
      auto parsed = parse_commit_log(in);
      p.commits = std::move(parsed.commits);
      p.skipped = parsed.skipped_lines;
    } catch (const ParseError& e) {
      throw ParseError(e.line(), log.string() + ": " + e.what());
    }
    return p;
  };

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Parsed> parsed(corpus.repos.size());
  for (std::size_t begin = 0; begin < corpus.repos.size(); begin += workers) {
    std::vector<std::future<Parsed>> batch;
    const std::size_t end = std::min(corpus.repos.size(), begin + workers);
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, parse_one, std::cref(corpus.repos[i])));
    }
    for (std::size_t i = begin; i < end; ++i) parsed[i] = batch[i - begin].get();
  }
  for (std::size_t i = 0; i < corpus.repos.size(); ++i) {
    if (!parsed[i].warning.empty()) rep.warnings.push_back(parsed[i].warning);
    rep.skipped_numstat_lines += parsed[i].skipped;
    append_activity(corpus, corpus.repos[i], parsed[i].commits, &rep.orphan_commits);
  }
  return corpus;
}

}  // namespace sdee::corpus
