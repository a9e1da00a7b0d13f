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

#include "sdee/corpus/store.hpp"

#include <sqlite3.h>

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>

#include "json.hpp"
#include "sdee/common/error.hpp"

namespace sdee::corpus {
namespace {

struct Column {
  const char* name;
  const char* type;
};

struct TableDef {
  const char* name;
  std::vector<Column> columns;
};

const std::vector<TableDef>& schema() {
  static const std::vector<TableDef> tables = {
      {"store_meta", {{"key", "TEXT"}, {"value", "BLOB"}}},
      {"repo_info",
       {{"owner", "TEXT"}, {"repo", "TEXT"}, {"size_mb", "REAL"}, {"stars", "INTEGER"},
        {"last_update", "TEXT"}, {"categories", "TEXT"}, {"description", "TEXT"}}},
      {"release_info",
       {{"owner", "TEXT"}, {"repo", "TEXT"}, {"release_no", "TEXT"}, {"release_date", "TEXT"}, {"size", "INTEGER"}}},
      {"commit_stats",
       {{"owner", "TEXT"}, {"repo", "TEXT"}, {"commit_id", "TEXT"}, {"dev_id", "TEXT"}, {"ts", "TEXT"},
        {"sloc_added", "INTEGER"}, {"sloc_deleted", "INTEGER"}, {"sloc_modified", "INTEGER"},
        {"effort", "REAL"}, {"dev_time", "REAL"}}},
      {"release_effort_estimate",
       {{"owner", "TEXT"}, {"repo", "TEXT"}, {"min_release_ids", "TEXT"}, {"max_release_ids", "TEXT"},
        {"start_release_date", "TEXT"}, {"end_release_date", "TEXT"}, {"days", "REAL"},
        {"dev_count", "INTEGER"}, {"effort_pm", "REAL"}}},
      {"soft_desc_pva_vec",
       {{"owner", "TEXT"}, {"repo", "TEXT"}, {"category", "TEXT"}, {"vector", "BLOB"}, {"ref_cos_sim", "REAL"}}},
  };
  return tables;
}

class Db {
 public:
  Db(const std::filesystem::path& path, int flags) {
    if (sqlite3_open_v2(path.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
      const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      throw InputError("cannot open store " + path.string() + ": " + msg);
    }
    sqlite3_busy_timeout(db_, 5000);
  }
  ~Db() { sqlite3_close(db_); }
  Db(const Db&) = delete;
  Db& operator=(const Db&) = delete;

  void exec(const std::string& sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      const std::string msg = err ? err : "unknown";
      sqlite3_free(err);
      throw Error("sqlite: " + msg + " in: " + sql);
    }
  }
  sqlite3* get() const { return db_; }

 private:
  sqlite3* db_ = nullptr;
};

class Stmt {
 public:
  Stmt(const Db& db, const std::string& sql) : db_(db.get()) {
    if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(std::string("sqlite: ") + sqlite3_errmsg(db_) + " in: " + sql);
    }
  }
  ~Stmt() { sqlite3_finalize(stmt_); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& bind(int i, const std::string& v) {
    sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Stmt& bind(int i, double v) {
    sqlite3_bind_double(stmt_, i, v);
    return *this;
  }
  Stmt& bind(int i, std::int64_t v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  Stmt& bind_blob(int i, const std::string& bytes) {
    sqlite3_bind_blob(stmt_, i, bytes.data(), static_cast<int>(bytes.size()), SQLITE_TRANSIENT);
    return *this;
  }

  /// true while rows remain
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(std::string("sqlite: ") + sqlite3_errmsg(db_));
  }
  void run() {
    step();
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }

  int type(int col) const { return sqlite3_column_type(stmt_, col); }
  sqlite3_stmt* get() const { return stmt_; }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

/// Typed column access that reports decode failures as LoadError.
class RowReader {
 public:
  RowReader(const Stmt& stmt, const char* table, std::size_t row) : s_(stmt), table_(table), row_(row) {}

  std::string text(int col) const {
    if (s_.type(col) != SQLITE_TEXT) fail(col, "expected TEXT");
    const auto* p = sqlite3_column_text(s_.get(), col);
    return {reinterpret_cast<const char*>(p), static_cast<std::size_t>(sqlite3_column_bytes(s_.get(), col))};
  }
  std::int64_t integer(int col) const {
    if (s_.type(col) != SQLITE_INTEGER) fail(col, "expected INTEGER");
    return sqlite3_column_int64(s_.get(), col);
  }
  double real(int col) const {
    const int t = s_.type(col);
    if (t != SQLITE_FLOAT && t != SQLITE_INTEGER) fail(col, "expected REAL");
    return sqlite3_column_double(s_.get(), col);
  }
  std::vector<float> vector(int col) const {
    if (s_.type(col) != SQLITE_BLOB && s_.type(col) != SQLITE_NULL) fail(col, "expected BLOB");
    const auto bytes = static_cast<std::size_t>(sqlite3_column_bytes(s_.get(), col));
    if (bytes % 4 != 0) fail(col, "vector blob length is not a multiple of 4");
    return decode_vector(sqlite3_column_blob(s_.get(), col), bytes);
  }
  Timestamp timestamp(int col) const {
    try {
      return parse_timestamp(text(col));
    } catch (const InputError& e) {
      fail(col, e.what());
    }
  }
  Date date(int col) const {
    try {
      return parse_date(text(col));
    } catch (const InputError& e) {
      fail(col, e.what());
    }
  }
  [[noreturn]] void fail(int col, const std::string& what) const {
    throw LoadError(table_, row_, std::string("column ") + sqlite3_column_name(s_.get(), col) + ": " + what);
  }

 private:
  const Stmt& s_;
  std::string table_;
  std::size_t row_;
};

std::string create_sql(const TableDef& t) {
  std::string sql = std::string("CREATE TABLE ") + t.name + " (";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) sql += ", ";
    sql += std::string(t.columns[i].name) + " " + t.columns[i].type;
  }
  return sql + ")";
}

std::string insert_sql(const TableDef& t) {
  std::string sql = std::string("INSERT INTO ") + t.name + " VALUES (";
  for (std::size_t i = 0; i < t.columns.size(); ++i) sql += i ? ",?" : "?";
  return sql + ")";
}

std::string select_sql(const TableDef& t) {
  std::string sql = "SELECT ";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) sql += ", ";
    sql += t.columns[i].name;
  }
  return sql + " FROM " + t.name + " ORDER BY rowid";
}

const TableDef& table(const std::string& name) {
  for (const auto& t : schema()) {
    if (name == t.name) return t;
  }
  throw InputError("unknown table " + name);
}

void check_schema(const Db& db) {
  for (const auto& t : schema()) {
    Stmt info(db, std::string("PRAGMA table_info(") + t.name + ")");
    std::set<std::string> cols;
    while (info.step()) cols.insert(reinterpret_cast<const char*>(sqlite3_column_text(info.get(), 1)));
    if (cols.empty()) throw SchemaError(std::string("store is missing table ") + t.name);
    for (const auto& c : t.columns) {
      if (!cols.count(c.name)) throw SchemaError(std::string("table ") + t.name + " is missing column " + c.name);
    }
  }
}

}  // namespace

std::string encode_vector(const std::vector<float>& v) {
  std::string out(v.size() * 4, '\0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(v[i]);
    for (int b = 0; b < 4; ++b) out[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  return out;
}

std::vector<float> decode_vector(const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::vector<float> v(bytes / 4);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(p[i * 4 + b]) << (8 * b);
    v[i] = std::bit_cast<float>(bits);
  }
  return v;
}

void persist(const Corpus& corpus, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  std::filesystem::remove(tmp);
  {
    Db db(tmp, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
    db.exec("PRAGMA journal_mode=OFF");
    db.exec("BEGIN");
    for (const auto& t : schema()) db.exec(create_sql(t));

    Stmt meta(db, insert_sql(table("store_meta")));
    auto put_meta = [&](const std::string& k, const std::string& v) { meta.bind(1, k).bind_blob(2, v).run(); };
    put_meta("schema_version", std::to_string(kStoreSchemaVersion));
    put_meta("reference_vector", encode_vector(corpus.reference));
    put_meta("model_id", corpus.model_id);
    put_meta("model_path", corpus.model_path);
    if (corpus.alpha_hat) put_meta("alpha_hat", nlohmann::json(*corpus.alpha_hat).dump());

    Stmt repo(db, insert_sql(table("repo_info")));
    Stmt rel(db, insert_sql(table("release_info")));
    for (const auto& r : corpus.repos) {
      repo.bind(1, r.owner).bind(2, r.repo).bind(3, r.size_mb).bind(4, r.stars)
          .bind(5, format_date(r.last_update)).bind(6, nlohmann::json(r.categories).dump())
          .bind(7, r.description.raw_text).run();
      for (const auto& ri : r.releases) {
        rel.bind(1, r.owner).bind(2, r.repo).bind(3, ri.release_no).bind(4, format_timestamp(ri.date))
            .bind(5, ri.size_bytes).run();
      }
    }
    Stmt commit(db, insert_sql(table("commit_stats")));
    for (const auto& c : corpus.commits) {
      commit.bind(1, c.owner).bind(2, c.repo).bind(3, c.stat.commit_id).bind(4, c.stat.dev_id)
          .bind(5, format_timestamp(c.stat.timestamp)).bind(6, c.stat.sloc_added).bind(7, c.stat.sloc_deleted)
          .bind(8, c.stat.sloc_modified).bind(9, c.effort).bind(10, c.dev_time).run();
    }
    Stmt eff(db, insert_sql(table("release_effort_estimate")));
    for (const auto& e : corpus.release_efforts) {
      eff.bind(1, e.owner).bind(2, e.repo).bind(3, e.min_release_ids).bind(4, e.max_release_ids)
          .bind(5, format_timestamp(e.start_release_date)).bind(6, format_timestamp(e.end_release_date))
          .bind(7, e.days).bind(8, e.dev_count).bind(9, e.effort_pm).run();
    }
    Stmt vec(db, insert_sql(table("soft_desc_pva_vec")));
    for (const auto& v : corpus.vectors) {
      vec.bind(1, v.owner).bind(2, v.repo).bind(3, v.category).bind_blob(4, encode_vector(v.vector))
          .bind(5, v.ref_cos_sim).run();
    }
    db.exec("COMMIT");
  }
  std::filesystem::rename(tmp, path);
}

Corpus load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("store not found: " + path.string());
  Db db(path, SQLITE_OPEN_READONLY);
  check_schema(db);
  Corpus c;

  {
    Stmt s(db, select_sql(table("store_meta")));
    std::map<std::string, std::string> meta;
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "store_meta", row);
      const auto* blob = static_cast<const char*>(sqlite3_column_blob(s.get(), 1));
      meta[r.text(0)] = std::string(blob ? blob : "", static_cast<std::size_t>(sqlite3_column_bytes(s.get(), 1)));
    }
    if (meta["schema_version"] != std::to_string(kStoreSchemaVersion)) {
      throw SchemaError("store schema version '" + meta["schema_version"] + "', expected " +
                        std::to_string(kStoreSchemaVersion));
    }
    const auto& ref = meta["reference_vector"];
    if (ref.size() % 4 != 0) throw LoadError("store_meta", 0, "reference_vector length is not a multiple of 4");
    c.reference = decode_vector(ref.data(), ref.size());
    c.model_id = meta["model_id"];
    c.model_path = meta["model_path"];
    if (meta.count("alpha_hat")) {
      try {
        c.alpha_hat = nlohmann::json::parse(meta["alpha_hat"]).get<double>();
      } catch (const nlohmann::json::exception& e) {
        throw LoadError("store_meta", 0, std::string("alpha_hat: ") + e.what());
      }
    }
  }
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  {
    Stmt s(db, select_sql(table("repo_info")));
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "repo_info", row);
      RepoRecord rec;
      rec.owner = r.text(0);
      rec.repo = r.text(1);
      rec.size_mb = r.real(2);
      rec.stars = r.integer(3);
      rec.last_update = r.date(4);
      try {
        rec.categories = nlohmann::json::parse(r.text(5)).get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception& e) {
        r.fail(5, e.what());
      }
      rec.description = DescriptionDoc::from_text(r.text(6));
      if (!index.emplace(std::pair{rec.owner, rec.repo}, c.repos.size()).second) {
        throw LoadError("repo_info", row, "duplicate repository " + rec.key());
      }
      c.repos.push_back(std::move(rec));
    }
  }
  {
    Stmt s(db, select_sql(table("release_info")));
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "release_info", row);
      const auto it = index.find({r.text(0), r.text(1)});
      if (it == index.end()) throw LoadError("release_info", row, "release of unknown repository");
      c.repos[it->second].releases.push_back({r.text(2), r.timestamp(3), r.integer(4)});
    }
  }
  {
    Stmt s(db, select_sql(table("commit_stats")));
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "commit_stats", row);
      CommitRow cr;
      cr.owner = r.text(0);
      cr.repo = r.text(1);
      cr.stat = {r.text(2), r.text(3), r.timestamp(4), r.integer(5), r.integer(6), r.integer(7)};
      if (cr.stat.sloc_added < 0 || cr.stat.sloc_deleted < 0 || cr.stat.sloc_modified < 0) {
        throw LoadError("commit_stats", row, "negative line count");
      }
      cr.effort = r.real(8);
      cr.dev_time = r.real(9);
      c.commits.push_back(std::move(cr));
    }
  }
  {
    Stmt s(db, select_sql(table("release_effort_estimate")));
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "release_effort_estimate", row);
      c.release_efforts.push_back({r.text(0), r.text(1), r.text(2), r.text(3), r.timestamp(4), r.timestamp(5),
                                   r.real(6), r.integer(7), r.real(8)});
    }
  }
  {
    Stmt s(db, select_sql(table("soft_desc_pva_vec")));
    for (std::size_t row = 0; s.step(); ++row) {
      RowReader r(s, "soft_desc_pva_vec", row);
      c.vectors.push_back({r.text(0), r.text(1), r.text(2), r.vector(3), r.real(4)});
    }
  }
  return c;
}

std::string dump_table(const std::filesystem::path& path, const std::string& name) {
  if (!std::filesystem::exists(path)) throw InputError("store not found: " + path.string());
  Db db(path, SQLITE_OPEN_READONLY);
  const TableDef& t = table(name);
  Stmt s(db, select_sql(t));
  std::string out;
  char buf[64];
  const int ncol = static_cast<int>(t.columns.size());
  while (s.step()) {
    for (int i = 0; i < ncol; ++i) {
      if (i) out += '|';
      switch (s.type(i)) {
        case SQLITE_INTEGER:
          std::snprintf(buf, sizeof buf, "i:%lld", static_cast<long long>(sqlite3_column_int64(s.get(), i)));
          out += buf;
          break;
        case SQLITE_FLOAT:
          std::snprintf(buf, sizeof buf, "r:%.17g", sqlite3_column_double(s.get(), i));
          out += buf;
          break;
        case SQLITE_TEXT:
          out += "t:";
          out.append(reinterpret_cast<const char*>(sqlite3_column_text(s.get(), i)),
                     static_cast<std::size_t>(sqlite3_column_bytes(s.get(), i)));
          break;
        case SQLITE_BLOB: {
          out += "b:";
          const auto* p = static_cast<const unsigned char*>(sqlite3_column_blob(s.get(), i));
          for (int b = 0; b < sqlite3_column_bytes(s.get(), i); ++b) {
            std::snprintf(buf, sizeof buf, "%02x", p[b]);
            out += buf;
          }
          break;
        }
        default:
          out += "null";
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace sdee::corpus
