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
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "sdee/common/time.hpp"
#include "sdee/corpus/ingest.hpp"
#include "sdee/corpus/tokenize.hpp"
#include "sdee/embed/model.hpp"
#include "sdee/embed/pvdbow.hpp"
#include "sdee/estimate/estimator.hpp"

namespace sdee::testing {

inline std::filesystem::path fixture_dir() { return SDEE_FIXTURE_DIR; }

struct TopicDoc {
  embed::Document doc;
  std::string topic;
};

/// The three-topic description fixture, tokenized.
inline std::vector<TopicDoc> load_topics3() {
  std::ifstream in(fixture_dir() / "topics3.jsonl");
  std::vector<TopicDoc> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.push_back({{j.at("id").get<std::string>(), corpus::tokenize(j.at("text").get<std::string>())},
                   j.at("topic").get<std::string>()});
  }
  return out;
}

inline std::vector<embed::Document> documents(const std::vector<TopicDoc>& docs) {
  std::vector<embed::Document> out;
  for (const auto& d : docs) out.push_back(d.doc);
  return out;
}

inline Date fixture_today() { return parse_date("2024-06-01"); }

inline corpus::IngestOptions fixture_ingest_options() {
  corpus::IngestOptions o;
  o.repos_jsonl = fixture_dir() / "repos.jsonl";
  o.logs_dir = fixture_dir() / "logs";
  o.today = fixture_today();
  return o;
}

/// The ingested fixture corpus (filtered), without vectors.
inline const corpus::Corpus& fixture_corpus() {
  static const corpus::Corpus c = corpus::ingest(fixture_ingest_options());
  return c;
}

/// Model trained on every fixture description, and the corpus embedded
/// with it and calibrated at the given threshold.
struct FixturePipeline {
  std::shared_ptr<const embed::SimilarityModel> model;
  std::shared_ptr<const corpus::Corpus> corpus;
};

inline const FixturePipeline& fixture_pipeline() {
  static const FixturePipeline p = [] {
    auto c = std::make_shared<corpus::Corpus>(fixture_corpus());
    const auto docs = estimate::corpus_documents(*c);
    auto m = std::make_shared<embed::SimilarityModel>(embed::train(docs, embed::TrainingScenario{10, 20, 0, 7}));
    estimate::embed_corpus(*c, *m, 11);
    c->alpha_hat = 1.0;
    return FixturePipeline{m, c};
  }();
  return p;
}

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sdee-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace sdee::testing
