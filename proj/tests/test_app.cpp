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

#include <doctest.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "support.hpp"

#include "sdee/app/cli.hpp"
#include "sdee/app/config.hpp"
#include "sdee/app/service.hpp"
#include "sdee/common/error.hpp"
#include "sdee/corpus/store.hpp"
#include "sdee/embed/model_io.hpp"

// after Eigen: <resolv.h> defines a _res macro that collides with Eigen internals
#include "httplib.h"

using namespace sdee;
using namespace sdee::app;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fixture_file(const std::string& rel) { return (testing::fixture_dir() / rel).string(); }

const corpus::CategoryTaxonomy& taxonomy() {
  static const auto t = corpus::CategoryTaxonomy::load(testing::fixture_dir() / "taxonomy.json");
  return t;
}

std::shared_ptr<const Snapshot> fixture_snapshot(std::optional<double> alpha = std::nullopt) {
  const auto& p = testing::fixture_pipeline();
  auto s = std::make_shared<Snapshot>();
  s->estimator = std::make_shared<estimate::Estimator>(p.corpus, p.model, alpha);
  s->store_records = s->estimator->index().size();
  return s;
}

json self_request(const corpus::RepoRecord& repo) {
  // no title: the document text must equal the stored description exactly
  return {{"description", repo.description.raw_text}, {"category", "Software library"}};
}

}  // namespace

TEST_CASE("config overlays and validation") {
  const auto c = config_from_json({{"store_path", "/tmp/s.db"}, {"k", 3}, {"alpha_hat_override", 0.5}, {"seed", 9}});
  CHECK(c.store_path == "/tmp/s.db");
  CHECK(c.k == 3);
  CHECK(c.alpha_hat_override == 0.5);
  CHECK(c.seed == 9);
  CHECK(c.bind_address == AppConfig{}.bind_address);
  CHECK(c.resolve_model_path("") == "/tmp/s.pvam");
  CHECK(c.resolve_model_path("/m/x.pvam") == "/m/x.pvam");

  auto field_of = [](const json& j) {
    try {
      config_from_json(j);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of({{"k", 0}}) == "k");
  CHECK(field_of({{"k", "2"}}) == "k");
  CHECK(field_of({{"seed", -1}}) == "seed");
  CHECK(field_of({{"store", "x"}}) == "store");
  CHECK(field_of({{"bind_address", "nohost:port"}}) == "bind_address");
  CHECK(field_of(json::array()) == "config");

  const auto a = parse_bind_address("0.0.0.0:9000");
  CHECK(a.host == "0.0.0.0");
  CHECK(a.port == 9000);
  CHECK(parse_bind_address(":81").host == "0.0.0.0");
  CHECK(parse_bind_address("8080").host == "127.0.0.1");
  CHECK_THROWS_AS(parse_bind_address("host:70000"), ValidationError);
  CHECK_THROWS_AS(parse_bind_address("host:"), ValidationError);

  testing::TempDir dir;
  std::ofstream(dir / "c.json") << R"({"k": 4, "taxonomy_path": "t.json"})";
  const auto loaded = load_config(dir / "c.json");
  CHECK(loaded.k == 4);
  CHECK(loaded.taxonomy_path == "t.json");
  CHECK_THROWS_AS(load_config(dir / "missing.json"), InputError);
}

TEST_CASE("cli usage errors exit 2 with help text") {
  const auto none = cli({});
  CHECK(none.code == kExitUsage);
  CHECK(none.err.find("Usage") != std::string::npos);
  CHECK(none.out.empty());

  const auto unknown = cli({"estimate", "--desc-file", "d.txt", "--bogus"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
  CHECK(unknown.err.find("--desc-file") != std::string::npos);  // subcommand help

  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"evaluate", "--protocol", "loo", "--out", "x.csv"}).code == kExitUsage);
  CHECK(cli({"estimate", "--desc-file", "d", "--k", "two"}).code == kExitUsage);

  const auto help = cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("estimate") != std::string::npos);
}

TEST_CASE("cli domain errors exit 1") {
  testing::TempDir dir;
  const auto missing = cli({"estimate", "--desc-file", fixture_file("queries/compression_library.txt"), "--store",
                            (dir / "none.db").string()});
  CHECK(missing.code == kExitDomainError);
  CHECK(missing.err.find("store not found") != std::string::npos);
  CHECK(missing.out.empty());

  CHECK(cli({"metrics", "--store", (dir / "none.db").string()}).code == kExitDomainError);
  CHECK(cli({"--config", (dir / "none.json").string(), "metrics"}).code == kExitDomainError);
  CHECK(cli({"ingest", "--repos", (dir / "none.jsonl").string(), "--logs", dir.path().string(), "--out",
             (dir / "s.db").string()})
            .code == kExitDomainError);
}

TEST_CASE("cli pipeline: ingest, metrics, train, calibrate, estimate, evaluate") {
  testing::TempDir dir;
  const auto store = (dir / "store.db").string();
  const auto ingest = cli({"ingest", "--repos", fixture_file("repos.jsonl"), "--logs", fixture_file("logs"), "--out",
                           store, "--today", "2024-06-01"});
  REQUIRE_MESSAGE(ingest.code == 0, ingest.err);
  CHECK(json::parse(ingest.out).at("kept") == 60);

  const auto metrics = cli({"metrics", "--store", store});
  REQUIRE(metrics.code == 0);
  CHECK(metrics.out.rfind("owner,repo,dev_count,dev_time_months,sloc_m,effort_pm\n", 0) == 0);
  CHECK(std::count(metrics.out.begin(), metrics.out.end(), '\n') == 61);
  const auto metrics_csv = cli({"metrics", "--store", store, "--csv", (dir / "m.csv").string()});
  REQUIRE(metrics_csv.code == 0);
  CHECK(file_bytes(dir / "m.csv") == metrics.out);
  CHECK(json::parse(metrics_csv.out).at("pearson").size() == 3);

  const auto train = cli({"train", "--store", store, "--epochs", "10", "--vec-size", "20", "--seed", "7"});
  REQUIRE_MESSAGE(train.code == 0, train.err);
  const auto trained = json::parse(train.out);
  CHECK(trained.at("vectors") == 60);
  CHECK(std::filesystem::exists(dir / "store.pvam"));

  const auto cal = cli({"calibrate", "--store", store});
  REQUIRE_MESSAGE(cal.code == 0, cal.err);
  const auto calibration = json::parse(cal.out);
  CHECK(calibration.at("alpha_hat").get<double>() > calibration.at("different").at("avg").get<double>());
  CHECK(corpus::load(store).alpha_hat == calibration.at("alpha_hat").get<double>());

  // self-description retrieves its own repository
  const auto& repo = testing::fixture_corpus().repos[4];
  const auto desc = (dir / "self.md").string();
  std::ofstream(desc, std::ios::binary) << repo.description.raw_text;
  const auto self = cli({"estimate", "--store", store, "--desc-file", desc, "--k", "2"});
  REQUIRE_MESSAGE(self.code == 0, self.err);
  const auto result = json::parse(self.out);
  CHECK(result.at("model_id") == trained.at("model_id"));
  bool found = false;
  for (const auto& m : result.at("matches")) found = found || (m.at("owner") == repo.owner && m.at("repo") == repo.repo);
  CHECK(found);
  CHECK(result.at("matches")[0].at("similarity") == 1.0);

  // a new description is below the calibrated threshold unless overridden
  const auto strict = cli({"estimate", "--store", store, "--desc-file", fixture_file("queries/compression_library.txt")});
  CHECK(strict.code == kExitDomainError);
  CHECK(strict.err.find("best_below_threshold") != std::string::npos);
  const auto relaxed = cli({"estimate", "--store", store, "--desc-file", fixture_file("queries/compression_library.json"),
                            "--json", "--alpha", "0", "--taxonomy", fixture_file("taxonomy.json")});
  REQUIRE_MESSAGE(relaxed.code == 0, relaxed.err);
  const auto r = json::parse(relaxed.out);
  CHECK(r.at("k_used") == 2);
  CHECK(r.at("alpha_hat") == 0.0);
  const auto* top = testing::fixture_corpus().find(r.at("matches")[0].at("owner"), r.at("matches")[0].at("repo"));
  REQUIRE(top);
  CHECK(std::find(top->categories.begin(), top->categories.end(), "compression") != top->categories.end());

  const auto k3 = cli({"estimate", "--store", store, "--desc-file", fixture_file("queries/compression_library.json"),
                       "--json", "--alpha", "0", "--k", "3"});
  REQUIRE(k3.code == 0);
  CHECK(json::parse(k3.out).at("k_used") == 3);

  const auto csv = dir / "kfold.csv";
  const auto eval = cli({"evaluate", "--protocol", "kfold", "--k", "3", "--store", store, "--out", csv.string(),
                         "--raw", (dir / "raw.jsonl").string(), "--significance", (dir / "sig.txt").string(),
                         "--vec-size", "20"});
  REQUIRE_MESSAGE(eval.code == 0, eval.err);
  const auto report = file_bytes(csv);
  CHECK(report.rfind("estimator,metric,mean,stddev,n,note\n", 0) == 0);
  CHECK(std::count(report.begin(), report.end(), '\n') == 1 + 5 * 6);
  CHECK(eval.out.find("DevSDEE") != std::string::npos);
  CHECK(file_bytes(dir / "sig.txt").find("DevSDEE MAR vs ATLM") != std::string::npos);
}

TEST_CASE("service handlers") {
  const Service service(fixture_snapshot(), taxonomy(), 2);

  const auto health = service.healthz();
  CHECK(health.status == 200);
  const auto h = json::parse(health.body);
  CHECK(h.at("status") == "ok");
  CHECK(h.at("model_id") == testing::fixture_pipeline().model->id());
  CHECK(h.at("store_records") == 60);

  const auto cats = service.categories();
  CHECK(cats.status == 200);
  const auto c = json::parse(cats.body);
  CHECK(c.at("abstract").size() == 11);
  CHECK(c.at("by_group").at("Software library").size() >= 1);

  const auto& repo = testing::fixture_corpus().repos[10];
  const auto ok = service.estimate(self_request(repo).dump());
  REQUIRE(ok.status == 200);
  const auto body = json::parse(ok.body);
  bool found = false;
  for (const auto& m : body.at("matches")) found = found || (m.at("owner") == repo.owner && m.at("repo") == repo.repo);
  CHECK(found);
  for (const char* key : {"effort_person_months", "k_used", "alpha_hat", "model_id", "matches"}) {
    CHECK(body.contains(key));
  }
  for (const char* key : {"owner", "repo", "similarity", "effort_person_months", "snippet"}) {
    CHECK(body.at("matches")[0].contains(key));
  }

  auto empty = self_request(repo);
  empty["description"] = "";
  const auto invalid = service.estimate(empty.dump());
  CHECK(invalid.status == 422);
  CHECK(json::parse(invalid.body).at("errors")[0].at("field") == "description");

  auto bad_sub = self_request(repo);
  bad_sub["subcategory"] = "json";  // a real category, but not a library
  bad_sub["category"] = "Software tool";
  CHECK(json::parse(service.estimate(bad_sub.dump()).body).at("errors")[0].at("field") == "subcategory");

  auto bad_k = self_request(repo);
  bad_k["k"] = -1;
  CHECK(json::parse(service.estimate(bad_k.dump()).body).at("errors")[0].at("field") == "k");

  CHECK(service.estimate("{not json").status == 400);
  CHECK(service.estimate("[1,2]").status == 422);
  const auto oov = service.estimate(json{{"description", "zzqqxx yyvvww"}, {"category", "Software library"}}.dump());
  CHECK(oov.status == 422);

  const Service strict(fixture_snapshot(1.5), taxonomy(), 2);
  const auto none = strict.estimate(self_request(repo).dump());
  CHECK(none.status == 404);
  const auto nb = json::parse(none.body);
  REQUIRE(nb.at("best_below_threshold").is_object());
  CHECK(nb.at("best_below_threshold").at("similarity").get<double>() < 1.5);
}

TEST_CASE("identical requests give byte-identical responses") {
  const Service a(fixture_snapshot(0.0), taxonomy(), 2);
  const Service b(fixture_snapshot(0.0), taxonomy(), 2);
  std::ifstream in(testing::fixture_dir() / "queries" / "compression_library.json");
  const std::string body{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto first = a.estimate(body);
  REQUIRE(first.status == 200);
  for (int i = 0; i < 5; ++i) CHECK(a.estimate(body).body == first.body);
  CHECK(b.estimate(body).body == first.body);
}

TEST_CASE("concurrent estimates leave the store unchanged") {
  testing::TempDir dir;
  const auto& p = testing::fixture_pipeline();
  auto stored = *p.corpus;
  stored.model_path = (dir / "m.pvam").string();
  corpus::persist(stored, dir / "s.db");
  embed::save_model(*p.model, dir / "m.pvam");
  const auto before = file_bytes(dir / "s.db");

  AppConfig cfg;
  cfg.store_path = dir / "s.db";
  cfg.alpha_hat_override = 0.0;
  const Service service(load_snapshot(cfg), taxonomy(), 2);
  const auto reference = service.estimate(self_request(p.corpus->repos[0]).dump()).body;

  std::atomic<int> mismatches{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        const auto& repo = p.corpus->repos[static_cast<std::size_t>((t * 10 + i) % 60)];
        const auto r = service.estimate(self_request(repo).dump());
        if (r.status != 200) ++mismatches;
        if (repo.key() == p.corpus->repos[0].key() && r.body != reference) ++mismatches;
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(mismatches == 0);
  CHECK(file_bytes(dir / "s.db") == before);

  AppConfig missing = cfg;
  missing.model_path = dir / "nope.pvam";
  CHECK_THROWS_AS(load_snapshot(missing), InputError);
}

TEST_CASE("reload swaps the snapshot atomically") {
  Service service(fixture_snapshot(), taxonomy(), 2);
  const auto old_model = json::parse(service.healthz().body).at("model_id");
  auto other_corpus = std::make_shared<corpus::Corpus>(testing::fixture_corpus());
  const auto docs = estimate::corpus_documents(*other_corpus);
  auto model = std::make_shared<embed::SimilarityModel>(embed::train(docs, embed::TrainingScenario{5, 12, 0, 3}));
  estimate::embed_corpus(*other_corpus, *model, 5);
  auto snap = std::make_shared<Snapshot>();
  snap->estimator = std::make_shared<estimate::Estimator>(other_corpus, model, 0.0);
  snap->store_records = snap->estimator->index().size();
  service.reload(snap);
  CHECK(json::parse(service.healthz().body).at("model_id") == model->id());
  CHECK(json::parse(service.healthz().body).at("model_id") != old_model);
  CHECK_THROWS_AS(service.reload(nullptr), InputError);
}

TEST_CASE("http round trip") {
  const Service service(fixture_snapshot(), taxonomy(), 2);
  HttpServer server(service);
  const int port = server.bind({"127.0.0.1", 0});
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });
  while (!server.running()) std::this_thread::sleep_for(std::chrono::milliseconds(5));

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->body == service.healthz().body);
  CHECK(health->get_header_value("Content-Type").find("application/json") == 0);

  const auto& repo = testing::fixture_corpus().repos[20];
  const auto body = self_request(repo).dump();
  const auto est = client.Post("/api/v1/estimate", body, "application/json");
  REQUIRE(est);
  CHECK(est->status == 200);
  CHECK(est->body == service.estimate(body).body);

  const auto bad = client.Post("/api/v1/estimate", R"({"description":"","category":"Software library"})",
                               "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 422);

  const auto cats = client.Get("/api/v1/categories");
  REQUIRE(cats);
  CHECK(json::parse(cats->body).at("abstract").size() == 11);

  const auto missing = client.Get("/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  loop.join();
  CHECK_FALSE(server.running());

  HttpServer second(service);
  CHECK_THROWS_AS(second.bind({"203.0.113.1", 1}), Error);
}
