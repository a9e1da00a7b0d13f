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

#include "sdee/app/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdee/app/config.hpp"
#include "sdee/app/service.hpp"
#include "sdee/common/error.hpp"
#include "sdee/corpus/ingest.hpp"
#include "sdee/corpus/store.hpp"
#include "sdee/embed/grid.hpp"
#include "sdee/embed/model_io.hpp"
#include "sdee/embed/pvdbow.hpp"
#include "sdee/embed/testbed.hpp"
#include "sdee/estimate/estimator.hpp"
#include "sdee/eval/protocols.hpp"
#include "sdee/metrics/correlation.hpp"
#include "sdee/metrics/effort.hpp"

namespace sdee::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string(what) + " not found: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

json stats_json(const embed::ScoreStats& s) {
  return {{"min", s.min}, {"avg", s.avg}, {"stddev", s.stddev}, {"max", s.max}, {"count", s.count}};
}

json classification_json(const embed::ClassificationMetrics& m) {
  return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall},
          {"f1", m.f1},             {"roc_auc", m.roc_auc},     {"combined", m.combined}};
}

json scenario_json(const embed::TrainingScenario& s) {
  return {{"epochs", s.epochs}, {"vector_size", s.vector_size}, {"training_samples", s.training_samples},
          {"seed", s.seed}};
}

Date today_utc() { return std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now()); }

// Values given on the command line; unset ones fall back to the config file,
// then to AppConfig defaults.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> store;
  std::optional<std::string> model;
  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::optional<std::string> bind;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> taxonomy;

  AppConfig resolve() const {
    AppConfig c;
    if (config) c = load_config(*config);
    if (store) c.store_path = *store;
    if (model) c.model_path = *model;
    if (k) c.k = *k;
    if (alpha) c.alpha_hat_override = *alpha;
    if (bind) c.bind_address = *bind;
    if (seed) c.seed = *seed;
    if (taxonomy) c.taxonomy_path = *taxonomy;
    c.validate();
    return c;
  }
};

void add_store(CLI::App* sub, Overrides& o) {
  sub->add_option("--store", o.store, "Corpus store file")->type_name("PATH");
}
void add_model(CLI::App* sub, Overrides& o) {
  sub->add_option("--model", o.model, "Similarity model file (default: the one recorded in the store)")
      ->type_name("PATH");
}
void add_seed(CLI::App* sub, Overrides& o) { sub->add_option("--seed", o.seed, "Root random seed"); }
void add_alpha(CLI::App* sub, Overrides& o) {
  sub->add_option("--alpha", o.alpha, "Similarity threshold overriding the calibrated one");
}
void add_taxonomy(CLI::App* sub, Overrides& o) {
  sub->add_option("--taxonomy", o.taxonomy, "Category taxonomy JSON")->type_name("PATH");
}

// ---- subcommands -----------------------------------------------------------

struct IngestArgs {
  std::string repos, logs;
  std::optional<std::string> out, today;
  bool no_filter = false;
};

int run_ingest(const IngestArgs& a, const Overrides& o, std::ostream& out, std::ostream& err) {
  auto cfg = o.resolve();
  if (a.out) cfg.store_path = *a.out;
  corpus::IngestOptions opts;
  opts.repos_jsonl = a.repos;
  opts.logs_dir = a.logs;
  opts.today = a.today ? parse_date(*a.today) : today_utc();
  opts.apply_filter = !a.no_filter;
  corpus::IngestReport report;
  const auto c = corpus::ingest(opts, &report);
  corpus::persist(c, cfg.store_path);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  const auto records = metrics::effort_records(c);
  out << json{{"store", cfg.store_path.string()},
              {"today", format_date(opts.today)},
              {"candidates", report.candidates},
              {"kept", report.kept},
              {"effort_records", records.size()},
              {"commits", c.commits.size()},
              {"skipped_numstat_lines", report.skipped_numstat_lines},
              {"orphan_commits", report.orphan_commits},
              {"warnings", report.warnings.size()}}
             .dump(2)
      << '\n';
  return kExitOk;
}

int run_metrics(const std::optional<std::string>& csv, const Overrides& o, std::ostream& out, std::ostream& err) {
  const auto cfg = o.resolve();
  const auto c = corpus::load(cfg.store_path);
  const auto records = metrics::effort_records(c);
  json corr = nullptr;
  std::string corr_note;
  try {
    const auto r = metrics::correlation_report(records);
    corr = {{"sloc_effort", r.sloc_effort}, {"devcount_effort", r.devcount_effort}, {"time_effort", r.time_effort}};
  } catch (const Error& e) {
    corr_note = e.what();
  }
  if (csv) {
    auto file = open_output(*csv);
    metrics::write_metrics_csv(file, records);
    json summary{{"records", records.size()}, {"csv", *csv}, {"pearson", corr}};
    if (!corr_note.empty()) summary["pearson_undefined"] = corr_note;
    out << summary.dump(2) << '\n';
  } else {
    metrics::write_metrics_csv(out, records);
    if (corr.is_null()) {
      err << "pearson correlations undefined: " << corr_note << '\n';
    } else {
      err << "pearson r vs effort_pm: sloc_m " << corr["sloc_effort"].get<double>() << ", dev_count "
          << corr["devcount_effort"].get<double>() << ", dev_time_months " << corr["time_effort"].get<double>()
          << '\n';
    }
  }
  return kExitOk;
}

struct TrainArgs {
  int epochs = 10;
  int vec_size = 50;
  int samples = 0;
  bool grid = false;
  std::optional<std::string> model_out, grid_csv;
};

int run_train(const TrainArgs& a, const Overrides& o, std::ostream& out, std::ostream& err) {
  const auto cfg = o.resolve();
  auto c = corpus::load(cfg.store_path);
  const auto docs = estimate::corpus_documents(c);
  fs::path model_path = a.model_out ? fs::path(*a.model_out) : cfg.resolve_model_path({});
  if (model_path.has_parent_path()) fs::create_directories(model_path.parent_path());

  json result;
  embed::SimilarityModel model;
  if (a.grid) {
    embed::GridOptions g;
    g.seed = cfg.seed;
    g.split_seed = cfg.seed;
    auto dir = model_path;
    dir.replace_extension();
    g.model_dir = dir.string() + "_grid";
    auto grid = embed::grid_search(docs, g);
    const fs::path csv_path = a.grid_csv ? fs::path(*a.grid_csv) : fs::path(dir.string() + "_grid.csv");
    auto csv = open_output(csv_path);
    embed::write_grid_csv(csv, grid.rows);
    for (const auto& row : grid.rows) {
      if (row.error) err << "grid cell " << row.cell.scenario_id << " failed: " << *row.error << '\n';
    }
    const auto& best = grid.rows[grid.best];
    model = std::move(grid.best_model);
    c.alpha_hat = best.calibration.alpha_hat;
    result = {{"grid_csv", csv_path.string()},
              {"cells", grid.rows.size()},
              {"best_scenario_id", best.cell.scenario_id},
              {"metrics", classification_json(best.metrics)},
              {"alpha_hat", best.calibration.alpha_hat}};
  } else {
    embed::TrainingScenario s{a.epochs, a.vec_size, a.samples, cfg.seed};
    s.validate(docs.size());
    embed::TrainingTrace trace;
    model = embed::train(docs, s, &trace);
    c.alpha_hat.reset();  // a new model invalidates an earlier calibration
    if (!trace.epoch_loss.empty()) result["final_epoch_loss"] = trace.epoch_loss.back();
  }
  embed::save_model(model, model_path);
  const auto skipped = estimate::embed_corpus(c, model, cfg.seed);
  for (const auto& key : skipped) err << "warning: no in-vocabulary tokens, not embedded: " << key << '\n';
  c.model_path = fs::absolute(model_path).lexically_normal().string();
  corpus::persist(c, cfg.store_path);
  result["model_id"] = model.id();
  result["model_path"] = c.model_path;
  result["scenario"] = scenario_json(model.scenario);
  result["vocabulary"] = model.vocab.size();
  result["vectors"] = c.vectors.size();
  result["skipped"] = skipped;
  out << result.dump(2) << '\n';
  return kExitOk;
}

int run_calibrate(std::size_t pairs, const Overrides& o, std::ostream& out) {
  const auto cfg = o.resolve();
  auto c = corpus::load(cfg.store_path);
  const auto model_path = cfg.resolve_model_path(c.model_path);
  if (!fs::exists(model_path)) throw InputError("model not found: " + model_path.string());
  const auto model = embed::load_model(model_path);
  if (!c.model_id.empty() && c.model_id != model.id()) {
    throw InputError("store vectors were built with model " + c.model_id + ", not " + model.id() +
                     "; re-run train");
  }
  const auto docs = estimate::corpus_documents(c);
  const auto split = embed::build_testbed(docs, cfg.seed, pairs);
  const auto cal = embed::calibrate(model, split.testbed);
  const auto quality = embed::evaluate_similarity_model(model, split.testbed, cal.alpha_hat);
  c.alpha_hat = cal.alpha_hat;
  corpus::persist(c, cfg.store_path);
  out << json{{"alpha_hat", cal.alpha_hat},
              {"model_id", model.id()},
              {"same", stats_json(cal.stats_same)},
              {"different", stats_json(cal.stats_different)},
              {"skipped_pairs", cal.skipped_pairs},
              {"metrics", classification_json(quality)}}
             .dump(2)
      << '\n';
  return kExitOk;
}

struct EstimateArgs {
  std::string desc_file;
  bool json_body = false;
  std::string title;
  std::string category = "Software library";
};

int run_estimate(const EstimateArgs& a, const Overrides& o, std::ostream& out, std::ostream& err) {
  const auto cfg = o.resolve();
  const auto snapshot = load_snapshot(cfg);
  const auto text = read_file(a.desc_file, "description file");
  estimate::EstimateRequest request;
  std::optional<std::size_t> body_k;
  if (a.json_body) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(a.desc_file + ": " + e.what());
    }
    request = estimate::request_from_json(j, &body_k);
  } else {
    request.title = a.title;
    request.description = text;
    request.category = a.category;
  }
  corpus::CategoryTaxonomy taxonomy;
  if (!cfg.taxonomy_path.empty()) taxonomy = corpus::CategoryTaxonomy::load(cfg.taxonomy_path);
  request.validate(taxonomy.categories().empty() ? nullptr : &taxonomy);
  const std::size_t k = o.k ? *o.k : body_k.value_or(cfg.k);
  try {
    const auto result = snapshot->estimator->estimate(request, k);
    out << estimate::result_to_json(result).dump(2) << '\n';
  } catch (const estimate::NoSimilarSoftware& e) {
    err << "error: " << e.what() << '\n';
    if (e.best_below_threshold()) {
      err << "best_below_threshold: " << estimate::match_to_json(*e.best_below_threshold()).dump() << '\n';
    }
    return kExitDomainError;
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string protocol;
  std::size_t x = 55;
  int r = 20;
  std::size_t folds = 10;
  std::string out;
  std::optional<std::string> raw, significance;
  int epochs = 10;
  int vec_size = 50;
  std::size_t neighbours = 2;
};

int run_evaluate(const EvaluateArgs& a, const Overrides& o, std::ostream& out, std::ostream& err) {
  const auto cfg = o.resolve();
  const auto c = corpus::load(cfg.store_path);
  const auto data = eval::Dataset::from_corpus(c);
  eval::DevSdeeEstimator::Options dev;
  dev.scenario = {a.epochs, a.vec_size, 0, cfg.seed};
  dev.k = a.neighbours;
  dev.alpha = cfg.alpha_hat_override;
  const auto estimators = eval::default_estimators(dev);

  const auto report = a.protocol == "random" ? eval::randomized_trials(data, estimators, a.x, a.r, cfg.seed)
                                             : eval::kfold(data, estimators, a.folds, cfg.seed);
  {
    auto csv = open_output(a.out);
    eval::write_report_csv(csv, report);
  }
  if (a.raw) {
    auto raw = open_output(*a.raw);
    eval::write_raw_jsonl(raw, report);
  }
  for (const auto& s : report.raw) {
    if (s.error) err << "warning: " << s.estimator << " failed on split " << s.split << ": " << *s.error << '\n';
  }
  eval::write_report_table(out, report);
  if (a.significance) {
    auto sig = open_output(*a.significance);
    eval::write_significance_table(sig, eval::significance_suite(report, cfg.seed));
  }
  return kExitOk;
}

int run_serve(const Overrides& o, std::ostream& err) {
  serve(o.resolve(), err);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Software development effort estimation from project descriptions", "sdee"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Overrides o;
  app.add_option("--config", o.config, "JSON configuration file")->type_name("PATH");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a corpus store from repository metadata and commit logs");
  ingest_cmd->add_option("--repos", ingest.repos, "Repository metadata (JSON Lines)")->required();
  ingest_cmd->add_option("--logs", ingest.logs, "Directory of <owner>__<repo>.log commit logs")->required();
  ingest_cmd->add_option("--out", ingest.out, "Store file to write")->type_name("PATH");
  ingest_cmd->add_option("--today", ingest.today, "Reference date YYYY-MM-DD for the activity filter");
  ingest_cmd->add_flag("--no-filter", ingest.no_filter, "Keep every candidate repository");

  std::optional<std::string> metrics_csv;
  auto* metrics_cmd = app.add_subcommand("metrics", "Per-repository effort metrics and correlations");
  add_store(metrics_cmd, o);
  metrics_cmd->add_option("--csv", metrics_csv, "Write the metrics table to this file")->type_name("PATH");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train the similarity model and embed the corpus");
  add_store(train_cmd, o);
  add_seed(train_cmd, o);
  train_cmd->add_option("--epochs", train.epochs, "Training epochs")->capture_default_str();
  train_cmd->add_option("--vec-size", train.vec_size, "Vector dimension")->capture_default_str();
  train_cmd->add_option("--samples", train.samples, "Training descriptions (0: all)")->capture_default_str();
  train_cmd->add_flag("--grid", train.grid, "Run the scenario grid and keep the best model");
  train_cmd->add_option("--model-out", train.model_out, "Model file to write")->type_name("PATH");
  train_cmd->add_option("--grid-csv", train.grid_csv, "Grid results file (with --grid)")->type_name("PATH");

  std::size_t pairs = 0;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Calibrate the similarity threshold");
  add_store(calibrate_cmd, o);
  add_model(calibrate_cmd, o);
  add_seed(calibrate_cmd, o);
  calibrate_cmd->add_option("--pairs", pairs, "Test pairs (0: two per test description)");

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate effort for a new project description");
  estimate_cmd->add_option("--desc-file", est.desc_file, "Description text, or a JSON request with --json")
      ->required();
  estimate_cmd->add_option("--k", o.k, "Number of analogues (default 2)");
  estimate_cmd->add_flag("--json", est.json_body, "Read --desc-file as a JSON estimate request");
  estimate_cmd->add_option("--title", est.title, "Project title (plain-text input)");
  estimate_cmd->add_option("--category", est.category, "Abstract category (plain-text input)")
      ->capture_default_str();
  add_store(estimate_cmd, o);
  add_model(estimate_cmd, o);
  add_alpha(estimate_cmd, o);
  add_taxonomy(estimate_cmd, o);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare DevSDEE with the baselines");
  evaluate_cmd->add_option("--protocol", ev.protocol, "Evaluation protocol")
      ->required()
      ->check(CLI::IsMember({"random", "kfold"}));
  evaluate_cmd->add_option("--x", ev.x, "Training size per random trial")->capture_default_str();
  evaluate_cmd->add_option("--r", ev.r, "Number of random trials")->capture_default_str();
  evaluate_cmd->add_option("--k", ev.folds, "Number of folds")->capture_default_str();
  evaluate_cmd->add_option("--out", ev.out, "Metric report CSV")->required();
  evaluate_cmd->add_option("--raw", ev.raw, "Per-split predictions (JSON Lines)");
  evaluate_cmd->add_option("--significance", ev.significance, "Effect-size and significance table");
  evaluate_cmd->add_option("--epochs", ev.epochs, "DevSDEE training epochs")->capture_default_str();
  evaluate_cmd->add_option("--vec-size", ev.vec_size, "DevSDEE vector dimension")->capture_default_str();
  evaluate_cmd->add_option("--neighbours", ev.neighbours, "DevSDEE analogues")->capture_default_str();
  add_store(evaluate_cmd, o);
  add_seed(evaluate_cmd, o);
  add_alpha(evaluate_cmd, o);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--bind", o.bind, "Listen address host:port");
  serve_cmd->add_option("--k", o.k, "Default number of analogues");
  add_store(serve_cmd, o);
  add_model(serve_cmd, o);
  add_alpha(serve_cmd, o);
  add_taxonomy(serve_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest, o, out, err);
    if (*metrics_cmd) return run_metrics(metrics_csv, o, out, err);
    if (*train_cmd) return run_train(train, o, out, err);
    if (*calibrate_cmd) return run_calibrate(pairs, o, out);
    if (*estimate_cmd) return run_estimate(est, o, out, err);
    if (*evaluate_cmd) return run_evaluate(ev, o, out, err);
    if (*serve_cmd) return run_serve(o, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace sdee::app
