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

#include "sdee/embed/grid.hpp"

#include <iomanip>

#include "sdee/common/error.hpp"
#include "sdee/embed/model_io.hpp"
#include "sdee/embed/pvdbow.hpp"

namespace sdee::embed {

std::vector<GridScenario> grid_scenarios(std::size_t corpus_size, std::uint64_t seed) {
  if (corpus_size == 0) throw InputError("grid search needs a non-empty training corpus");
  const int n = static_cast<int>(corpus_size);
  std::vector<GridScenario> out;
  auto add = [&](ScenarioFamily family, int epochs, int vector_size, int samples) {
    GridScenario g;
    g.scenario_id = static_cast<int>(out.size()) + 1;
    g.family = family;
    g.scenario = {epochs, vector_size, samples, seed};
    out.push_back(g);
  };
  if (n < 30) {
    add(ScenarioFamily::samples, 10, 10, n);
  } else {
    for (int s = 30; s <= n; s += 30) add(ScenarioFamily::samples, 10, 10, s);
  }
  for (int e = 5; e <= 50; e += 5) add(ScenarioFamily::epochs, e, 10, n);
  for (int v = 5; v <= 50; v += 5) add(ScenarioFamily::vector_size, 10, v, n);
  return out;
}

GridResult grid_search(std::span<const Document> descriptions, const GridOptions& options) {
  auto split = build_testbed(descriptions, options.split_seed, options.n_pairs);
  GridResult result;
  result.testbed = std::move(split.testbed);
  if (options.model_dir) std::filesystem::create_directories(*options.model_dir);

  bool have_best = false;
  for (const auto& cell : grid_scenarios(split.train.size(), options.seed)) {
    GridRow row;
    row.cell = cell;
    SimilarityModel model;
    try {
      model = train(split.train, cell.scenario);
      if (options.model_dir) {
        row.model_path = *options.model_dir / (model.id() + ".pvam");
        save_model(model, *row.model_path);
      }
      const auto scored = score_pairs(model, result.testbed);
      row.calibration = calibrate(scored);
      row.metrics = classification_metrics(scored.scores, scored.same, row.calibration.alpha_hat);
      row.metrics.skipped_pairs = scored.skipped;
    } catch (const Error& e) {
      row.error = e.what();
      result.rows.push_back(std::move(row));
      continue;
    }
    if (!have_best || row.metrics.combined > result.rows[result.best].metrics.combined) {
      result.best = result.rows.size();
      result.best_model = std::move(model);
      have_best = true;
    }
    result.rows.push_back(std::move(row));
  }
  if (!have_best) throw TrainingError("every grid scenario failed to train");
  return result;
}

void write_grid_csv(std::ostream& out, std::span<const GridRow> rows) {
  out << "scenario_id,epochs,vector_size,samples,accuracy,precision,recall,f1,roc_auc,combined\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    const auto& s = r.cell.scenario;
    const auto& m = r.metrics;
    out << r.cell.scenario_id << ',' << s.epochs << ',' << s.vector_size << ',' << s.training_samples << ',';
    if (r.error) {
      out << ",,,,,\n";
      continue;
    }
    out << m.accuracy << ',' << m.precision << ',' << m.recall << ',' << m.f1 << ',' << m.roc_auc << ','
        << m.combined << '\n';
  }
}

}  // namespace sdee::embed
