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
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sdee/embed/model.hpp"
#include "sdee/embed/testbed.hpp"

namespace sdee::embed {

enum class ScenarioFamily { samples, epochs, vector_size };

struct GridScenario {
  int scenario_id = 0;
  ScenarioFamily family = ScenarioFamily::samples;
  TrainingScenario scenario;
};

/// The three training families over a corpus of `corpus_size` documents:
///   samples      epochs 10, vector size 10, samples 30, 60, ... <= corpus
///                size (just the corpus size when it is below 30)
///   epochs       epochs 5..50 step 5, vector size 10, all samples
///   vector_size  epochs 10, vector size 5..50 step 5, all samples
std::vector<GridScenario> grid_scenarios(std::size_t corpus_size, std::uint64_t seed);

struct GridOptions {
  std::uint64_t seed = 1;        // training seed shared by every scenario
  std::uint64_t split_seed = 1;  // train/test split and pair sampling
  std::size_t n_pairs = 0;       // 0: two pairs per test description
  /// When set, every trained model is written here as <model id>.pvam.
  std::optional<std::filesystem::path> model_dir;
};

struct GridRow {
  GridScenario cell;
  CalibrationResult calibration;
  ClassificationMetrics metrics;
  std::optional<std::filesystem::path> model_path;
  /// Set when training or scoring this cell failed; metrics are then zero.
  std::optional<std::string> error;
};

struct GridResult {
  std::vector<GridRow> rows;
  std::size_t best = 0;  // index into rows maximising `combined` (first wins; failed cells never win)
  SimilarityModel best_model;
  SimilarityTestBed testbed;
};

/// Trains every scenario on the training split, calibrates alpha-hat and
/// scores it on the one fixed test-bed, and keeps the model with the
/// highest combined score. A cell whose training fails is reported with
/// its error; TrainingError is thrown only when every cell fails.
GridResult grid_search(std::span<const Document> descriptions, const GridOptions& options);

/// scenario_id,epochs,vector_size,samples,accuracy,precision,recall,f1,roc_auc,combined
/// Failed cells leave the six metric fields empty.
void write_grid_csv(std::ostream& out, std::span<const GridRow> rows);

}  // namespace sdee::embed
