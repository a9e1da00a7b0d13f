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

#include "sdee/eval/error_metrics.hpp"

#include "sdee/common/random.hpp"

namespace sdee::eval {

double random_guess_mar(std::span<const double> targets, int trials, std::uint64_t seed) {
  if (targets.size() < 2) throw InputError("random guessing needs at least two targets");
  if (trials < 1) throw InputError("random guessing needs at least one trial");
  Rng rng(seed);
  const std::size_t n = targets.size();
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // uniform over the n - 1 other items
      std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
      if (j >= i) ++j;
      sum += std::abs(targets[j] - targets[i]);
    }
    total += sum / static_cast<double>(n);
  }
  return total / static_cast<double>(trials);
}

double random_guess_mar(std::span<const double> train_targets, std::span<const double> test_targets, int trials,
                        std::uint64_t seed) {
  if (train_targets.empty() || test_targets.empty()) throw InputError("random guessing needs train and test items");
  if (trials < 1) throw InputError("random guessing needs at least one trial");
  Rng rng(seed);
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (const double actual : test_targets) {
      sum += std::abs(train_targets[static_cast<std::size_t>(rng.below(train_targets.size()))] - actual);
    }
    total += sum / static_cast<double>(test_targets.size());
  }
  return total / static_cast<double>(trials);
}

}  // namespace sdee::eval
