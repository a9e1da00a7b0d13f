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

#include "sdee/corpus/clean.hpp"

namespace sdee::corpus {

std::vector<metrics::EffortRecord> clean_dataset(std::span<const metrics::EffortRecord> records) {
  std::vector<metrics::EffortRecord> out;
  for (const auto& r : records) {
    if (r.dev_count >= 1 && r.dev_time_months >= 1.0) out.push_back(r);
  }
  return out;
}

}  // namespace sdee::corpus
