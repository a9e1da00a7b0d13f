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
#include <istream>
#include <ostream>

#include "sdee/embed/model.hpp"

namespace sdee::embed {

inline constexpr std::uint16_t kModelFormatVersion = 1;

/// Binary model file, all integers little-endian:
///
///   "PVAM" | version u16 | dim u32 | |vocab| u32 | samples u32 | seed u64
///   |vocab| x (length u32, UTF-8 bytes, frequency u64)
///   word vectors  |vocab| x dim float32, row-major
///   doc vectors   samples x dim float32, row-major
///   epochs u32 | samples x (length u32, UTF-8 doc id)
void save_model(const SimilarityModel& model, std::ostream& out);
void save_model(const SimilarityModel& model, const std::filesystem::path& path);

/// Throws LoadError on a bad magic, unsupported version or truncated file.
SimilarityModel load_model(std::istream& in);
SimilarityModel load_model(const std::filesystem::path& path);

}  // namespace sdee::embed
