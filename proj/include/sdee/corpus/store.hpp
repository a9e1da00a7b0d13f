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
#include <string>

#include "sdee/corpus/types.hpp"

namespace sdee::corpus {

inline constexpr int kStoreSchemaVersion = 1;

/// Writes the corpus to a single-file SQLite store, replacing any existing
/// file atomically (write to a sibling temp file, then rename). Tables:
/// release_info, commit_stats, release_effort_estimate, soft_desc_pva_vec,
/// plus repo_info and store_meta for the repository metadata and the
/// reference vector.
void persist(const Corpus& corpus, const std::filesystem::path& path);

/// Opens the store read-only. Throws InputError if the file does not exist,
/// SchemaError on a missing table or column or a version mismatch, and
/// LoadError naming table and row for a row that cannot be decoded.
Corpus load(const std::filesystem::path& path);

/// Canonical text dump of one table in row order (reals as %.17g, blobs as
/// hex). Two stores with equal dumps hold the same logical content.
std::string dump_table(const std::filesystem::path& path, const std::string& table);

/// Little-endian float32 encoding used for the vector column.
std::string encode_vector(const std::vector<float>& v);
std::vector<float> decode_vector(const void* data, std::size_t bytes);

}  // namespace sdee::corpus
