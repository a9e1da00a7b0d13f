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

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sdee::corpus {

inline constexpr std::array<std::string_view, 11> kAbstractGroups = {
    "Software library",        "Software utilities & plugin", "Software tool",
    "Software metrics",        "Software driving engine",     "A software framework",
    "Software middleware",     "Software client",             "Software server",
    "Software driver",         "Software file system",
};

bool is_abstract_group(std::string_view name);

struct Category {
  std::string id;
  std::string name;
  std::string abstract_group;
  bool operator==(const Category&) const = default;
};

/// Repository categories, each mapped onto exactly one of the eleven
/// abstract groups.
class CategoryTaxonomy {
 public:
  CategoryTaxonomy() = default;
  explicit CategoryTaxonomy(std::vector<Category> categories);

  /// {"abstract_groups": [...11...], "categories": [{"id","name","abstract_group"}]}
  static CategoryTaxonomy from_json(const nlohmann::json& j);
  static CategoryTaxonomy load(const std::filesystem::path& path);

  const std::vector<Category>& categories() const { return categories_; }
  const Category* find(std::string_view id) const;
  std::vector<const Category*> in_group(std::string_view group) const;

  /// {"abstract":[...], "by_group":{group:[{"id","name"}]}}
  nlohmann::json to_api_json() const;

 private:
  std::vector<Category> categories_;
};

}  // namespace sdee::corpus
