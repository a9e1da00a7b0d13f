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

#include "sdee/corpus/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "sdee/common/error.hpp"

namespace sdee::corpus {

bool is_abstract_group(std::string_view name) {
  return std::find(kAbstractGroups.begin(), kAbstractGroups.end(), name) != kAbstractGroups.end();
}

CategoryTaxonomy::CategoryTaxonomy(std::vector<Category> categories) : categories_(std::move(categories)) {
  std::set<std::string> seen;
  for (const auto& c : categories_) {
    if (!seen.insert(c.id).second) throw InputError("duplicate category id '" + c.id + "'");
    if (!is_abstract_group(c.abstract_group)) {
      throw InputError("category '" + c.id + "' maps to unknown abstract group '" + c.abstract_group + "'");
    }
  }
}

CategoryTaxonomy CategoryTaxonomy::from_json(const nlohmann::json& j) {
  if (j.contains("abstract_groups")) {
    const auto& groups = j.at("abstract_groups");
    if (!groups.is_array() || groups.size() != kAbstractGroups.size()) {
      throw InputError("taxonomy must list exactly 11 abstract groups");
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (groups[i].get<std::string>() != kAbstractGroups[i]) {
        throw InputError("unexpected abstract group '" + groups[i].get<std::string>() + "'");
      }
    }
  }
  std::vector<Category> cats;
  for (const auto& c : j.at("categories")) {
    cats.push_back({c.at("id").get<std::string>(), c.value("name", c.at("id").get<std::string>()),
                    c.at("abstract_group").get<std::string>()});
  }
  return CategoryTaxonomy(std::move(cats));
}

CategoryTaxonomy CategoryTaxonomy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open taxonomy " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("taxonomy " + path.string() + ": " + e.what());
  }
}

const Category* CategoryTaxonomy::find(std::string_view id) const {
  for (const auto& c : categories_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<const Category*> CategoryTaxonomy::in_group(std::string_view group) const {
  std::vector<const Category*> out;
  for (const auto& c : categories_) {
    if (c.abstract_group == group) out.push_back(&c);
  }
  return out;
}

nlohmann::json CategoryTaxonomy::to_api_json() const {
  nlohmann::json abstract = nlohmann::json::array();
  nlohmann::json by_group = nlohmann::json::object();
  for (const auto g : kAbstractGroups) {
    abstract.push_back(std::string(g));
    nlohmann::json entries = nlohmann::json::array();
    for (const auto* c : in_group(g)) entries.push_back({{"id", c->id}, {"name", c->name}});
    by_group[std::string(g)] = std::move(entries);
  }
  return {{"abstract", abstract}, {"by_group", by_group}};
}

}  // namespace sdee::corpus
