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
#include <string>

#include "json.hpp"

namespace sdee::app {

/// Runtime settings shared by the CLI subcommands and the HTTP service.
/// Command-line flags override values read from a JSON config file, which
/// override these defaults.
struct AppConfig {
  std::filesystem::path store_path = "sdee.db";
  std::filesystem::path model_path;  // empty: the model recorded in the store
  std::size_t k = 2;
  std::optional<double> alpha_hat_override;
  std::string bind_address = "127.0.0.1:8080";
  std::uint64_t seed = 1;
  std::string api_token_env_var_name = "GITHUB_TOKEN";
  std::filesystem::path taxonomy_path;  // empty: no category catalogue

  /// Throws ValidationError on k < 1 or an unparseable bind address.
  void validate() const;

  /// The model file to load: model_path if set, else the path recorded in the
  /// store, else the store path with extension ".pvam".
  std::filesystem::path resolve_model_path(const std::string& recorded) const;
};

/// Overlays the keys present in `j` onto `base`. Unknown keys and wrongly typed
/// values raise ValidationError naming the key.
AppConfig config_from_json(const nlohmann::json& j, AppConfig base = {});
AppConfig load_config(const std::filesystem::path& path, AppConfig base = {});

struct BindAddress {
  std::string host;
  int port = 0;
};

/// "host:port", ":port" (all interfaces) or "port" (loopback).
BindAddress parse_bind_address(const std::string& text);

}  // namespace sdee::app
