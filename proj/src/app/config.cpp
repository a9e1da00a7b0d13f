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

#include "sdee/app/config.hpp"

#include <charconv>
#include <fstream>

#include "sdee/common/error.hpp"

namespace sdee::app {

namespace {

template <typename T>
T typed(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(key, "has the wrong type");
  }
}

}  // namespace

void AppConfig::validate() const {
  if (k < 1) throw ValidationError("k", "must be at least 1");
  parse_bind_address(bind_address);
}

std::filesystem::path AppConfig::resolve_model_path(const std::string& recorded) const {
  if (!model_path.empty()) return model_path;
  if (!recorded.empty()) return recorded;
  auto p = store_path;
  p.replace_extension(".pvam");
  return p;
}

AppConfig config_from_json(const nlohmann::json& j, AppConfig base) {
  if (!j.is_object()) throw ValidationError("config", "must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "store_path") {
      base.store_path = typed<std::string>(value, key);
    } else if (key == "model_path") {
      base.model_path = typed<std::string>(value, key);
    } else if (key == "k") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
        throw ValidationError(key, "must be a positive integer");
      }
      base.k = value.get<std::size_t>();
    } else if (key == "alpha_hat_override") {
      if (value.is_null()) {
        base.alpha_hat_override.reset();
      } else {
        base.alpha_hat_override = typed<double>(value, key);
      }
    } else if (key == "bind_address") {
      base.bind_address = typed<std::string>(value, key);
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) throw ValidationError(key, "must be a non-negative integer");
      base.seed = value.get<std::uint64_t>();
    } else if (key == "api_token_env_var_name") {
      base.api_token_env_var_name = typed<std::string>(value, key);
    } else if (key == "taxonomy_path") {
      base.taxonomy_path = typed<std::string>(value, key);
    } else {
      throw ValidationError(key, "unknown configuration key");
    }
  }
  base.validate();
  return base;
}

AppConfig load_config(const std::filesystem::path& path, AppConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("config not found: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

BindAddress parse_bind_address(const std::string& text) {
  const auto colon = text.rfind(':');
  BindAddress out;
  std::string port;
  if (colon == std::string::npos) {
    out.host = "127.0.0.1";
    port = text;
  } else {
    out.host = colon == 0 ? "0.0.0.0" : text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (port.empty() || ec != std::errc() || ptr != port.data() + port.size() || out.port < 0 || out.port > 65535) {
    throw ValidationError("bind_address", "expected host:port, got '" + text + "'");
  }
  return out;
}

}  // namespace sdee::app
