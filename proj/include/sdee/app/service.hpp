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

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>

#include "sdee/app/config.hpp"
#include "sdee/corpus/taxonomy.hpp"
#include "sdee/estimate/estimator.hpp"

namespace sdee::app {

/// An immutable store + model pairing. Requests hold a shared_ptr to the
/// snapshot they started with, so a reload never changes a request mid-flight.
struct Snapshot {
  std::shared_ptr<const estimate::Estimator> estimator;
  std::size_t store_records = 0;  // repositories with an effort record
};

/// Loads the store and model named by `config`; any failure propagates with
/// its cause. The store file is opened read-only.
std::shared_ptr<const Snapshot> load_snapshot(const AppConfig& config);

struct Response {
  int status = 200;
  std::string body;  // serialized JSON
};

/// The HTTP API as plain functions over request bodies, independent of the
/// transport. Handlers are safe to call concurrently.
class Service {
 public:
  Service(std::shared_ptr<const Snapshot> snapshot, corpus::CategoryTaxonomy taxonomy, std::size_t default_k);

  /// POST /api/v1/estimate
  Response estimate(const std::string& body) const;
  /// GET /api/v1/categories
  Response categories() const;
  /// GET /healthz
  Response healthz() const;

  /// Atomically replaces the store/model snapshot.
  void reload(std::shared_ptr<const Snapshot> snapshot);
  std::shared_ptr<const Snapshot> snapshot() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  corpus::CategoryTaxonomy taxonomy_;
  std::string categories_body_;
  std::size_t default_k_;
};

/// Routes the Service onto an HTTP listener.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the bound
  /// port. Throws Error when the address cannot be bound.
  int bind(const BindAddress& address);
  /// Serves until stop() is called. Requires a successful bind().
  void listen();
  /// Stops accepting connections; in-flight requests complete before listen()
  /// returns. Safe to call from any thread.
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs the service until SIGINT or SIGTERM. SIGHUP reloads the store and
/// model from disk. Startup failures throw before anything is served.
void serve(const AppConfig& config, std::ostream& log);

}  // namespace sdee::app
