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

#include "sdee/app/service.hpp"

#include <pthread.h>
#include <signal.h>

#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sdee/common/error.hpp"
#include "sdee/corpus/store.hpp"
#include "sdee/embed/model_io.hpp"

namespace sdee::app {

namespace {

using nlohmann::json;

Response json_response(int status, const json& body) { return {status, body.dump()}; }

Response validation_error(const std::string& field, const std::string& message) {
  return json_response(422, {{"error", "validation"},
                             {"errors", json::array({{{"field", field}, {"message", message}}})}});
}

}  // namespace

std::shared_ptr<const Snapshot> load_snapshot(const AppConfig& config) {
  auto corpus = std::make_shared<corpus::Corpus>(corpus::load(config.store_path));
  const auto model_path = config.resolve_model_path(corpus->model_path);
  if (!std::filesystem::exists(model_path)) throw InputError("model not found: " + model_path.string());
  auto model = std::make_shared<embed::SimilarityModel>(embed::load_model(model_path));
  auto estimator = std::make_shared<estimate::Estimator>(std::move(corpus), std::move(model),
                                                         config.alpha_hat_override);
  auto snapshot = std::make_shared<Snapshot>();
  snapshot->store_records = estimator->index().size();
  snapshot->estimator = std::move(estimator);
  return snapshot;
}

Service::Service(std::shared_ptr<const Snapshot> snapshot, corpus::CategoryTaxonomy taxonomy, std::size_t default_k)
    : snapshot_(std::move(snapshot)),
      taxonomy_(std::move(taxonomy)),
      categories_body_(taxonomy_.to_api_json().dump()),
      default_k_(default_k) {
  if (!snapshot_ || !snapshot_->estimator) throw InputError("service needs a loaded store and model");
  if (default_k_ < 1) throw ValidationError("k", "must be at least 1");
}

void Service::reload(std::shared_ptr<const Snapshot> snapshot) {
  if (!snapshot || !snapshot->estimator) throw InputError("reload needs a loaded store and model");
  std::lock_guard lock(mutex_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
  std::lock_guard lock(mutex_);
  return snapshot_;
}

Response Service::estimate(const std::string& body) const {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    return json_response(400, {{"error", "invalid_json"}, {"message", e.what()}});
  }
  const auto snap = snapshot();
  try {
    std::optional<std::size_t> k;
    const auto request = estimate::request_from_json(j, &k);
    request.validate(taxonomy_.categories().empty() ? nullptr : &taxonomy_);
    const auto result = snap->estimator->estimate(request, k.value_or(default_k_));
    return json_response(200, estimate::result_to_json(result));
  } catch (const ValidationError& e) {
    return validation_error(e.field(), e.message());
  } catch (const estimate::EstimationError& e) {
    return validation_error("description", e.what());
  } catch (const estimate::NoSimilarSoftware& e) {
    const auto& best = e.best_below_threshold();
    return json_response(404, {{"error", "no_similar_software"},
                               {"message", e.what()},
                               {"alpha_hat", snap->estimator->alpha_hat()},
                               {"best_below_threshold", best ? estimate::match_to_json(*best) : json(nullptr)}});
  } catch (const Error& e) {
    return json_response(500, {{"error", "internal"}, {"message", e.what()}});
  }
}

Response Service::categories() const { return {200, categories_body_}; }

Response Service::healthz() const {
  const auto snap = snapshot();
  return json_response(200, {{"status", "ok"},
                             {"model_id", snap->estimator->model_id()},
                             {"store_records", snap->store_records}});
}

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;
  bool bound = false;

  explicit Impl(const Service& s) : service(s) {
    auto send = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body, "application/json; charset=utf-8");
    };
    server.Post("/api/v1/estimate", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service.estimate(req.body));
    });
    server.Get("/api/v1/categories",
               [this, send](const httplib::Request&, httplib::Response& res) { send(res, service.categories()); });
    server.Get("/healthz",
               [this, send](const httplib::Request&, httplib::Response& res) { send(res, service.healthz()); });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        res.set_content(json({{"error", httplib::status_message(res.status)}}).dump(),
                        "application/json; charset=utf-8");
      }
    });
  }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const BindAddress& address) {
  int port = address.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(address.host);
  } else if (!impl_->server.bind_to_port(address.host, port)) {
    port = -1;
  }
  if (port < 0) throw Error("cannot bind " + address.host + ":" + std::to_string(address.port));
  impl_->bound = true;
  return port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw Error("listen() called before bind()");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() { impl_->server.stop(); }
bool HttpServer::running() const { return impl_->server.is_running(); }

void serve(const AppConfig& config, std::ostream& log) {
  config.validate();
  const auto address = parse_bind_address(config.bind_address);
  corpus::CategoryTaxonomy taxonomy;
  if (!config.taxonomy_path.empty()) taxonomy = corpus::CategoryTaxonomy::load(config.taxonomy_path);
  Service service(load_snapshot(config), std::move(taxonomy), config.k);

  // Signals are taken synchronously by one thread; worker threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  for (int s : {SIGINT, SIGTERM, SIGHUP, SIGUSR1}) sigaddset(&signals, s);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  HttpServer server(service);
  int port = 0;
  try {
    port = server.bind(address);
  } catch (...) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw;
  }
  log << "serving model " << service.snapshot()->estimator->model_id() << " on " << address.host << ":" << port
      << std::endl;

  std::thread watcher([&] {
    for (;;) {
      int sig = 0;
      if (sigwait(&signals, &sig) != 0) continue;
      if (sig == SIGHUP) {
        try {
          service.reload(load_snapshot(config));
          log << "reloaded store and model" << std::endl;
        } catch (const std::exception& e) {
          log << "reload failed, keeping the current snapshot: " << e.what() << std::endl;
        }
        continue;
      }
      if (sig != SIGUSR1) log << "shutting down" << std::endl;
      server.stop();
      return;
    }
  });
  server.listen();
  pthread_kill(watcher.native_handle(), SIGUSR1);
  watcher.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
}

}  // namespace sdee::app
