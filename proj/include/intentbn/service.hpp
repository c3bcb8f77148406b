// Copyright 2026 The intentbn Authors
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

/**
 * @file service.hpp
 * @brief JSON/REST facade used by the scenario designer.
 *
 * Routes:
 *   GET  /config    current document (YAML)
 *   PUT  /config    replace the scenario; 200 on success, 422 with the
 *                   violation report otherwise, 400 for unreadable YAML
 *   POST /validate  dry-run of PUT
 *   POST /infer     evidence JSON -> inference result JSON
 *   GET  /graph     nodes and edges of the loaded scenario
 *   GET  /health
 *
 * Handlers are plain member functions returning a Response so they can be
 * exercised without a socket; bind() wires them to an httplib::Server.
 *
 * Every request reads one immutable Snapshot. PUT builds the replacement
 * off to the side and swaps the pointer, so readers see either the old or
 * the new scenario in full.
 */

#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "intentbn/config_io.hpp"
#include "intentbn/evidence.hpp"
#include "intentbn/graph.hpp"
#include "intentbn/inference.hpp"
#include "intentbn/network.hpp"

namespace intentbn {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Everything a request needs, built once per accepted config.
struct Snapshot {
  explicit Snapshot(ScenarioConfig config)
      : network(compile(std::move(config))),
        document(serialize_config(network.config())),
        graph(to_json(graph_view(network.config()))) {}

  CompiledNetwork network;
  std::string document;
  nlohmann::json graph;
};

class ScenarioService {
 public:
  ScenarioService() = default;

  /// Throws ConfigError when `initial` is invalid.
  explicit ScenarioService(ScenarioConfig initial)
      : snapshot_(std::make_shared<const Snapshot>(std::move(initial))) {}

  /// After every successful PUT, also write the document to `path`.
  void enable_write_back(std::string path) { write_back_ = std::move(path); }

  std::shared_ptr<const Snapshot> snapshot() const {
    std::shared_lock lock(snapshot_mutex_);
    return snapshot_;
  }

  Response get_config() const {
    auto snap = snapshot();
    if (!snap) return no_config();
    return {200, "application/yaml", snap->document};
  }

  Response put_config(std::string_view document) {
    std::lock_guard writer(writer_mutex_);
    ScenarioConfig config;
    if (auto failure = parse_for_report(document, config)) return *failure;
    std::shared_ptr<const Snapshot> next;
    try {
      next = std::make_shared<const Snapshot>(std::move(config));
    } catch (const ConfigError& ex) {
      return {422, "application/json", report_json(ex.violations()).dump()};
    }
    if (write_back_) {
      std::ofstream out(*write_back_, std::ios::binary | std::ios::trunc);
      if (!out || !(out << next->document))
        return error(500, "WRITE_BACK_FAILED", "cannot write '" + *write_back_ + "'");
    }
    {
      std::unique_lock lock(snapshot_mutex_);
      snapshot_ = std::move(next);
    }
    return {200, "application/json", report_json({}).dump()};
  }

  Response validate(std::string_view document) const {
    ScenarioConfig config;
    if (auto failure = parse_for_report(document, config)) return *failure;
    return {200, "application/json", report_json(validate_config(config)).dump()};
  }

  Response infer(std::string_view evidence_json) const {
    auto snap = snapshot();
    if (!snap) return no_config();
    try {
      const Evidence evidence = parse_evidence(evidence_json);
      return {200, "application/json", to_json(intentbn::infer(snap->network, evidence)).dump()};
    } catch (const Error& ex) {
      return error(400, ex.code(), ex.what(), ex.path());
    }
  }

  Response graph() const {
    auto snap = snapshot();
    if (!snap) return no_config();
    return {200, "application/json", snap->graph.dump()};
  }

  Response health() const {
    nlohmann::json body = {{"status", "ok"}, {"config_loaded", snapshot() != nullptr}};
    return {200, "application/json", body.dump()};
  }

  static nlohmann::json report_json(const std::vector<Violation>& violations) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : violations)
      list.push_back({{"code", v.code}, {"message", v.message}, {"path", v.path}});
    return {{"valid", violations.empty()}, {"violations", list}};
  }

  void bind(httplib::Server& server) {
    auto reply = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body, r.content_type.c_str());
    };
    server.Get("/config", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, get_config());
    });
    server.Put("/config", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, put_config(req.body));
    });
    server.Post("/validate", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, validate(req.body));
    });
    server.Post("/infer", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, infer(req.body));
    });
    server.Get("/graph", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, graph());
    });
    server.Get("/health", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, health());
    });
    server.set_exception_handler(
        [reply](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string message = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& ex) {
            message = ex.what();
          } catch (...) {
          }
          reply(res, error(500, "INTERNAL", message));
        });
  }

 private:
  static Response error(int status, std::string_view code, std::string_view message,
                        std::string_view path = {}) {
    nlohmann::json body = {{"code", code}, {"message", message}};
    if (!path.empty()) body["path"] = path;
    return {status, "application/json", body.dump()};
  }

  static Response no_config() { return error(404, "NO_CONFIG", "no configuration is loaded"); }

  static std::optional<Response> parse_for_report(std::string_view document,
                                                  ScenarioConfig& out) {
    try {
      out = parse_config_unchecked(document);
      return std::nullopt;
    } catch (const ConfigError& ex) {
      nlohmann::json body = {{"code", ex.code()}, {"message", ex.what()}};
      if (!ex.path().empty()) body["path"] = ex.path();
      if (ex.line() > 0) {
        body["line"] = ex.line();
        body["column"] = ex.column();
      }
      return Response{400, "application/json", body.dump()};
    }
  }

  mutable std::shared_mutex snapshot_mutex_;  // guards the pointer, not the snapshot
  std::mutex writer_mutex_;                   // one PUT at a time
  std::shared_ptr<const Snapshot> snapshot_;
  std::optional<std::string> write_back_;
};

}  // namespace intentbn
