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

#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "intentbn/config_io.hpp"
#include "intentbn/counts.hpp"
#include "intentbn/evidence.hpp"
#include "intentbn/inference.hpp"
#include "intentbn/network.hpp"
#include "intentbn/service.hpp"

namespace intentbn::cli {

/// Process exit codes; stable across releases.
enum class ExitStatus : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

namespace detail {

inline void print_violation(std::ostream& os, const Violation& v) {
  os << v.code << ' ' << v.path << ' ' << v.message << '\n';
}

inline void print_config_error(std::ostream& os, const ConfigError& ex) {
  switch (ex.kind()) {
    case ConfigError::Kind::kSemantic:
      for (const auto& v : ex.violations()) print_violation(os, v);
      break;
    case ConfigError::Kind::kSyntax:
      os << ex.code() << ' ' << ex.line() << ':' << ex.column() << ' ' << ex.what() << '\n';
      break;
    default:
      os << ex.code() << ' ' << (ex.path().empty() ? "-" : ex.path()) << ' ' << ex.what() << '\n';
      break;
  }
}

// Loads a config for commands that need a valid one. Prints diagnostics
// to `err` and sets `status` on failure.
inline std::optional<CompiledNetwork> load_network(const std::string& path, std::ostream& err,
                                                   ExitStatus& status) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    status = ExitStatus::kUsage;
    return std::nullopt;
  }
  try {
    return compile(parse_config(text));
  } catch (const ConfigError& ex) {
    err << "error: invalid configuration '" << path << "'\n";
    print_config_error(err, ex);
    status = ExitStatus::kFailure;
    return std::nullopt;
  }
}

inline nlohmann::json error_json(const Error& ex) {
  nlohmann::json e = {{"code", ex.code()}, {"message", ex.what()}};
  if (!ex.path().empty()) e["path"] = ex.path();
  return {{"error", e}};
}

}  // namespace detail

/// Prints one `CODE path message` line per violation; exit 0 iff none.
inline ExitStatus cmd_validate(const std::string& config_path, std::ostream& out,
                               std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(config_path);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return ExitStatus::kUsage;
  }
  try {
    const auto violations = validate_config(parse_config_unchecked(text));
    for (const auto& v : violations) detail::print_violation(out, v);
    return violations.empty() ? ExitStatus::kSuccess : ExitStatus::kFailure;
  } catch (const ConfigError& ex) {
    detail::print_config_error(out, ex);
    return ExitStatus::kFailure;
  }
}

/// One-shot inference; evidence comes from `evidence_path` or, if absent, `in`.
inline ExitStatus cmd_infer(const std::string& config_path,
                            const std::optional<std::string>& evidence_path, std::istream& in,
                            std::ostream& out, std::ostream& err) {
  ExitStatus status = ExitStatus::kSuccess;
  auto net = detail::load_network(config_path, err, status);
  if (!net) return status;

  std::string text;
  if (evidence_path) {
    try {
      text = read_text_file(*evidence_path);
    } catch (const ConfigError& ex) {
      err << "error: " << ex.what() << '\n';
      return ExitStatus::kUsage;
    }
  } else {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  try {
    const auto result = infer(*net, parse_evidence(text));
    out << to_json(result).dump(2) << '\n';
    return ExitStatus::kSuccess;
  } catch (const Error& ex) {
    err << "error: " << ex.code() << ": " << ex.what() << '\n';
    return ExitStatus::kFailure;
  }
}

/// JSON-lines loop: one result (or error object) per input line, threading
/// the decision from each line into the next.
inline ExitStatus cmd_stream(const std::string& config_path, std::istream& in, std::ostream& out,
                             std::ostream& err) {
  ExitStatus status = ExitStatus::kSuccess;
  auto net = detail::load_network(config_path, err, status);
  if (!net) return status;

  StepState state;
  std::string line;
  while (std::getline(in, line)) {
    try {
      auto outcome = step(*net, state, parse_evidence(line));
      state = std::move(outcome.state);
      out << to_json(outcome.result).dump() << '\n';
    } catch (const Error& ex) {
      out << detail::error_json(ex).dump() << '\n';
    }
    out.flush();
  }
  return ExitStatus::kSuccess;
}

inline ExitStatus cmd_counts(const std::string& config_path, std::ostream& out,
                             std::ostream& err) {
  ExitStatus status = ExitStatus::kSuccess;
  auto net = detail::load_network(config_path, err, status);
  if (!net) return status;
  try {
    const auto counts = count_required_values(shape_of(net->config()));
    out << "exponential=" << counts.exponential << " linear=" << counts.linear
        << " reduction=" << intentbn::detail::readable(counts.reduction_factor()) << '\n';
    return ExitStatus::kSuccess;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return ExitStatus::kFailure;
  }
}

/// Blocks serving the REST API until the process is stopped.
inline ExitStatus cmd_serve(const std::string& config_path, const std::string& host, int port,
                            bool write_back, std::ostream& err) {
  ExitStatus status = ExitStatus::kSuccess;
  auto net = detail::load_network(config_path, err, status);
  if (!net) return status;

  ScenarioService service(net->config());
  if (write_back) service.enable_write_back(config_path);
  httplib::Server server;
  service.bind(server);
  err << "serving '" << config_path << "' on http://" << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    err << "error: cannot listen on " << host << ':' << port << '\n';
    return ExitStatus::kFailure;
  }
  return ExitStatus::kSuccess;
}

/// Argument parsing and dispatch for the `intentbn` executable.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Context-based intention recognition with two-layer Bayesian networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> evidence_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool write_back = false;

  auto* validate = app.add_subcommand("validate", "Check a scenario configuration");
  validate->add_option("config", config_path, "Scenario YAML")->required();

  auto* infer_cmd = app.add_subcommand("infer", "Infer intentions from one evidence document");
  infer_cmd->add_option("config", config_path, "Scenario YAML")->required();
  infer_cmd->add_option("--evidence", evidence_path, "Evidence JSON (default: stdin)");

  auto* stream = app.add_subcommand("stream", "Infer from JSON lines on stdin");
  stream->add_option("config", config_path, "Scenario YAML")->required();

  auto* counts = app.add_subcommand("counts", "Number of values to set, full CPTs vs. influences");
  counts->add_option("config", config_path, "Scenario YAML")->required();

  auto* serve = app.add_subcommand("serve", "Run the REST service");
  serve->add_option("config", config_path, "Scenario YAML")->required();
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_flag("--write-back", write_back, "Write accepted PUT /config documents to the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return static_cast<int>(ExitStatus::kSuccess);
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return static_cast<int>(ExitStatus::kSuccess);
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n' << app.help();
    return static_cast<int>(ExitStatus::kUsage);
  }

  ExitStatus status = ExitStatus::kUsage;
  if (*validate)
    status = cmd_validate(config_path, out, err);
  else if (*infer_cmd)
    status = cmd_infer(config_path, evidence_path, in, out, err);
  else if (*stream)
    status = cmd_stream(config_path, in, out, err);
  else if (*counts)
    status = cmd_counts(config_path, out, err);
  else if (*serve)
    status = cmd_serve(config_path, host, port, write_back, err);
  return static_cast<int>(status);
}

}  // namespace intentbn::cli
