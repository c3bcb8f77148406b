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
 * @file config_io.hpp
 * @brief YAML reading and writing of scenario configurations.
 *
 * Document layout:
 *
 *     contexts:
 *       <context>:
 *         <instantiation>: <prior>
 *     intentions:
 *       <intention>:
 *         <context>:
 *           <instantiation>: <0..5>
 *     combined_influences:            # optional
 *       - intention: <intention>
 *         conditions: {<context>: <instantiation>, ...}
 *         value: <0..5>
 *     decision_threshold: <float>
 *
 * Document order of every mapping is preserved in the parsed value.
 */

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "intentbn/detail/numfmt.hpp"
#include "intentbn/error.hpp"
#include "intentbn/scenario.hpp"
#include "intentbn/validation.hpp"

namespace intentbn {

/// Why a configuration could not be turned into a usable ScenarioConfig.
class ConfigError : public Error {
 public:
  enum class Kind { kIo, kSyntax, kSchema, kSemantic };

  ConfigError(Kind kind, std::string code, std::string message, std::string path = {},
              int line = 0, int column = 0, std::vector<Violation> violations = {})
      : Error(std::move(code), std::move(message), std::move(path)),
        kind_(kind),
        line_(line),
        column_(column),
        violations_(std::move(violations)) {}

  Kind kind() const noexcept { return kind_; }
  /// 1-based; 0 when unknown.
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  /// Populated for kSemantic.
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::vector<Violation> violations_;
};

namespace detail {

inline constexpr std::string_view kKeyContexts = "contexts";
inline constexpr std::string_view kKeyIntentions = "intentions";
inline constexpr std::string_view kKeyCombined = "combined_influences";
inline constexpr std::string_view kKeyThreshold = "decision_threshold";

[[noreturn]] inline void schema_error(const YAML::Node& at, std::string message,
                                      std::string path) {
  const auto mark = at.Mark();
  const bool known = mark.line >= 0 && !mark.is_null();
  throw ConfigError(ConfigError::Kind::kSchema, "SCHEMA_ERROR", std::move(message),
                    std::move(path), known ? mark.line + 1 : 0, known ? mark.column + 1 : 0);
}

inline void require_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) schema_error(node, "'" + path + "' must be a mapping", path);
}

inline std::string key_string(const YAML::Node& key, const std::string& parent) {
  if (!key.IsScalar()) schema_error(key, "keys under '" + parent + "' must be scalars", parent);
  return key.Scalar();
}

inline double read_float(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) schema_error(node, "expected a number at '" + path + "'", path);
  try {
    return node.as<double>();
  } catch (const YAML::BadConversion&) {
    schema_error(node, "expected a number at '" + path + "', got '" + node.Scalar() + "'",
                 path);
  }
}

inline LikertValue read_likert(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar())
    schema_error(node, "expected an integer 0..5 at '" + path + "'", path);
  const std::string& text = node.Scalar();
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    schema_error(node, "expected an integer 0..5 at '" + path + "', got '" + text + "'", path);
  if (value < LikertValue::kMin || value > LikertValue::kMax)
    schema_error(node,
                 "influence value " + text + " at '" + path + "' is outside the scale 0..5",
                 path);
  return LikertValue(value);
}

inline std::string read_string(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) schema_error(node, "expected a string at '" + path + "'", path);
  return node.Scalar();
}

inline YAML::Node require_field(const YAML::Node& map, std::string_view key,
                                const std::string& parent) {
  YAML::Node child = map[std::string(key)];
  if (!child.IsDefined() || child.IsNull()) {
    const std::string where = parent.empty() ? std::string(key) : parent + "." + std::string(key);
    schema_error(map, "missing field " + std::string(key), where);
  }
  return child;
}

inline ScenarioConfig read_document(const YAML::Node& root) {
  if (!root.IsDefined() || root.IsNull())
    schema_error(root, "missing field contexts", std::string(kKeyContexts));
  if (!root.IsMap()) schema_error(root, "document root must be a mapping", "");

  for (const auto& kv : root) {
    const std::string key = key_string(kv.first, "document root");
    if (key != kKeyContexts && key != kKeyIntentions && key != kKeyCombined &&
        key != kKeyThreshold)
      schema_error(kv.first, "unknown field " + key, key);
  }

  ScenarioConfig config;

  const YAML::Node contexts = require_field(root, kKeyContexts, "");
  require_map(contexts, "contexts");
  for (const auto& ctx_kv : contexts) {
    ContextDef ctx;
    ctx.name = key_string(ctx_kv.first, "contexts");
    const std::string path = join_path(kKeyContexts, ctx.name);
    require_map(ctx_kv.second, path);
    for (const auto& inst_kv : ctx_kv.second) {
      Instantiation inst;
      inst.name = key_string(inst_kv.first, path);
      inst.prior = read_float(inst_kv.second, join_path(path, inst.name));
      ctx.instantiations.push_back(std::move(inst));
    }
    config.contexts.push_back(std::move(ctx));
  }

  const YAML::Node intentions = require_field(root, kKeyIntentions, "");
  require_map(intentions, "intentions");
  for (const auto& int_kv : intentions) {
    IntentionDef intention;
    intention.name = key_string(int_kv.first, "intentions");
    const std::string path = join_path(kKeyIntentions, intention.name);
    require_map(int_kv.second, path);
    for (const auto& ctx_kv : int_kv.second) {
      ContextInfluence ci;
      ci.context = key_string(ctx_kv.first, path);
      const std::string cpath = join_path(path, ci.context);
      require_map(ctx_kv.second, cpath);
      for (const auto& v_kv : ctx_kv.second) {
        std::string inst = key_string(v_kv.first, cpath);
        LikertValue v = read_likert(v_kv.second, join_path(cpath, inst));
        ci.values.emplace_back(std::move(inst), v);
      }
      intention.influences.push_back(std::move(ci));
    }
    config.intentions.push_back(std::move(intention));
  }

  if (const YAML::Node combined = root[std::string(kKeyCombined)];
      combined.IsDefined() && !combined.IsNull()) {
    if (!combined.IsSequence())
      schema_error(combined, "'combined_influences' must be a sequence",
                   std::string(kKeyCombined));
    for (std::size_t idx = 0; idx < combined.size(); ++idx) {
      const YAML::Node item = combined[idx];
      const std::string path = combined_path(idx);
      require_map(item, path);
      for (const auto& kv : item) {
        const std::string key = key_string(kv.first, path);
        if (key != "intention" && key != "conditions" && key != "value")
          schema_error(kv.first, "unknown field " + key, path + "." + key);
      }
      CombinedInfluence entry;
      entry.intention = read_string(require_field(item, "intention", path), path + ".intention");
      const YAML::Node conditions = require_field(item, "conditions", path);
      require_map(conditions, path + ".conditions");
      for (const auto& c_kv : conditions) {
        Condition cond;
        cond.context = key_string(c_kv.first, path + ".conditions");
        cond.instantiation = read_string(c_kv.second, path + ".conditions." + cond.context);
        entry.conditions.push_back(std::move(cond));
      }
      entry.value = read_likert(require_field(item, "value", path), path + ".value");
      config.combined.push_back(std::move(entry));
    }
  }

  config.decision_threshold =
      read_float(require_field(root, kKeyThreshold, ""), std::string(kKeyThreshold));
  return config;
}

}  // namespace detail

/// Parses a document into a ScenarioConfig without semantic validation.
/// Throws ConfigError of kind kSyntax or kSchema.
inline ScenarioConfig parse_config_unchecked(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& ex) {
    throw ConfigError(ConfigError::Kind::kSyntax, "SYNTAX_ERROR", ex.msg, "",
                      ex.mark.line + 1, ex.mark.column + 1);
  }
  try {
    return detail::read_document(root);
  } catch (const YAML::Exception& ex) {
    throw ConfigError(ConfigError::Kind::kSchema, "SCHEMA_ERROR", ex.msg, "",
                      ex.mark.line + 1, ex.mark.column + 1);
  }
}

/// Parses and validates. Throws ConfigError; for kSemantic the full
/// violation list is attached.
inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config = parse_config_unchecked(text);
  if (auto violations = validate_config(config); !violations.empty()) {
    const Violation first = violations.front();
    std::string message = first.code + " at " + first.path + ": " + first.message;
    if (violations.size() > 1)
      message += " (and " + std::to_string(violations.size() - 1) + " more)";
    throw ConfigError(ConfigError::Kind::kSemantic, "INVALID_CONFIG", std::move(message),
                      first.path, 0, 0, std::move(violations));
  }
  return config;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError(ConfigError::Kind::kIo, "IO_ERROR", "cannot read file '" + path + "'",
                      path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScenarioConfig load_config_file(const std::string& path) {
  return parse_config(read_text_file(path));
}

/// Emits contexts, then intentions, then combined_influences (only when
/// present), then decision_threshold. Floats are written in their
/// shortest exact form so parse(serialize(c)) == c.
inline std::string serialize_config(const ScenarioConfig& config) {
  if (auto violations = validate_config(config); !violations.empty()) {
    std::string path = violations.front().path;
    throw ConfigError(ConfigError::Kind::kSemantic, "INVALID_CONFIG",
                      "refusing to serialize an invalid configuration", std::move(path), 0, 0,
                      std::move(violations));
  }

  YAML::Emitter out;
  out.SetIndent(2);
  out << YAML::BeginMap;

  out << YAML::Key << std::string(detail::kKeyContexts) << YAML::Value << YAML::BeginMap;
  for (const auto& ctx : config.contexts) {
    out << YAML::Key << ctx.name << YAML::Value << YAML::BeginMap;
    for (const auto& inst : ctx.instantiations)
      out << YAML::Key << inst.name << YAML::Value << detail::shortest(inst.prior);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << std::string(detail::kKeyIntentions) << YAML::Value << YAML::BeginMap;
  for (const auto& intention : config.intentions) {
    out << YAML::Key << intention.name << YAML::Value << YAML::BeginMap;
    for (const auto& ci : intention.influences) {
      out << YAML::Key << ci.context << YAML::Value << YAML::BeginMap;
      for (const auto& [inst, v] : ci.values)
        out << YAML::Key << inst << YAML::Value << v.value();
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  if (!config.combined.empty()) {
    out << YAML::Key << std::string(detail::kKeyCombined) << YAML::Value << YAML::BeginSeq;
    for (const auto& entry : config.combined) {
      out << YAML::BeginMap;
      out << YAML::Key << "intention" << YAML::Value << entry.intention;
      out << YAML::Key << "conditions" << YAML::Value << YAML::BeginMap;
      for (const auto& cond : entry.conditions)
        out << YAML::Key << cond.context << YAML::Value << cond.instantiation;
      out << YAML::EndMap;
      out << YAML::Key << "value" << YAML::Value << entry.value.value();
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }

  out << YAML::Key << std::string(detail::kKeyThreshold) << YAML::Value
      << detail::shortest(config.decision_threshold);
  out << YAML::EndMap;

  std::string text = out.c_str();
  text += '\n';
  return text;
}

}  // namespace intentbn
