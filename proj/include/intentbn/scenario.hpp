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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intentbn/likert.hpp"

namespace intentbn {

/// Reserved context name that turns on order-1 temporal recursion: its
/// instantiations are the intention names plus `none`.
inline constexpr std::string_view kPreviousIntentionContext = "previous_intention";
inline constexpr std::string_view kNoIntention = "none";

struct Instantiation {
  std::string name;
  double prior = 0.0;

  friend bool operator==(const Instantiation&, const Instantiation&) = default;
};

/// An observable phenomenon with discrete, prior-weighted instantiations.
/// Declaration order of instantiations is preserved everywhere.
struct ContextDef {
  std::string name;
  std::vector<Instantiation> instantiations;

  std::optional<std::size_t> index_of(std::string_view instantiation) const {
    auto it = std::find_if(instantiations.begin(), instantiations.end(),
                           [&](const Instantiation& i) { return i.name == instantiation; });
    if (it == instantiations.end()) return std::nullopt;
    return static_cast<std::size_t>(it - instantiations.begin());
  }

  friend bool operator==(const ContextDef&, const ContextDef&) = default;
};

/// Influence values of one context's instantiations on one intention.
struct ContextInfluence {
  std::string context;
  std::vector<std::pair<std::string, LikertValue>> values;

  friend bool operator==(const ContextInfluence&, const ContextInfluence&) = default;
};

/// A binary intention. Only the "present" state is described; "absent" is
/// its complement.
struct IntentionDef {
  std::string name;
  std::vector<ContextInfluence> influences;

  const ContextInfluence* influence_of(std::string_view context) const {
    for (const auto& ci : influences)
      if (ci.context == context) return &ci;
    return nullptr;
  }

  std::optional<LikertValue> value_of(std::string_view context,
                                      std::string_view instantiation) const {
    if (const auto* ci = influence_of(context)) {
      for (const auto& [name, v] : ci->values)
        if (name == instantiation) return v;
    }
    return std::nullopt;
  }

  friend bool operator==(const IntentionDef&, const IntentionDef&) = default;
};

struct Condition {
  std::string context;
  std::string instantiation;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Override for a conjunction of context instantiations. When the
/// conjunction holds, `value` replaces the involved contexts' terms in the
/// average, counted once.
struct CombinedInfluence {
  std::string intention;
  std::vector<Condition> conditions;
  LikertValue value;

  friend bool operator==(const CombinedInfluence&, const CombinedInfluence&) = default;
};

struct ScenarioConfig {
  std::vector<ContextDef> contexts;
  std::vector<IntentionDef> intentions;
  std::vector<CombinedInfluence> combined;
  double decision_threshold = 0.0;

  const ContextDef* find_context(std::string_view name) const {
    for (const auto& c : contexts)
      if (c.name == name) return &c;
    return nullptr;
  }

  const IntentionDef* find_intention(std::string_view name) const {
    for (const auto& i : intentions)
      if (i.name == name) return &i;
    return nullptr;
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Number of values a designer typed in: every prior plus every
/// per-intention influence value. Combined entries and the threshold are
/// not counted.
inline std::size_t user_value_count(const ScenarioConfig& config) {
  std::size_t n = 0;
  for (const auto& c : config.contexts) n += c.instantiations.size();
  for (const auto& i : config.intentions)
    for (const auto& ci : i.influences) n += ci.values.size();
  return n;
}

}  // namespace intentbn
