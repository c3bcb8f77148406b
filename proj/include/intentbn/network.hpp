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
 * @file network.hpp
 * @brief Two-layer network compiled from a scenario.
 *
 * Context nodes form the first layer, binary intention nodes the second.
 * The conditional P(intention | full context assignment) is never
 * tabulated. It is the mean of the single-condition probabilities of the
 * assigned instantiations, except that a satisfied combined entry replaces
 * its contexts' terms with a single term of its own:
 *
 *     P = ( sum_{k not in S} p[k][a_k] + p_S ) / (K - |S| + 1)
 *
 * where S is the largest satisfied combined entry for the intention.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intentbn/config_io.hpp"
#include "intentbn/error.hpp"
#include "intentbn/likert.hpp"
#include "intentbn/scenario.hpp"
#include "intentbn/validation.hpp"

namespace intentbn {

/// context name -> instantiation name, total over the scenario's contexts.
using Assignment = std::map<std::string, std::string, std::less<>>;

/// Combined entry resolved to indices.
struct CompiledCombined {
  std::vector<std::pair<std::size_t, std::size_t>> conditions;  // (context, instantiation)
  double probability = 0.0;
  std::size_t source = 0;  // index into ScenarioConfig::combined

  bool satisfied_by(std::span<const std::size_t> assignment) const noexcept {
    return std::all_of(conditions.begin(), conditions.end(),
                       [&](const auto& c) { return assignment[c.first] == c.second; });
  }

  bool covers(std::size_t context) const noexcept {
    return std::any_of(conditions.begin(), conditions.end(),
                       [&](const auto& c) { return c.first == context; });
  }
};

struct CompiledIntention {
  std::string name;
  /// single_condition[k][l] = anchor of the influence of instantiation l of context k.
  std::vector<std::vector<double>> single_condition;
  /// Sorted by descending condition count so the first satisfied entry wins.
  std::vector<CompiledCombined> combined;
  /// Sorted union of the contexts referenced by `combined`.
  std::vector<std::size_t> combined_contexts;
};

class CompiledNetwork;
CompiledNetwork compile(ScenarioConfig config);

/// Immutable after construction; share freely across threads.
class CompiledNetwork {
 public:
  const ScenarioConfig& config() const noexcept { return config_; }

  std::size_t context_count() const noexcept { return config_.contexts.size(); }
  std::size_t intention_count() const noexcept { return intentions_.size(); }

  const ContextDef& context(std::size_t k) const { return config_.contexts.at(k); }
  const CompiledIntention& intention(std::size_t m) const { return intentions_.at(m); }
  const std::vector<double>& priors(std::size_t k) const { return priors_.at(k); }
  double decision_threshold() const noexcept { return config_.decision_threshold; }

  std::optional<std::size_t> context_index(std::string_view name) const {
    auto it = context_index_.find(std::string(name));
    if (it == context_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> intention_index(std::string_view name) const {
    auto it = intention_index_.find(std::string(name));
    if (it == intention_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_intention(std::string_view name) const {
    if (auto m = intention_index(name)) return *m;
    throw QueryError("UNKNOWN_INTENTION", "unknown intention '" + std::string(name) + "'",
                     std::string(name));
  }

  double single_condition_probability(std::size_t m, std::size_t k, std::size_t l) const {
    return intentions_.at(m).single_condition.at(k).at(l);
  }

  /// P(intention m = true | assignment), assignment given as one
  /// instantiation index per context.
  double conditional_probability(std::size_t m, std::span<const std::size_t> assignment) const {
    const auto& intent = intentions_.at(m);
    const std::size_t k_total = context_count();
    const CompiledCombined* winner = nullptr;
    for (const auto& entry : intent.combined) {
      if (entry.satisfied_by(assignment)) {
        winner = &entry;
        break;
      }
    }
    if (!winner) {
      double sum = 0.0;
      for (std::size_t k = 0; k < k_total; ++k) sum += intent.single_condition[k][assignment[k]];
      return sum / static_cast<double>(k_total);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < k_total; ++k)
      if (!winner->covers(k)) sum += intent.single_condition[k][assignment[k]];
    sum += winner->probability;
    return sum / static_cast<double>(k_total - winner->conditions.size() + 1);
  }

  /// Converts a named assignment to indices. Throws QueryError when it is
  /// partial or names unknown contexts/instantiations.
  std::vector<std::size_t> resolve(const Assignment& assignment) const {
    std::vector<std::size_t> out(context_count());
    for (const auto& [ctx, inst] : assignment) {
      auto k = context_index(ctx);
      if (!k) throw QueryError("UNKNOWN_CONTEXT", "unknown context '" + ctx + "'", ctx);
      auto l = config_.contexts[*k].index_of(inst);
      if (!l)
        throw QueryError("UNKNOWN_INSTANTIATION",
                         "unknown instantiation '" + inst + "' for context '" + ctx + "'", ctx);
      out[*k] = *l;
    }
    for (const auto& ctx : config_.contexts)
      if (assignment.find(ctx.name) == assignment.end())
        throw QueryError("PARTIAL_ASSIGNMENT", "assignment has no value for context '" +
                                                   ctx.name + "'", ctx.name);
    return out;
  }

 private:
  friend CompiledNetwork compile(ScenarioConfig config);
  CompiledNetwork() = default;

  ScenarioConfig config_;
  std::vector<std::vector<double>> priors_;
  std::vector<CompiledIntention> intentions_;
  std::unordered_map<std::string, std::size_t> context_index_;
  std::unordered_map<std::string, std::size_t> intention_index_;
};

/// Materializes every single-condition and combined probability. Linear in
/// the number of (intention, context, instantiation) triples; full context
/// assignments are never enumerated.
inline CompiledNetwork compile(ScenarioConfig config) {
  if (auto violations = validate_config(config); !violations.empty()) {
    const Violation first = violations.front();
    throw ConfigError(ConfigError::Kind::kSemantic, "INVALID_CONFIG",
                      "cannot compile an invalid configuration: " + first.code + " at " +
                          first.path,
                      first.path, 0, 0, std::move(violations));
  }

  CompiledNetwork net;
  for (std::size_t k = 0; k < config.contexts.size(); ++k) {
    const auto& ctx = config.contexts[k];
    net.context_index_.emplace(ctx.name, k);
    std::vector<double> priors;
    priors.reserve(ctx.instantiations.size());
    for (const auto& inst : ctx.instantiations) priors.push_back(inst.prior);
    net.priors_.push_back(std::move(priors));
  }

  for (std::size_t m = 0; m < config.intentions.size(); ++m) {
    const auto& def = config.intentions[m];
    net.intention_index_.emplace(def.name, m);
    CompiledIntention intent;
    intent.name = def.name;
    intent.single_condition.resize(config.contexts.size());
    for (std::size_t k = 0; k < config.contexts.size(); ++k) {
      const auto& ctx = config.contexts[k];
      const ContextInfluence* ci = def.influence_of(ctx.name);
      auto& row = intent.single_condition[k];
      row.resize(ctx.instantiations.size());
      for (const auto& [inst, v] : ci->values) row[*ctx.index_of(inst)] = likert_to_probability(v);
    }
    net.intentions_.push_back(std::move(intent));
  }

  for (std::size_t idx = 0; idx < config.combined.size(); ++idx) {
    const auto& entry = config.combined[idx];
    auto& intent = net.intentions_[net.intention_index_.at(entry.intention)];
    CompiledCombined cc;
    cc.probability = likert_to_probability(entry.value);
    cc.source = idx;
    for (const auto& cond : entry.conditions) {
      const std::size_t k = net.context_index_.at(cond.context);
      cc.conditions.emplace_back(k, *config.contexts[k].index_of(cond.instantiation));
    }
    std::sort(cc.conditions.begin(), cc.conditions.end());
    intent.combined.push_back(std::move(cc));
  }
  for (auto& intent : net.intentions_) {
    std::stable_sort(intent.combined.begin(), intent.combined.end(),
                     [](const auto& a, const auto& b) {
                       return a.conditions.size() > b.conditions.size();
                     });
    for (const auto& cc : intent.combined)
      for (const auto& [k, l] : cc.conditions) intent.combined_contexts.push_back(k);
    std::sort(intent.combined_contexts.begin(), intent.combined_contexts.end());
    intent.combined_contexts.erase(
        std::unique(intent.combined_contexts.begin(), intent.combined_contexts.end()),
        intent.combined_contexts.end());
  }

  net.config_ = std::move(config);
  return net;
}

/// Name-level form of CompiledNetwork::conditional_probability.
inline double conditional_probability(const CompiledNetwork& net, std::string_view intention,
                                      const Assignment& assignment) {
  const std::size_t m = net.require_intention(intention);
  const auto indices = net.resolve(assignment);
  return net.conditional_probability(m, indices);
}

}  // namespace intentbn
