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

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "intentbn/detail/numfmt.hpp"
#include "intentbn/scenario.hpp"

namespace intentbn {

/// Tolerance for "sums to one" checks on priors and soft evidence.
inline constexpr double kNormalizationTolerance = 1e-6;

/// One broken constraint. `code` is stable and machine-readable, `path`
/// points into the document (`contexts.weather`, `intentions.x.weather.sunny`,
/// `combined_influences[0]`, `decision_threshold`).
struct Violation {
  std::string code;
  std::string message;
  std::string path;

  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace violation {
inline constexpr std::string_view kNoContexts = "NO_CONTEXTS";
inline constexpr std::string_view kNoIntentions = "NO_INTENTIONS";
inline constexpr std::string_view kEmptyName = "EMPTY_NAME";
inline constexpr std::string_view kDuplicateContext = "DUPLICATE_CONTEXT";
inline constexpr std::string_view kDuplicateIntention = "DUPLICATE_INTENTION";
inline constexpr std::string_view kNameCollision = "NAME_COLLISION";
inline constexpr std::string_view kTooFewInstantiations = "TOO_FEW_INSTANTIATIONS";
inline constexpr std::string_view kDuplicateInstantiation = "DUPLICATE_INSTANTIATION";
inline constexpr std::string_view kPriorOutOfRange = "PRIOR_OUT_OF_RANGE";
inline constexpr std::string_view kPriorsNotNormalized = "PRIORS_NOT_NORMALIZED";
inline constexpr std::string_view kUnknownInfluenceContext = "UNKNOWN_INFLUENCE_CONTEXT";
inline constexpr std::string_view kDuplicateInfluenceContext = "DUPLICATE_INFLUENCE_CONTEXT";
inline constexpr std::string_view kMissingInfluenceContext = "MISSING_INFLUENCE_CONTEXT";
inline constexpr std::string_view kUnknownInfluenceInstantiation =
    "UNKNOWN_INFLUENCE_INSTANTIATION";
inline constexpr std::string_view kDuplicateInfluenceValue = "DUPLICATE_INFLUENCE_VALUE";
inline constexpr std::string_view kMissingInfluenceValue = "MISSING_INFLUENCE_VALUE";
inline constexpr std::string_view kCombinedUnknownIntention = "COMBINED_UNKNOWN_INTENTION";
inline constexpr std::string_view kCombinedUnknownContext = "COMBINED_UNKNOWN_CONTEXT";
inline constexpr std::string_view kCombinedUnknownInstantiation =
    "COMBINED_UNKNOWN_INSTANTIATION";
inline constexpr std::string_view kCombinedTooFewConditions = "COMBINED_TOO_FEW_CONDITIONS";
inline constexpr std::string_view kCombinedRepeatedContext = "COMBINED_REPEATED_CONTEXT";
inline constexpr std::string_view kDuplicateCombined = "DUPLICATE_COMBINED";
inline constexpr std::string_view kAmbiguousCombinedOverlap = "AMBIGUOUS_COMBINED_OVERLAP";
inline constexpr std::string_view kThresholdOutOfRange = "THRESHOLD_OUT_OF_RANGE";
inline constexpr std::string_view kPreviousIntentionMismatch = "PREVIOUS_INTENTION_MISMATCH";
}  // namespace violation

namespace detail {

inline std::string join_path(std::string_view a, std::string_view b) {
  std::string out(a);
  out += '.';
  out += b;
  return out;
}

inline std::string combined_path(std::size_t index) {
  return "combined_influences[" + std::to_string(index) + "]";
}

// Two combined entries can hold at once iff they agree on every shared context.
inline bool jointly_satisfiable(const CombinedInfluence& a, const CombinedInfluence& b) {
  for (const auto& ca : a.conditions)
    for (const auto& cb : b.conditions)
      if (ca.context == cb.context && ca.instantiation != cb.instantiation) return false;
  return true;
}

inline std::set<std::string> condition_contexts(const CombinedInfluence& c) {
  std::set<std::string> out;
  for (const auto& cond : c.conditions) out.insert(cond.context);
  return out;
}

}  // namespace detail

/// Checks every structural and semantic constraint of a scenario. Returns
/// an empty list iff the scenario is usable for compilation and inference.
inline std::vector<Violation> validate_config(const ScenarioConfig& config) {
  using namespace violation;
  std::vector<Violation> out;
  auto report = [&](std::string_view code, std::string message, std::string path) {
    out.push_back({std::string(code), std::move(message), std::move(path)});
  };

  if (config.contexts.empty()) report(kNoContexts, "scenario declares no contexts", "contexts");
  if (config.intentions.empty())
    report(kNoIntentions, "scenario declares no intentions", "intentions");

  std::unordered_set<std::string> context_names;
  for (const auto& ctx : config.contexts) {
    const auto path = detail::join_path("contexts", ctx.name);
    if (ctx.name.empty()) report(kEmptyName, "context name is empty", path);
    if (!context_names.insert(ctx.name).second)
      report(kDuplicateContext, "context '" + ctx.name + "' is declared more than once", path);
    if (ctx.instantiations.size() < 2)
      report(kTooFewInstantiations,
             "context '" + ctx.name + "' needs at least 2 instantiations, has " +
                 std::to_string(ctx.instantiations.size()),
             path);

    std::unordered_set<std::string> seen;
    double sum = 0.0;
    bool priors_ok = true;
    for (const auto& inst : ctx.instantiations) {
      const auto ipath = detail::join_path(path, inst.name);
      if (inst.name.empty()) report(kEmptyName, "instantiation name is empty", ipath);
      if (!seen.insert(inst.name).second)
        report(kDuplicateInstantiation,
               "instantiation '" + inst.name + "' is declared more than once", ipath);
      if (!(inst.prior >= 0.0 && inst.prior <= 1.0)) {
        report(kPriorOutOfRange,
               "prior " + detail::readable(inst.prior) + " is outside [0, 1]", ipath);
        priors_ok = false;
      }
      sum += inst.prior;
    }
    if (priors_ok && !ctx.instantiations.empty() &&
        std::abs(sum - 1.0) > kNormalizationTolerance)
      report(kPriorsNotNormalized,
             "priors of '" + ctx.name + "' sum to " + detail::readable(sum) + ", expected 1",
             path);
  }

  std::unordered_set<std::string> intention_names;
  for (const auto& intention : config.intentions) {
    const auto path = detail::join_path("intentions", intention.name);
    if (intention.name.empty()) report(kEmptyName, "intention name is empty", path);
    if (!intention_names.insert(intention.name).second)
      report(kDuplicateIntention,
             "intention '" + intention.name + "' is declared more than once", path);
    if (context_names.count(intention.name))
      report(kNameCollision,
             "'" + intention.name + "' is used both as a context and as an intention", path);

    std::unordered_set<std::string> seen_contexts;
    for (const auto& ci : intention.influences) {
      const auto cpath = detail::join_path(path, ci.context);
      if (!seen_contexts.insert(ci.context).second) {
        report(kDuplicateInfluenceContext,
               "influences for context '" + ci.context + "' are given more than once", cpath);
        continue;
      }
      const ContextDef* ctx = config.find_context(ci.context);
      if (!ctx) {
        report(kUnknownInfluenceContext, "unknown context '" + ci.context + "'", cpath);
        continue;
      }
      std::unordered_set<std::string> seen_values;
      for (const auto& [inst, value] : ci.values) {
        const auto ipath = detail::join_path(cpath, inst);
        if (!ctx->index_of(inst))
          report(kUnknownInfluenceInstantiation,
                 "context '" + ci.context + "' has no instantiation '" + inst + "'", ipath);
        else if (!seen_values.insert(inst).second)
          report(kDuplicateInfluenceValue,
                 "influence for '" + inst + "' is given more than once", ipath);
      }
      for (const auto& inst : ctx->instantiations)
        if (!seen_values.count(inst.name))
          report(kMissingInfluenceValue,
                 "no influence value for instantiation '" + inst.name + "'",
                 detail::join_path(cpath, inst.name));
    }
    for (const auto& ctx : config.contexts)
      if (!seen_contexts.count(ctx.name))
        report(kMissingInfluenceContext,
               "intention '" + intention.name + "' has no influence values for context '" +
                   ctx.name + "'",
               detail::join_path(path, ctx.name));
  }

  // Combined entries: per-entry checks first, overlap only among well-formed ones.
  std::vector<bool> well_formed(config.combined.size(), false);
  for (std::size_t idx = 0; idx < config.combined.size(); ++idx) {
    const auto& entry = config.combined[idx];
    const auto path = detail::combined_path(idx);
    bool ok = true;
    if (!config.find_intention(entry.intention)) {
      report(kCombinedUnknownIntention, "unknown intention '" + entry.intention + "'", path);
      ok = false;
    }
    if (entry.conditions.size() < 2) {
      report(kCombinedTooFewConditions, "a combined influence needs at least 2 conditions",
             path);
      ok = false;
    }
    std::unordered_set<std::string> seen;
    for (const auto& cond : entry.conditions) {
      const auto cpath = path + ".conditions." + cond.context;
      if (!seen.insert(cond.context).second) {
        report(kCombinedRepeatedContext,
               "context '" + cond.context + "' appears more than once", cpath);
        ok = false;
      }
      const ContextDef* ctx = config.find_context(cond.context);
      if (!ctx) {
        report(kCombinedUnknownContext, "unknown context '" + cond.context + "'", cpath);
        ok = false;
      } else if (!ctx->index_of(cond.instantiation)) {
        report(kCombinedUnknownInstantiation,
               "context '" + cond.context + "' has no instantiation '" + cond.instantiation +
                   "'",
               cpath);
        ok = false;
      }
    }
    well_formed[idx] = ok;
  }
  for (std::size_t a = 0; a < config.combined.size(); ++a) {
    if (!well_formed[a]) continue;
    for (std::size_t b = a + 1; b < config.combined.size(); ++b) {
      if (!well_formed[b]) continue;
      const auto& ea = config.combined[a];
      const auto& eb = config.combined[b];
      if (ea.intention != eb.intention || !detail::jointly_satisfiable(ea, eb)) continue;
      const auto ca = detail::condition_contexts(ea);
      const auto cb = detail::condition_contexts(eb);
      if (ca == cb) {
        report(kDuplicateCombined,
               "same condition set as " + detail::combined_path(a) + " for intention '" +
                   ea.intention + "'",
               detail::combined_path(b));
      } else if (!std::includes(ca.begin(), ca.end(), cb.begin(), cb.end()) &&
                 !std::includes(cb.begin(), cb.end(), ca.begin(), ca.end())) {
        report(kAmbiguousCombinedOverlap,
               "can hold together with " + detail::combined_path(a) +
                   " but neither condition set contains the other",
               detail::combined_path(b));
      }
    }
  }

  if (!(config.decision_threshold >= 0.0 && config.decision_threshold <= 1.0))
    report(kThresholdOutOfRange,
           "decision_threshold " + detail::readable(config.decision_threshold) +
               " is outside [0, 1]",
           "decision_threshold");

  if (const ContextDef* prev = config.find_context(kPreviousIntentionContext)) {
    std::set<std::string> expected{std::string(kNoIntention)};
    bool clash = false;
    for (const auto& i : config.intentions) {
      clash = clash || i.name == kNoIntention;
      expected.insert(i.name);
    }
    std::set<std::string> actual;
    for (const auto& inst : prev->instantiations) actual.insert(inst.name);
    if (clash || actual != expected || prev->instantiations.size() != expected.size())
      report(kPreviousIntentionMismatch,
             "instantiations of '" + std::string(kPreviousIntentionContext) +
                 "' must be exactly the intention names plus 'none'",
             detail::join_path("contexts", kPreviousIntentionContext));
  }

  return out;
}

}  // namespace intentbn
