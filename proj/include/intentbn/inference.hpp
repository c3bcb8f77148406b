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
 * @file inference.hpp
 * @brief Exact marginal inference over a compiled two-layer network.
 *
 * The posterior of intention m is the expectation of the conditional
 * P(m | a) over total assignments a, each context drawn independently from
 * its evidence distribution or, when unobserved, its prior. Because the
 * conditional is an average of per-context terms, the expectation splits
 * into per-context expectations; only contexts mentioned by combined
 * entries need joint enumeration, and only when such entries exist.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "intentbn/error.hpp"
#include "intentbn/evidence.hpp"
#include "intentbn/likert.hpp"
#include "intentbn/network.hpp"

namespace intentbn {

struct ContextTerm {
  std::string context;
  double expected_observed = 0.0;  // sum_l w(l) * p[l]
  double expected_prior = 0.0;     // sum_l prior(l) * p[l]
  double delta = 0.0;              // (expected_observed - expected_prior) / K
};

/// Contribution of one combined entry: E[ 1{entry wins} * (override - plain mean) ].
struct CombinedCorrection {
  std::size_t source = 0;  // index into ScenarioConfig::combined
  std::vector<Condition> conditions;
  double correction = 0.0;
};

struct IntentionExplanation {
  std::string intention;
  double baseline = 0.0;  // posterior under empty evidence
  double posterior = 0.0;
  std::vector<ContextTerm> terms;  // declaration order of contexts
  std::vector<CombinedCorrection> corrections;

  /// Terms ordered by |delta|, largest first; ties keep declaration order.
  std::vector<ContextTerm> ranked_terms() const {
    auto out = terms;
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::abs(a.delta) > std::abs(b.delta);
    });
    return out;
  }
};

struct Explanation {
  std::vector<IntentionExplanation> intentions;  // declaration order

  const IntentionExplanation& at(std::string_view intention) const {
    for (const auto& e : intentions)
      if (e.intention == intention) return e;
    throw QueryError("UNKNOWN_INTENTION", "unknown intention '" + std::string(intention) + "'",
                     std::string(intention));
  }
};

struct InferenceResult {
  /// P(intention = true | evidence), declaration order; not normalized.
  std::vector<std::pair<std::string, double>> posteriors;
  /// posteriors / sum(posteriors); uniform when every posterior is 0. Display only.
  std::vector<std::pair<std::string, double>> normalized;
  /// Top intention if its posterior strictly exceeds the threshold.
  std::optional<std::string> decision;
  /// More than one intention shares the top posterior; the earliest declared wins.
  bool tie = false;
  Explanation explanation;

  double posterior(std::string_view intention) const {
    for (const auto& [name, p] : posteriors)
      if (name == intention) return p;
    throw QueryError("UNKNOWN_INTENTION", "unknown intention '" + std::string(intention) + "'",
                     std::string(intention));
  }

  /// P(intention = false | evidence).
  double complement(std::string_view intention) const { return 1.0 - posterior(intention); }
};

namespace detail {

// Odometer over the given contexts; calls fn(assignment) for each joint value.
// Positions not in `contexts` are left untouched.
template <typename Fn>
void enumerate(const CompiledNetwork& net, std::span<const std::size_t> contexts,
               std::vector<std::size_t>& assignment, Fn&& fn) {
  for (auto k : contexts) assignment[k] = 0;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(assignment));
    std::size_t pos = 0;
    for (; pos < contexts.size(); ++pos) {
      const std::size_t k = contexts[pos];
      if (++assignment[k] < net.context(k).instantiations.size()) break;
      assignment[k] = 0;
    }
    if (pos == contexts.size()) return;
  }
}

struct Decomposition {
  double posterior = 0.0;
  std::vector<double> expected;        // per context
  std::vector<double> corrections;     // per entry of CompiledIntention::combined
};

inline Decomposition decompose(const CompiledNetwork& net, std::size_t m,
                               const std::vector<std::vector<double>>& weights) {
  const auto& intent = net.intention(m);
  const std::size_t k_total = net.context_count();
  const double k_count = static_cast<double>(k_total);

  Decomposition out;
  out.expected.resize(k_total);
  double sum = 0.0;
  for (std::size_t k = 0; k < k_total; ++k) {
    double e = 0.0;
    const auto& row = intent.single_condition[k];
    for (std::size_t l = 0; l < row.size(); ++l) e += weights[k][l] * row[l];
    out.expected[k] = e;
    sum += e;
  }
  out.posterior = sum / k_count;
  out.corrections.assign(intent.combined.size(), 0.0);
  if (intent.combined.empty()) return out;

  // Contexts outside the combined union are independent of which entry
  // wins, so their terms enter through their expectations.
  double rest = 0.0;
  for (std::size_t k = 0; k < k_total; ++k)
    if (!std::binary_search(intent.combined_contexts.begin(), intent.combined_contexts.end(), k))
      rest += out.expected[k];

  std::vector<std::size_t> assignment(k_total, 0);
  enumerate(net, intent.combined_contexts, assignment, [&](const std::vector<std::size_t>& a) {
    std::size_t winner = intent.combined.size();
    for (std::size_t c = 0; c < intent.combined.size(); ++c) {
      if (intent.combined[c].satisfied_by(a)) {
        winner = c;
        break;
      }
    }
    if (winner == intent.combined.size()) return;
    double w = 1.0;
    for (auto k : intent.combined_contexts) w *= weights[k][a[k]];
    if (w == 0.0) return;

    const auto& entry = intent.combined[winner];
    double in_union = 0.0;
    double uncovered = 0.0;
    for (auto k : intent.combined_contexts) {
      const double p = intent.single_condition[k][a[k]];
      in_union += p;
      if (!entry.covers(k)) uncovered += p;
    }
    const double overridden = (uncovered + rest + entry.probability) /
                              static_cast<double>(k_total - entry.conditions.size() + 1);
    const double plain = (in_union + rest) / k_count;
    out.corrections[winner] += w * (overridden - plain);
  });
  for (double c : out.corrections) out.posterior += c;
  return out;
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, kMaxAnchor); }

inline std::vector<std::vector<double>> prior_weights(const CompiledNetwork& net) {
  std::vector<std::vector<double>> w;
  w.reserve(net.context_count());
  for (std::size_t k = 0; k < net.context_count(); ++k) w.push_back(net.priors(k));
  return w;
}

inline Explanation explain_weights(const CompiledNetwork& net,
                                   const std::vector<std::vector<double>>& weights) {
  const auto priors = prior_weights(net);
  const double k_count = static_cast<double>(net.context_count());
  Explanation out;
  out.intentions.reserve(net.intention_count());
  for (std::size_t m = 0; m < net.intention_count(); ++m) {
    const auto& intent = net.intention(m);
    const Decomposition observed = decompose(net, m, weights);
    const Decomposition baseline = decompose(net, m, priors);

    IntentionExplanation ie;
    ie.intention = intent.name;
    ie.baseline = clamp_probability(baseline.posterior);
    ie.posterior = clamp_probability(observed.posterior);
    for (std::size_t k = 0; k < net.context_count(); ++k) {
      ContextTerm t;
      t.context = net.context(k).name;
      t.expected_observed = observed.expected[k];
      t.expected_prior = baseline.expected[k];
      t.delta = (t.expected_observed - t.expected_prior) / k_count;
      ie.terms.push_back(std::move(t));
    }
    for (std::size_t c = 0; c < intent.combined.size(); ++c) {
      CombinedCorrection cc;
      cc.source = intent.combined[c].source;
      cc.conditions = net.config().combined[cc.source].conditions;
      cc.correction = observed.corrections[c];
      ie.corrections.push_back(std::move(cc));
    }
    std::sort(ie.corrections.begin(), ie.corrections.end(),
              [](const auto& a, const auto& b) { return a.source < b.source; });
    out.intentions.push_back(std::move(ie));
  }
  return out;
}

}  // namespace detail

/// Per-intention decomposition of the posterior into per-context terms
/// and combined-entry corrections. Throws EvidenceError.
inline Explanation explain(const CompiledNetwork& net, const Evidence& evidence) {
  return detail::explain_weights(net, resolve_weights(net, evidence));
}

/// Marginal posteriors, the thresholded decision and the explanation.
/// Throws EvidenceError.
inline InferenceResult infer(const CompiledNetwork& net, const Evidence& evidence) {
  InferenceResult result;
  result.explanation = explain(net, evidence);

  double total = 0.0;
  for (const auto& ie : result.explanation.intentions) {
    result.posteriors.emplace_back(ie.intention, ie.posterior);
    total += ie.posterior;
  }
  const double uniform = 1.0 / static_cast<double>(result.posteriors.size());
  for (const auto& [name, p] : result.posteriors)
    result.normalized.emplace_back(name, total > 0.0 ? p / total : uniform);

  std::size_t best = 0;
  for (std::size_t m = 1; m < result.posteriors.size(); ++m)
    if (result.posteriors[m].second > result.posteriors[best].second) best = m;
  const double top = result.posteriors[best].second;
  result.tie = std::count_if(result.posteriors.begin(), result.posteriors.end(),
                             [&](const auto& kv) { return kv.second == top; }) > 1;
  if (top > net.decision_threshold()) result.decision = result.posteriors[best].first;
  return result;
}

/// Decision carried from one step to the next; nullopt means none.
using StepState = std::optional<std::string>;

struct StepOutcome {
  InferenceResult result;
  StepState state;
};

/// One step of order-1 temporal recursion. When the scenario declares the
/// `previous_intention` context and the evidence does not observe it, the
/// previous decision (or `none`) is injected as a hard observation.
inline StepOutcome step(const CompiledNetwork& net, const StepState& state, Evidence evidence) {
  if (net.context_index(kPreviousIntentionContext) &&
      !evidence.contains(kPreviousIntentionContext)) {
    evidence.observe(std::string(kPreviousIntentionContext),
                     state.value_or(std::string(kNoIntention)));
  }
  StepOutcome out;
  out.result = infer(net, evidence);
  out.state = out.result.decision;
  return out;
}

/// Largest assignment space brute_force_posterior will walk.
inline constexpr double kBruteForceLimit = 1e6;

/// Literal evaluation of the defining sum over every total assignment.
/// Intended as a conformance oracle; throws QueryError("TOO_LARGE") past
/// kBruteForceLimit assignments.
inline double brute_force_posterior(const CompiledNetwork& net, std::string_view intention,
                                    const Evidence& evidence) {
  const std::size_t m = net.require_intention(intention);
  double space = 1.0;
  for (std::size_t k = 0; k < net.context_count(); ++k)
    space *= static_cast<double>(net.context(k).instantiations.size());
  if (space > kBruteForceLimit)
    throw QueryError("TOO_LARGE", "assignment space of " + detail::readable(space) +
                                      " exceeds the enumeration limit");

  const auto weights = resolve_weights(net, evidence);
  std::vector<std::size_t> all(net.context_count());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  std::vector<std::size_t> assignment(net.context_count(), 0);
  double total = 0.0;
  detail::enumerate(net, all, assignment, [&](const std::vector<std::size_t>& a) {
    double w = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) w *= weights[k][a[k]];
    total += w * net.conditional_probability(m, a);
  });
  return total;
}

/// Wire form: keys `posteriors`, `normalized`, `decision` (string or null),
/// `tie`, `explanation`. Object keys come out sorted.
inline nlohmann::json to_json(const InferenceResult& result) {
  nlohmann::json out;
  out["posteriors"] = nlohmann::json::object();
  for (const auto& [name, p] : result.posteriors) out["posteriors"][name] = p;
  out["normalized"] = nlohmann::json::object();
  for (const auto& [name, p] : result.normalized) out["normalized"][name] = p;
  out["decision"] = result.decision ? nlohmann::json(*result.decision) : nlohmann::json(nullptr);
  out["tie"] = result.tie;

  nlohmann::json explanation = nlohmann::json::object();
  for (const auto& ie : result.explanation.intentions) {
    nlohmann::json contexts = nlohmann::json::object();
    for (const auto& t : ie.terms)
      contexts[t.context] = {{"expected_observed", t.expected_observed},
                             {"expected_prior", t.expected_prior},
                             {"delta", t.delta}};
    nlohmann::json corrections = nlohmann::json::array();
    for (const auto& cc : ie.corrections) {
      nlohmann::json conds = nlohmann::json::object();
      for (const auto& c : cc.conditions) conds[c.context] = c.instantiation;
      corrections.push_back(
          {{"index", cc.source}, {"conditions", conds}, {"correction", cc.correction}});
    }
    explanation[ie.intention] = {{"baseline", ie.baseline},
                                 {"posterior", ie.posterior},
                                 {"contexts", contexts},
                                 {"combined_corrections", corrections}};
  }
  out["explanation"] = std::move(explanation);
  return out;
}

}  // namespace intentbn
