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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "intentbn/detail/numfmt.hpp"
#include "intentbn/error.hpp"
#include "intentbn/network.hpp"
#include "intentbn/validation.hpp"

namespace intentbn {

/// instantiation -> weight. Instantiations left out carry weight 0.
using Distribution = std::map<std::string, double, std::less<>>;

/// Per-context observations. A hard observation is a point mass; contexts
/// not present fall back to their priors at inference time.
class Evidence {
 public:
  Evidence() = default;

  Evidence& observe(std::string context, std::string instantiation) {
    observations_[std::move(context)] = Distribution{{std::move(instantiation), 1.0}};
    return *this;
  }

  Evidence& observe(std::string context, Distribution distribution) {
    observations_[std::move(context)] = std::move(distribution);
    return *this;
  }

  bool contains(std::string_view context) const {
    return observations_.find(context) != observations_.end();
  }

  void erase(std::string_view context) {
    if (auto it = observations_.find(context); it != observations_.end()) observations_.erase(it);
  }

  bool empty() const noexcept { return observations_.empty(); }

  const std::map<std::string, Distribution, std::less<>>& observations() const noexcept {
    return observations_;
  }

  friend bool operator==(const Evidence&, const Evidence&) = default;

 private:
  std::map<std::string, Distribution, std::less<>> observations_;
};

/// Per-context weights, indexed [context][instantiation], with priors
/// substituted for unobserved contexts. Throws EvidenceError.
inline std::vector<std::vector<double>> resolve_weights(const CompiledNetwork& net,
                                                        const Evidence& evidence) {
  std::vector<std::vector<double>> weights;
  weights.reserve(net.context_count());
  for (std::size_t k = 0; k < net.context_count(); ++k) weights.push_back(net.priors(k));

  for (const auto& [ctx_name, dist] : evidence.observations()) {
    const std::string path = "evidence." + ctx_name;
    auto k = net.context_index(ctx_name);
    if (!k) throw EvidenceError("UNKNOWN_CONTEXT", "unknown context '" + ctx_name + "'", path);
    const ContextDef& ctx = net.context(*k);
    std::vector<double> w(ctx.instantiations.size(), 0.0);
    double sum = 0.0;
    for (const auto& [inst, weight] : dist) {
      auto l = ctx.index_of(inst);
      if (!l)
        throw EvidenceError("UNKNOWN_INSTANTIATION",
                            "unknown instantiation '" + inst + "' for context '" + ctx_name + "'",
                            path);
      if (!(weight >= 0.0 && weight <= 1.0))
        throw EvidenceError("INVALID_WEIGHT",
                            "weight " + detail::readable(weight) + " for '" + inst +
                                "' is outside [0, 1]",
                            path + "." + inst);
      w[*l] = weight;
      sum += weight;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance)
      throw EvidenceError("NOT_NORMALIZED",
                          "weights for context '" + ctx_name + "' sum to " +
                              detail::readable(sum) + ", expected 1",
                          path);
    weights[*k] = std::move(w);
  }
  return weights;
}

/// Reads the evidence wire format: a JSON object mapping context name to
/// either an instantiation string (hard) or an object of weights (soft).
inline Evidence evidence_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw EvidenceError("MALFORMED_EVIDENCE", "evidence must be a JSON object", "evidence");
  Evidence evidence;
  for (const auto& [ctx, value] : doc.items()) {
    const std::string path = "evidence." + ctx;
    if (value.is_string()) {
      evidence.observe(ctx, value.get<std::string>());
    } else if (value.is_object()) {
      Distribution dist;
      for (const auto& [inst, weight] : value.items()) {
        if (!weight.is_number())
          throw EvidenceError("MALFORMED_EVIDENCE",
                              "weight for '" + inst + "' must be a number", path + "." + inst);
        dist.emplace(inst, weight.get<double>());
      }
      evidence.observe(ctx, std::move(dist));
    } else {
      throw EvidenceError("MALFORMED_EVIDENCE",
                          "observation for '" + ctx +
                              "' must be an instantiation name or an object of weights",
                          path);
    }
  }
  return evidence;
}

inline Evidence parse_evidence(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw EvidenceError("MALFORMED_EVIDENCE", std::string("invalid JSON: ") + ex.what(),
                        "evidence");
  }
  return evidence_from_json(doc);
}

}  // namespace intentbn
