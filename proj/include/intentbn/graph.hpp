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

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "intentbn/likert.hpp"
#include "intentbn/scenario.hpp"

namespace intentbn {

/// Layout data for drawing the two layers: contexts on one side,
/// intentions on the other, one edge per (context, intention) pair.
struct GraphView {
  struct ContextNode {
    std::string name;
    std::vector<Instantiation> instantiations;
  };
  struct Edge {
    std::string context;
    std::string intention;
    std::vector<std::pair<std::string, LikertValue>> values;  // instantiation order
  };
  struct CombinedEdge {
    std::vector<Condition> conditions;
    std::string intention;
    LikertValue value;
  };

  std::vector<ContextNode> contexts;
  std::vector<std::string> intentions;
  std::vector<Edge> edges;
  std::vector<CombinedEdge> combined_edges;
};

/// Expects a valid config.
inline GraphView graph_view(const ScenarioConfig& config) {
  GraphView view;
  for (const auto& ctx : config.contexts) view.contexts.push_back({ctx.name, ctx.instantiations});
  for (const auto& intention : config.intentions) view.intentions.push_back(intention.name);
  for (const auto& ctx : config.contexts) {
    for (const auto& intention : config.intentions) {
      GraphView::Edge edge{ctx.name, intention.name, {}};
      for (const auto& inst : ctx.instantiations)
        edge.values.emplace_back(inst.name,
                                 intention.value_of(ctx.name, inst.name).value_or(LikertValue{}));
      view.edges.push_back(std::move(edge));
    }
  }
  for (const auto& entry : config.combined)
    view.combined_edges.push_back({entry.conditions, entry.intention, entry.value});
  return view;
}

inline nlohmann::json to_json(const GraphView& view) {
  nlohmann::json contexts = nlohmann::json::array();
  for (const auto& c : view.contexts) {
    nlohmann::json insts = nlohmann::json::array();
    for (const auto& i : c.instantiations) insts.push_back({{"name", i.name}, {"prior", i.prior}});
    contexts.push_back({{"name", c.name}, {"instantiations", insts}});
  }
  nlohmann::json intentions = nlohmann::json::array();
  for (const auto& name : view.intentions) intentions.push_back({{"name", name}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : view.edges) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [inst, v] : e.values)
      values.push_back({{"instantiation", inst},
                        {"value", v.value()},
                        {"probability", likert_to_probability(v)}});
    edges.push_back({{"context", e.context}, {"intention", e.intention}, {"values", values}});
  }
  nlohmann::json combined = nlohmann::json::array();
  for (const auto& e : view.combined_edges) {
    nlohmann::json conds = nlohmann::json::object();
    for (const auto& c : e.conditions) conds[c.context] = c.instantiation;
    combined.push_back({{"conditions", conds},
                        {"intention", e.intention},
                        {"value", e.value.value()},
                        {"probability", likert_to_probability(e.value)}});
  }
  return {{"contexts", contexts},
          {"intentions", intentions},
          {"edges", edges},
          {"combined_edges", combined}};
}

}  // namespace intentbn
