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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "intentbn/scenario.hpp"

namespace intentbn {

/// Sizes that determine how many numbers a designer has to provide.
struct ScenarioShape {
  std::vector<std::uint64_t> context_instantiations;    // c_j, one per context
  std::vector<std::uint64_t> intention_instantiations;  // n_i, one per intention (2 here)

  std::size_t contexts() const noexcept { return context_instantiations.size(); }
  std::size_t intentions() const noexcept { return intention_instantiations.size(); }
};

struct RequiredValues {
  std::uint64_t exponential = 0;  // full CPTs filled by hand
  std::uint64_t linear = 0;       // priors plus one influence value per (intention, instantiation)

  double reduction_factor() const noexcept {
    return static_cast<double>(exponential) / static_cast<double>(linear);
  }

  friend bool operator==(const RequiredValues&, const RequiredValues&) = default;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("value count does not fit in 64 bits");
  return a * b;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a)
    throw std::overflow_error("value count does not fit in 64 bits");
  return a + b;
}

}  // namespace detail

/// exponential = sum(c) + i * prod(n) * prod(c)
/// linear      = (i + 1) * sum(c)
inline RequiredValues count_required_values(const ScenarioShape& shape) {
  if (shape.contexts() == 0 || shape.intentions() == 0)
    throw std::invalid_argument("shape needs at least one context and one intention");
  for (auto c : shape.context_instantiations)
    if (c < 2) throw std::invalid_argument("every context needs at least 2 instantiations");
  for (auto n : shape.intention_instantiations)
    if (n < 2) throw std::invalid_argument("every intention needs at least 2 instantiations");

  std::uint64_t sum_c = 0;
  std::uint64_t prod_c = 1;
  for (auto c : shape.context_instantiations) {
    sum_c = detail::checked_add(sum_c, c);
    prod_c = detail::checked_mul(prod_c, c);
  }
  std::uint64_t prod_n = 1;
  for (auto n : shape.intention_instantiations) prod_n = detail::checked_mul(prod_n, n);

  const std::uint64_t i = shape.intentions();
  RequiredValues out;
  out.exponential =
      detail::checked_add(sum_c, detail::checked_mul(detail::checked_mul(i, prod_n), prod_c));
  out.linear = detail::checked_mul(i + 1, sum_c);
  return out;
}

/// Shape of a scenario; intentions are binary.
inline ScenarioShape shape_of(const ScenarioConfig& config) {
  ScenarioShape shape;
  for (const auto& c : config.contexts) shape.context_instantiations.push_back(c.instantiations.size());
  shape.intention_instantiations.assign(config.intentions.size(), 2);
  return shape;
}

}  // namespace intentbn
