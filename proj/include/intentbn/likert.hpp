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

#include <array>
#include <compare>
#include <string>

#include "intentbn/error.hpp"

namespace intentbn {

/// Influence of a context instantiation on an intention, on a six-point
/// scale 0..5. Out-of-range values cannot be constructed.
class LikertValue {
 public:
  static constexpr int kMin = 0;
  static constexpr int kMax = 5;

  constexpr LikertValue() = default;
  constexpr explicit LikertValue(int value) : value_(value) {
    if (value < kMin || value > kMax) {
      throw Error("LIKERT_OUT_OF_RANGE",
                  "influence value " + std::to_string(value) +
                      " is outside the scale 0..5");
    }
  }

  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(LikertValue, LikertValue) = default;

 private:
  int value_ = 0;
};

/// Fixed probability anchors, indexed by scale value. No interpolation.
inline constexpr std::array<double, 6> kLikertAnchors = {0.00, 0.05, 0.25,
                                                         0.50, 0.75, 0.95};

/// Largest probability any influence (and therefore any conditional) can map to.
inline constexpr double kMaxAnchor = kLikertAnchors.back();

constexpr double likert_to_probability(LikertValue v) noexcept {
  return kLikertAnchors[static_cast<std::size_t>(v.value())];
}

/// Raw-integer overload; throws LIKERT_OUT_OF_RANGE for values outside 0..5.
constexpr double likert_to_probability(int v) {
  return likert_to_probability(LikertValue(v));
}

}  // namespace intentbn
