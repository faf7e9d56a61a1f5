// Copyright 2026 The indiv Authors
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


#ifndef INDIV_HICKSIAN_HPP_
#define INDIV_HICKSIAN_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indiv/core.hpp"

namespace indiv {

/// A transferable-utility economy: one valuation per agent.
struct TuEconomy {
  std::vector<std::string> goods;
  Bundle total_endowment;
  std::vector<std::string> names;
  std::vector<Valuation> valuations;

  std::size_t num_goods() const { return goods.size(); }
  std::size_t num_agents() const { return valuations.size(); }
};

using HicksianEconomy = TuEconomy;

/// V_H(x) = -s(x, u).
Valuation hicksian_valuation(const Agent& agent, const UtilityLevel& u);

HicksianEconomy build_hicksian_economy(const Economy& e,
                                       std::span<const UtilityLevel> levels);

/// The TU economy of an all-quasilinear economy. Throws kInvalidArgument if
/// some agent has income effects.
TuEconomy as_tu_economy(const Economy& e);

/// Wraps a quasilinear TU economy as an Economy (no endowment attached).
Economy to_economy(const TuEconomy& h);

/// Builds a tabulated utility model whose Hicksian valuation at levels[i] is
/// valuations[i].
UtilityModel family_from_grid(std::vector<Rational> levels,
                              std::vector<Valuation> valuations,
                              std::optional<Rational> money_floor);

}  // namespace indiv

#endif  // INDIV_HICKSIAN_HPP_
