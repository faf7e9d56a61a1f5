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


#include "indiv/hicksian.hpp"

namespace indiv {

Valuation hicksian_valuation(const Agent& agent, const UtilityLevel& u) {
  check_level(agent, u);
  std::map<Bundle, Rational> values;
  for (const auto& x : agent.utility.feasible_set())
    values.emplace(x, -compensation(agent, x, u));
  return Valuation(std::move(values));
}

HicksianEconomy build_hicksian_economy(const Economy& e,
                                       std::span<const UtilityLevel> levels) {
  if (levels.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "got " + std::to_string(levels.size()) + " levels for " +
                    std::to_string(e.agents.size()) + " agents");
  HicksianEconomy h{e.goods, e.total_endowment, {}, {}};
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    h.names.push_back(e.agents[j].name);
    h.valuations.push_back(hicksian_valuation(e.agents[j], levels[j]));
  }
  return h;
}

TuEconomy as_tu_economy(const Economy& e) {
  TuEconomy h{e.goods, e.total_endowment, {}, {}};
  for (const auto& a : e.agents) {
    const auto* q = std::get_if<Quasilinear>(&a.utility.variant());
    if (!q)
      throw Error(ErrorCode::kInvalidArgument,
                  "agent '" + a.name + "' is not quasilinear");
    h.names.push_back(a.name);
    h.valuations.push_back(q->valuation);
  }
  return h;
}

Economy to_economy(const TuEconomy& h) {
  Economy e{h.goods, {}, h.total_endowment, std::nullopt};
  for (std::size_t j = 0; j < h.valuations.size(); ++j) {
    std::string name =
        j < h.names.size() ? h.names[j] : "agent" + std::to_string(j + 1);
    e.agents.push_back({std::move(name), Quasilinear{h.valuations[j]}});
  }
  return e;
}

UtilityModel family_from_grid(std::vector<Rational> levels,
                              std::vector<Valuation> valuations,
                              std::optional<Rational> money_floor) {
  return UtilityModel(TabulatedFamily{std::move(levels), std::move(valuations),
                                      std::move(money_floor)});
}

}  // namespace indiv
