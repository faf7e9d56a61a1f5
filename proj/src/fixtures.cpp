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


#include "indiv/fixtures.hpp"

namespace indiv::fixtures {
namespace {

Valuation unit_demand(Rational none, Rational h1, Rational h2, Rational h3) {
  return Valuation({{{0, 0, 0}, none},
                    {{1, 0, 0}, h1},
                    {{0, 1, 0}, h2},
                    {{0, 0, 1}, h3}});
}

Valuation pair_complements() {
  return Valuation({{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 5}});
}

Valuation unit_demand_k() {
  return Valuation({{{0, 0}, 0}, {{1, 0}, 4}, {{0, 1}, 3}});
}

}  // namespace

Economy housing_market() {
  Economy e;
  e.goods = {"house1", "house2", "house3"};
  e.agents = {
      {"martine", Quasilog{unit_demand(-12, -6, -4, -2)}},
      {"ana", Quasilog{unit_demand(-10, -5, -6, -3)}},
      {"ben", Quasilinear{unit_demand(0, 3, 4, 6)}},
  };
  e.total_endowment = {1, 1, 1};
  e.endowment = EndowmentAllocation{
      {2, {1, 0, 0}}, {4, {0, 1, 0}}, {5, {0, 0, 1}}};
  return e;
}

Economy complements() {
  Economy e;
  e.goods = {"good1", "good2"};
  e.agents = {{"j", Quasilinear{pair_complements()}},
              {"k", Quasilinear{unit_demand_k()}}};
  e.total_endowment = {1, 1};
  return e;
}

Economy income_effects() {
  Economy e;
  e.goods = {"good1", "good2"};
  e.agents = {
      {"j", Quasilog{Valuation(
                {{{0, 0}, -11}, {{0, 1}, -7}, {{1, 0}, -4}, {{1, 1}, -1}})}},
      {"k", Quasilinear{unit_demand_k()}}};
  e.total_endowment = {1, 1};
  e.endowment = EndowmentAllocation{{3, {0, 1}}, {3, {1, 0}}};
  return e;
}

Valuation demand_type_valuation() {
  std::map<Bundle, Rational> values;
  for (std::int64_t a = 0; a <= 3; ++a)
    for (std::int64_t b = 0; b <= 3; ++b)
      if (!((a == 2 && b == 3) || (a == 3 && b == 2) || (a == 3 && b == 3)))
        values.emplace(Bundle{a, b}, a + b);
  return Valuation(std::move(values));
}

Economy demand_type_economy() {
  Economy e;
  e.goods = {"good1", "good2"};
  e.agents = {{"j", Quasilinear{demand_type_valuation()}}};
  e.total_endowment = {0, 0};
  return e;
}

DemandTypeVectorSet five_good_vectors() {
  return DemandTypeVectorSet({{1, 0, 0, 0, 0},
                              {0, 1, 0, 0, 0},
                              {0, 0, 1, 0, 0},
                              {0, 0, 0, 1, 0},
                              {0, 0, 0, 0, 1},
                              {1, -1, 1, 0, 0},
                              {0, 1, -1, 1, 0},
                              {0, 0, 1, -1, 1},
                              {1, 0, 0, 1, -1},
                              {-1, 1, 0, 0, 1}});
}

Economy five_good_economy() {
  const std::vector<Bundle> circular{{1, -1, 1, 0, 0},
                                     {0, 1, -1, 1, 0},
                                     {0, 0, 1, -1, 1},
                                     {1, 0, 0, 1, -1},
                                     {-1, 1, 0, 0, 1}};
  Economy e;
  e.goods = {"good1", "good2", "good3", "good4", "good5"};
  e.total_endowment = Bundle{1, 1, 1, 1, 1};
  EndowmentAllocation endow;
  for (std::size_t l = 0; l < 5; ++l) {
    Bundle unit(5);
    unit[l] = 1;
    std::vector<Bundle> dom{Bundle(5), unit, circular[l], unit + circular[l]};
    std::vector<Rational> t(5);
    for (std::size_t i = 0; i < 5; ++i) t[i] = 1 + (i + l) % 5;
    std::map<Bundle, Rational> values;
    for (const auto& x : dom) values.emplace(x, dot(t, x));
    e.agents.push_back(
        {"c" + std::to_string(l + 1), Quasilinear{Valuation(std::move(values))}});
    endow.push_back({10, unit});
  }
  e.endowment = std::move(endow);
  return e;
}

DemandTypeVectorSet substitutes_and_complements_vectors() {
  return DemandTypeVectorSet({{1, -1}, {1, 1}});
}

std::vector<NamedFixture> fixture_names() {
  return {
      {"ex34", "housing market with income effects"},
      {"ex44a", "complementary goods, no equilibrium"},
      {"ex44b", "income effects with net substitutes, equilibrium at (3,2)"},
      {"ex52", "valuation with demand type +-{(1,0),(0,1),(1,-1)}"},
      {"ex53", "unimodular five-good demand type"},
  };
}

}  // namespace indiv::fixtures
