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


#ifndef INDIV_FIXTURES_HPP_
#define INDIV_FIXTURES_HPP_

#include <string>
#include <vector>

#include "indiv/core.hpp"
#include "indiv/structure.hpp"

namespace indiv::fixtures {

/// Three houses; every agent wants at most one. Martine has quasilogarithmic
/// utility and owns house 1.
Economy housing_market();

/// Two goods; j values the pair at 5 and single goods at 0, k has unit demand
/// with values 4 and 3. No equilibrium exists.
Economy complements();

/// As above, but j is quasilogarithmic with quasivaluation -11, -7, -4, -1.
/// Carries the endowment ((0,1), 3) for j and ((1,0), 3) for k.
Economy income_effects();

/// V(x) = x1 + x2 on {0..3}^2 without (2,3), (3,2), (3,3).
Valuation demand_type_valuation();
Economy demand_type_economy();

/// Unit vectors of five goods plus five circular substitution vectors.
DemandTypeVectorSet five_good_vectors();

/// Five agents, agent l linear on the parallelogram spanned by e^l and the
/// l-th circular vector, so every valuation is concave of the five-good type.
Economy five_good_economy();

/// The non-unimodular pair +-{(1,-1), (1,1)}.
DemandTypeVectorSet substitutes_and_complements_vectors();

struct NamedFixture {
  std::string name;
  std::string description;
};
std::vector<NamedFixture> fixture_names();

}  // namespace indiv::fixtures

#endif  // INDIV_FIXTURES_HPP_
