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


#ifndef INDIV_DEMAND_HPP_
#define INDIV_DEMAND_HPP_

#include <span>
#include <vector>

#include "indiv/core.hpp"

namespace indiv {

/// A full demand set in lexicographic order; never empty.
using DemandSet = std::vector<Bundle>;

/// argmax V(x) - p.x with all ties.
DemandSet quasilinear_demand(const Valuation& v, std::span<const Rational> p);

/// Utility-maximizing bundles under the budget m - p.(x - w) > floor.
DemandSet marshallian_demand(const Agent& agent, std::span<const Rational> p,
                             const ConsumptionBundle& endow);

UtilityLevel indirect_utility(const Agent& agent, std::span<const Rational> p,
                              const ConsumptionBundle& endow);

/// argmin s(x, u) + p.x with all ties.
DemandSet hicksian_demand(const Agent& agent, std::span<const Rational> p,
                          const UtilityLevel& u);

/// min over x of s(x, u) + p.x.
Rational expenditure(const Agent& agent, std::span<const Rational> p,
                     const UtilityLevel& u);

/// Marshallian demand equals Hicksian demand at the indirect utility, and the
/// expenditure there equals the value of the endowment.
bool verify_demand_duality(const Agent& agent, std::span<const Rational> p,
                           const ConsumptionBundle& endow);

}  // namespace indiv

#endif  // INDIV_DEMAND_HPP_
