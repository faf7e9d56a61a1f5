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


#ifndef INDIV_EQUILIBRIUM_HPP_
#define INDIV_EQUILIBRIUM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "indiv/core.hpp"
#include "indiv/hicksian.hpp"
#include "indiv/lp.hpp"

namespace indiv {

/// One goods bundle per agent.
using Allocation = std::vector<Bundle>;

struct SearchExhausted {
  std::string details;
  std::size_t iterations = 0;
  std::size_t candidates = 0;
};

struct Found {
  PriceVector price;
  Allocation allocation;
  /// Money held after trade. For TU economies without endowments this is the
  /// payment -p.x^j.
  std::vector<Rational> money;
};

struct NotFound {
  std::variant<FarkasCertificate, SearchExhausted> reason;
  /// The infeasible price system the certificate refers to, and the
  /// allocation it was built from.
  std::optional<LinearSystem> system;
  std::optional<Allocation> allocation;

  bool has_certificate() const {
    return std::holds_alternative<FarkasCertificate>(reason);
  }
};

using CEOutcome = std::variant<Found, NotFound>;

inline bool is_found(const CEOutcome& o) {
  return std::holds_alternative<Found>(o);
}

/// Every allocation summing to y, in lexicographic order.
std::vector<Allocation> feasible_allocations(
    std::span<const std::vector<Bundle>> feasible_sets, const Bundle& total);

/// Allocations summing to y that maximize total value.
std::vector<Allocation> welfare_max_allocations(const TuEconomy& h);
Rational total_value(const TuEconomy& h, const Allocation& a);

struct SupportResult {
  LinearSystem system;
  std::optional<PriceVector> price;
  std::optional<FarkasCertificate> certificate;
};

/// Prices at which every agent demands its part of the allocation.
SupportResult supporting_prices(const TuEconomy& h, const Allocation& alloc);

CEOutcome solve_tu_ce(const TuEconomy& h);

bool is_pseudo_equilibrium(const TuEconomy& h, std::span<const Rational> p);

bool verify_ce(const Economy& e, const EndowmentAllocation& endow,
               std::span<const Rational> p, const Allocation& alloc);

bool is_pareto_efficient(const Economy& e,
                         std::span<const ConsumptionBundle> profile);

/// A price at which each agent's consumption is Marshallian-demanded from
/// itself as endowment. Throws kNotParetoEfficient for inefficient profiles.
std::optional<PriceVector> support_pareto(
    const Economy& e, std::span<const ConsumptionBundle> profile);

/// Closed interval; a missing bound is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool contains(const Rational& v) const {
    return (!lo || *lo <= v) && (!hi || v <= *hi);
  }
};

struct NetExpenditureBox {
  Allocation allocation;
  LinearSystem prices;
  std::vector<Interval> boxes;
};

/// nullopt when the Hicksian economy at these levels has no equilibrium.
std::optional<NetExpenditureBox> net_expenditure_box(
    const Economy& e, const EndowmentAllocation& endow,
    std::span<const UtilityLevel> levels);

struct IncomeSearchParams {
  std::size_t max_iter = 200;
  Rational epsilon = Rational(1, 4294967296LL);
  std::size_t max_candidates = 20000;
};

struct IncomeSearchState {
  std::vector<Rational> u_min;
  std::vector<Rational> u_max;
  std::vector<Rational> k;
  Rational k_total;
  std::vector<std::vector<UtilityLevel>> levels;
  std::vector<std::vector<Interval>> boxes;
};

CEOutcome solve_income_ce(const Economy& e, const EndowmentAllocation& endow,
                          const IncomeSearchParams& params = {},
                          IncomeSearchState* trace = nullptr);

/// Prices making the allocation a market equilibrium from the endowment:
/// budget and Marshallian optimality rows in p. Defined for quasilinear and
/// quasilogarithmic agents.
LinearSystem marshallian_ce_system(const Economy& e,
                                   const EndowmentAllocation& endow,
                                   const Allocation& alloc);

/// Exact decision by enumerating allocations. nullopt means no equilibrium.
std::optional<Found> decide_marshallian_ce(const Economy& e,
                                           const EndowmentAllocation& endow);

struct HicksianProbe {
  std::vector<UtilityLevel> levels;
  bool found = false;
  std::optional<FarkasCertificate> certificate;
  /// Endowment under which the Marshallian economy has no equilibrium if the
  /// Hicksian one has none: each agent keeps its cost-minimizing bundle with
  /// the money reaching its level.
  std::optional<EndowmentAllocation> witness_endowment;
};

struct MarshallianProbe {
  EndowmentAllocation endowment;
  bool found = false;
  bool exhausted = false;
  /// Set when the exact decision procedure applies.
  std::optional<bool> exists;
};

struct DualityReport {
  std::vector<HicksianProbe> hicksian;
  std::vector<MarshallianProbe> marshallian;
  bool exact = false;
  std::vector<std::string> violations;
};

DualityReport duality_probe(
    const Economy& e, std::span<const std::vector<UtilityLevel>> level_grid,
    std::span<const EndowmentAllocation> endowment_samples,
    const IncomeSearchParams& params = {});

struct Counterexample {
  TuEconomy economy;
  Allocation endowment;
  PriceVector price;
  NotFound outcome;
};

Counterexample counterexample_substitutes(const Valuation& vj);

Counterexample counterexample_unimodular(std::span<const Bundle> subset,
                                         std::optional<Bundle> z = {});

}  // namespace indiv

#endif  // INDIV_EQUILIBRIUM_HPP_
