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


#include "indiv/demand.hpp"

#include <optional>

namespace indiv {
namespace {

void check_prices(std::size_t goods, std::span<const Rational> p) {
  if (p.size() != goods)
    throw Error(ErrorCode::kDimensionMismatch,
                "price vector has " + std::to_string(p.size()) +
                    " entries, expected " + std::to_string(goods));
}

// Collects every bundle attaining the best score. `better(a, b)` is a strict
// order on scores.
template <typename Score, typename Better>
class ArgBest {
 public:
  explicit ArgBest(Better better) : better_(better) {}
  void offer(const Bundle& x, Score s) {
    if (!best_ || better_(s, *best_)) {
      best_ = std::move(s);
      set_.assign(1, x);
    } else if (!better_(*best_, s)) {
      set_.push_back(x);
    }
  }
  const std::optional<Score>& best() const { return best_; }
  DemandSet take() { return std::move(set_); }

 private:
  Better better_;
  std::optional<Score> best_;
  DemandSet set_;
};

template <typename Score, typename Better>
ArgBest<Score, Better> arg_best(Better b) {
  return ArgBest<Score, Better>(b);
}

auto greater = [](const Rational& a, const Rational& b) { return a > b; };
auto less = [](const Rational& a, const Rational& b) { return a < b; };

}  // namespace

DemandSet quasilinear_demand(const Valuation& v, std::span<const Rational> p) {
  check_prices(v.goods(), p);
  auto best = arg_best<Rational>(greater);
  for (const auto& [x, val] : v.entries()) best.offer(x, val - dot(p, x));
  return best.take();
}

namespace {

struct MarshallianSolve {
  DemandSet demand;
  Rational key;
};

MarshallianSolve solve_marshallian(const Agent& agent,
                                   std::span<const Rational> p,
                                   const ConsumptionBundle& endow) {
  check_prices(agent.utility.goods(), p);
  if (!is_feasible_consumption(agent, endow))
    throw Error(ErrorCode::kInfeasibleConsumption,
                "endowment of '" + agent.name + "' is not a feasible consumption");
  const Rational wealth = endow.money + dot(p, endow.goods);
  auto floor = agent.utility.money_floor();
  auto best = arg_best<Rational>(greater);
  for (const auto& x : agent.utility.feasible_set()) {
    Rational money = wealth - dot(p, x);
    if (floor && !(money > *floor)) continue;
    best.offer(x, utility_key(agent, {money, x}));
  }
  MarshallianSolve out;
  out.key = *best.best();
  out.demand = best.take();
  return out;
}

}  // namespace

DemandSet marshallian_demand(const Agent& agent, std::span<const Rational> p,
                             const ConsumptionBundle& endow) {
  return solve_marshallian(agent, p, endow).demand;
}

UtilityLevel indirect_utility(const Agent& agent, std::span<const Rational> p,
                              const ConsumptionBundle& endow) {
  return {solve_marshallian(agent, p, endow).key};
}

DemandSet hicksian_demand(const Agent& agent, std::span<const Rational> p,
                          const UtilityLevel& u) {
  check_prices(agent.utility.goods(), p);
  auto best = arg_best<Rational>(less);
  for (const auto& x : agent.utility.feasible_set())
    best.offer(x, compensation(agent, x, u) + dot(p, x));
  return best.take();
}

Rational expenditure(const Agent& agent, std::span<const Rational> p,
                     const UtilityLevel& u) {
  check_prices(agent.utility.goods(), p);
  std::optional<Rational> best;
  for (const auto& x : agent.utility.feasible_set()) {
    Rational e = compensation(agent, x, u) + dot(p, x);
    if (!best || e < *best) best = e;
  }
  return *best;
}

bool verify_demand_duality(const Agent& agent, std::span<const Rational> p,
                           const ConsumptionBundle& endow) {
  auto m = solve_marshallian(agent, p, endow);
  UtilityLevel u{m.key};
  return m.demand == hicksian_demand(agent, p, u) &&
         expenditure(agent, p, u) == endow.money + dot(p, endow.goods);
}

}  // namespace indiv
