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


#include "indiv/equilibrium.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "indiv/demand.hpp"
#include "indiv/structure.hpp"

namespace indiv {

namespace {

constexpr double kMaxAllocations = 1e7;
constexpr std::size_t kMaxIntegerPoints = 4096;

std::vector<Rational> to_rationals(const Bundle& x) {
  std::vector<Rational> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i];
  return v;
}

void check_allocation_count(std::span<const std::vector<Bundle>> sets) {
  double prod = 1;
  for (const auto& s : sets) prod *= static_cast<double>(s.size());
  if (prod > kMaxAllocations) {
    std::ostringstream os;
    os << "product of feasible set sizes is " << prod << ", above the limit of "
       << kMaxAllocations;
    throw Error(ErrorCode::kEnumerationTooLarge, os.str());
  }
}

std::vector<std::vector<Bundle>> feasible_sets_of(const TuEconomy& h) {
  std::vector<std::vector<Bundle>> sets;
  for (const auto& v : h.valuations) sets.push_back(v.bundles());
  return sets;
}

std::vector<std::vector<Bundle>> feasible_sets_of(const Economy& e) {
  std::vector<std::vector<Bundle>> sets;
  for (const auto& a : e.agents) sets.push_back(a.utility.feasible_set());
  return sets;
}

void check_tu(const TuEconomy& h) {
  if (h.valuations.empty())
    throw Error(ErrorCode::kInvalidArgument, "economy has no agents");
  for (const auto& v : h.valuations)
    if (v.goods() != h.total_endowment.size())
      throw Error(ErrorCode::kDimensionMismatch,
                  "valuation dimension differs from the total endowment");
}

// best[k][z]: maximal value of agents k.. whose bundles sum to z.
using ValueTable = std::vector<std::map<Bundle, Rational>>;

ValueTable value_table(const TuEconomy& h, const Bundle& total) {
  const std::size_t n = h.valuations.size();
  ValueTable best(n + 1);
  best[n].emplace(Bundle(total.size()), Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    for (const auto& [x, v] : h.valuations[k].entries()) {
      for (const auto& [z, rest] : best[k + 1]) {
        Rational val = v + rest;
        auto [it, inserted] = best[k].emplace(x + z, val);
        if (!inserted && it->second < val) it->second = val;
      }
    }
  }
  if (!best[0].contains(total))
    throw Error(ErrorCode::kNoEndowmentAllocation,
                "no allocation of feasible bundles sums to (" +
                    format_bundle(total) + ")");
  return best;
}

std::vector<Allocation> optimal_allocations(const TuEconomy& h,
                                            const Bundle& total) {
  auto sets = feasible_sets_of(h);
  check_allocation_count(sets);
  auto best = value_table(h, total);
  std::vector<Allocation> out;
  Allocation cur;
  std::function<void(std::size_t, const Bundle&)> rec =
      [&](std::size_t k, const Bundle& z) {
        if (k == h.valuations.size()) {
          out.push_back(cur);
          return;
        }
        const Rational& target = best[k].at(z);
        for (const auto& [x, v] : h.valuations[k].entries()) {
          auto it = best[k + 1].find(z - x);
          if (it == best[k + 1].end() || v + it->second != target) continue;
          cur.push_back(x);
          rec(k + 1, z - x);
          cur.pop_back();
        }
      };
  rec(0, total);
  return out;
}

LinearSystem support_system(const TuEconomy& h, const Allocation& alloc) {
  const std::size_t n = h.num_goods();
  if (alloc.size() != h.num_agents())
    throw Error(ErrorCode::kDimensionMismatch,
                "allocation lists " + std::to_string(alloc.size()) +
                    " bundles for " + std::to_string(h.num_agents()) +
                    " agents");
  LinearSystem sys(n);
  for (std::size_t j = 0; j < alloc.size(); ++j) {
    const Valuation& v = h.valuations[j];
    const Bundle& x = alloc[j];
    const Rational& vx = v.value(x);
    std::string name =
        j < h.names.size() ? h.names[j] : "agent" + std::to_string(j + 1);
    for (const auto& [xp, vxp] : v.entries()) {
      if (xp == x) continue;
      sys.add(to_rationals(x - xp), Relation::kLessEqual, vx - vxp,
              name + ": (" + format_bundle(x) + ") over (" + format_bundle(xp) +
                  ")");
    }
  }
  return sys;
}

// Bounding box of the first `vars` variables, or nullopt if unbounded.
std::optional<std::vector<std::pair<Rational, Rational>>> bounding_box(
    const LinearSystem& sys, std::size_t vars) {
  std::vector<std::pair<Rational, Rational>> box;
  std::vector<Rational> obj(sys.variables(), Rational(0));
  for (std::size_t i = 0; i < vars; ++i) {
    obj[i] = 1;
    auto lo = minimize(sys, obj);
    auto hi = maximize(sys, obj);
    obj[i] = 0;
    if (lo.status != LpStatus::kOptimal || hi.status != LpStatus::kOptimal)
      return std::nullopt;
    box.emplace_back(lo.value, hi.value);
  }
  return box;
}

Rational ceil_of(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  boost::multiprecision::mpz_int num = numerator(r), den = denominator(r);
  boost::multiprecision::mpz_int q = num / den;
  if (q * den < num) q += 1;
  return Rational(q);
}

Rational floor_of(const Rational& r) { return -ceil_of(-r); }

// First integer point of the box (lexicographic) accepted by `accept`.
std::optional<PriceVector> integer_point(
    const std::vector<std::pair<Rational, Rational>>& box,
    const std::function<bool(const PriceVector&)>& accept) {
  std::vector<Rational> lo, hi;
  double count = 1;
  for (const auto& [a, b] : box) {
    lo.push_back(ceil_of(a));
    hi.push_back(floor_of(b));
    if (hi.back() < lo.back()) return std::nullopt;
    count *= (hi.back() - lo.back() + 1).convert_to<double>();
  }
  if (count > static_cast<double>(kMaxIntegerPoints)) return std::nullopt;
  PriceVector p = lo;
  while (true) {
    if (accept(p)) return p;
    std::size_t i = p.size();
    while (i-- > 0) {
      if (p[i] < hi[i]) {
        p[i] += 1;
        break;
      }
      p[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) return std::nullopt;
  }
}

PriceVector simplest_support(const LinearSystem& sys, PriceVector fallback) {
  if (sys.variables() == 0) return fallback;
  if (auto box = bounding_box(sys, sys.variables())) {
    auto p = integer_point(*box, [&](const PriceVector& q) {
      return satisfies(sys, q);
    });
    if (p) return *p;
  }
  return fallback;
}

bool contains_sorted(const std::vector<Bundle>& v, const Bundle& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

bool all_kind(const Economy& e, bool (UtilityModel::*pred)() const) {
  return std::all_of(e.agents.begin(), e.agents.end(),
                     [&](const Agent& a) { return (a.utility.*pred)(); });
}

std::vector<Rational> money_after(const EndowmentAllocation& endow,
                                  std::span<const Rational> p,
                                  const Allocation& alloc) {
  std::vector<Rational> m;
  for (std::size_t j = 0; j < alloc.size(); ++j)
    m.push_back(endow[j].money - dot(p, alloc[j] - endow[j].goods));
  return m;
}

}  // namespace

std::vector<Allocation> feasible_allocations(
    std::span<const std::vector<Bundle>> feasible_sets, const Bundle& total) {
  check_allocation_count(feasible_sets);
  const std::size_t n = feasible_sets.size();
  std::vector<std::set<Bundle>> suffix(n + 1);
  suffix[n].insert(Bundle(total.size()));
  for (std::size_t k = n; k-- > 0;)
    for (const auto& x : feasible_sets[k])
      for (const auto& z : suffix[k + 1]) suffix[k].insert(x + z);
  std::vector<Allocation> out;
  Allocation cur;
  std::function<void(std::size_t, const Bundle&)> rec =
      [&](std::size_t k, const Bundle& rest) {
        if (k == n) {
          out.push_back(cur);
          return;
        }
        for (const auto& x : feasible_sets[k]) {
          if (!suffix[k + 1].contains(rest - x)) continue;
          cur.push_back(x);
          rec(k + 1, rest - x);
          cur.pop_back();
        }
      };
  if (n > 0 && suffix[0].contains(total)) rec(0, total);
  return out;
}

std::vector<Allocation> welfare_max_allocations(const TuEconomy& h) {
  check_tu(h);
  return optimal_allocations(h, h.total_endowment);
}

Rational total_value(const TuEconomy& h, const Allocation& a) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += h.valuations[j].value(a[j]);
  return s;
}

SupportResult supporting_prices(const TuEconomy& h, const Allocation& alloc) {
  SupportResult res{support_system(h, alloc), std::nullopt, std::nullopt};
  auto s = max_slack(res.system);
  if (s.certificate) {
    res.certificate = std::move(s.certificate);
    return res;
  }
  res.price = simplest_support(res.system, std::move(s.point));
  return res;
}

CEOutcome solve_tu_ce(const TuEconomy& h) {
  auto allocs = welfare_max_allocations(h);
  const Allocation& a = allocs.front();
  auto sup = supporting_prices(h, a);
  if (!sup.price)
    return NotFound{*sup.certificate, std::move(sup.system), a};
  std::vector<Rational> money;
  for (const auto& x : a) money.push_back(-dot(*sup.price, x));
  return Found{*sup.price, a, std::move(money)};
}

bool is_pseudo_equilibrium(const TuEconomy& h, std::span<const Rational> p) {
  check_tu(h);
  if (p.size() != h.num_goods())
    throw Error(ErrorCode::kDimensionMismatch, "price length mismatch");
  std::vector<std::vector<Bundle>> demands;
  for (const auto& v : h.valuations) demands.push_back(quasilinear_demand(v, p));
  auto agg = aggregate_bundles(demands);
  LinearSystem sys(agg.size());
  for (std::size_t i = 0; i < agg.size(); ++i) {
    std::vector<Rational> row(agg.size(), Rational(0));
    row[i] = -1;
    sys.add(std::move(row), Relation::kLessEqual, 0);
  }
  sys.add(std::vector<Rational>(agg.size(), Rational(1)), Relation::kEqual, 1);
  for (std::size_t g = 0; g < h.num_goods(); ++g) {
    std::vector<Rational> row(agg.size());
    for (std::size_t i = 0; i < agg.size(); ++i) row[i] = agg[i][g];
    sys.add(std::move(row), Relation::kEqual, h.total_endowment[g]);
  }
  return find_point(sys).feasible();
}

bool verify_ce(const Economy& e, const EndowmentAllocation& endow,
               std::span<const Rational> p, const Allocation& alloc) {
  if (endow.size() != e.agents.size() || alloc.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "endowment and allocation must list every agent");
  if (p.size() != e.num_goods())
    throw Error(ErrorCode::kDimensionMismatch,
                "price vector has " + std::to_string(p.size()) +
                    " entries for " + std::to_string(e.num_goods()) + " goods");
  for (const auto& x : alloc)
    if (x.size() != e.num_goods())
      throw Error(ErrorCode::kDimensionMismatch, "allocation bundle length");
  if (sum(alloc) != e.total_endowment) return false;
  for (std::size_t j = 0; j < alloc.size(); ++j) {
    const Agent& a = e.agents[j];
    if (!a.utility.base().contains(alloc[j])) return false;
    if (!contains_sorted(marshallian_demand(a, p, endow[j]), alloc[j]))
      return false;
  }
  return true;
}

namespace {

std::vector<UtilityLevel> levels_of(const Economy& e,
                                    std::span<const ConsumptionBundle> profile) {
  if (profile.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "profile lists " + std::to_string(profile.size()) +
                    " consumptions for " + std::to_string(e.agents.size()) +
                    " agents");
  std::vector<UtilityLevel> u;
  for (std::size_t j = 0; j < profile.size(); ++j)
    u.push_back(level_of(e.agents[j], profile[j]));
  return u;
}

Allocation goods_of(std::span<const ConsumptionBundle> profile) {
  Allocation a;
  for (const auto& c : profile) a.push_back(c.goods);
  return a;
}

}  // namespace

bool is_pareto_efficient(const Economy& e,
                         std::span<const ConsumptionBundle> profile) {
  auto u = levels_of(e, profile);
  auto h = build_hicksian_economy(e, u);
  Allocation goods = goods_of(profile);
  h.total_endowment = sum(goods);
  auto best = value_table(h, h.total_endowment);
  Rational money = 0;
  for (const auto& c : profile) money += c.money;
  // Reaching every level costs at least the money already held.
  return best[0].at(h.total_endowment) <= -money;
}

std::optional<PriceVector> support_pareto(
    const Economy& e, std::span<const ConsumptionBundle> profile) {
  if (!is_pareto_efficient(e, profile))
    throw Error(ErrorCode::kNotParetoEfficient,
                "the consumption profile is Pareto-dominated");
  auto u = levels_of(e, profile);
  auto h = build_hicksian_economy(e, u);
  Allocation goods = goods_of(profile);
  h.total_endowment = sum(goods);
  LinearSystem sys = support_system(h, goods);
  auto s = max_slack(sys);
  if (s.certificate) return std::nullopt;
  Economy local = e;
  local.total_endowment = h.total_endowment;
  EndowmentAllocation endow(profile.begin(), profile.end());
  auto accept = [&](const PriceVector& p) {
    return verify_ce(local, endow, p, goods);
  };
  if (sys.variables() > 0)
    if (auto box = bounding_box(sys, sys.variables()))
      if (auto p = integer_point(*box, accept)) return p;
  if (accept(s.point)) return s.point;
  return std::nullopt;
}

std::optional<NetExpenditureBox> net_expenditure_box(
    const Economy& e, const EndowmentAllocation& endow,
    std::span<const UtilityLevel> levels) {
  validate_endowment(e, endow);
  auto h = build_hicksian_economy(e, levels);
  auto allocs = welfare_max_allocations(h);
  NetExpenditureBox out{allocs.front(), support_system(h, allocs.front()), {}};
  if (!find_point(out.prices).feasible()) return std::nullopt;
  const std::size_t n = e.num_goods();
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    const Bundle& x = out.allocation[j];
    Rational base = -h.valuations[j].value(x) - endow[j].money;
    Interval box;
    if (n == 0) {
      box.lo = box.hi = base;
    } else {
      auto c = to_rationals(x - endow[j].goods);
      auto lo = minimize(out.prices, c);
      auto hi = maximize(out.prices, c);
      if (lo.status == LpStatus::kOptimal) box.lo = base + lo.value;
      if (hi.status == LpStatus::kOptimal) box.hi = base + hi.value;
    }
    out.boxes.push_back(std::move(box));
  }
  return out;
}

namespace {

// s(x, u) = slope * u + offset on the level range [lo, hi].
struct Piece {
  std::map<Bundle, std::pair<Rational, Rational>> affine;
  std::optional<Rational> lo, hi;
  bool lo_strict = false;
};

Piece linear_piece(const Agent& agent, std::size_t cell) {
  Piece pc;
  Rational u0 = 1, u1 = 2;
  if (const auto* f = std::get_if<TabulatedFamily>(&agent.utility.variant())) {
    u0 = f->levels[cell];
    u1 = f->levels[cell + 1];
    pc.lo = u0;
    pc.hi = u1;
  } else if (agent.utility.is_quasilog()) {
    pc.lo = 0;
    pc.lo_strict = true;
  }
  for (const auto& x : agent.utility.feasible_set()) {
    Rational s0 = compensation(agent, x, {u0});
    Rational s1 = compensation(agent, x, {u1});
    Rational slope = (s1 - s0) / (u1 - u0);
    pc.affine.emplace(x, std::make_pair(slope, s0 - slope * u0));
  }
  return pc;
}

std::size_t cell_count(const Agent& agent) {
  if (const auto* f = std::get_if<TabulatedFamily>(&agent.utility.variant()))
    return f->levels.size() - 1;
  return 1;
}

std::size_t cell_of(const Agent& agent, const Rational& u) {
  const auto* f = std::get_if<TabulatedFamily>(&agent.utility.variant());
  if (!f) return 0;
  std::size_t c = 0;
  while (c + 2 < f->levels.size() && u >= f->levels[c + 1]) ++c;
  return c;
}

// Joint system in (p, u): zero net expenditure and Hicksian optimality of the
// allocation for every agent.
LinearSystem extraction_system(const Economy& e,
                               const EndowmentAllocation& endow,
                               const Allocation& alloc,
                               const std::vector<std::size_t>& cells) {
  const std::size_t n = e.num_goods();
  const std::size_t J = e.agents.size();
  LinearSystem sys(n + J);
  for (std::size_t j = 0; j < J; ++j) {
    const Agent& a = e.agents[j];
    Piece pc = linear_piece(a, cells[j]);
    const Bundle& x = alloc[j];
    const auto& [ax, bx] = pc.affine.at(x);
    auto row = [&]() { return std::vector<Rational>(n + J, Rational(0)); };
    if (pc.lo) {
      auto r = row();
      r[n + j] = -1;
      sys.add(std::move(r), pc.lo_strict ? Relation::kLess : Relation::kLessEqual,
              -*pc.lo, a.name + ": level lower bound");
    }
    if (pc.hi) {
      auto r = row();
      r[n + j] = 1;
      sys.add(std::move(r), Relation::kLessEqual, *pc.hi,
              a.name + ": level upper bound");
    }
    if (auto floor = a.utility.money_floor()) {
      auto r = row();
      r[n + j] = -ax;
      sys.add(std::move(r), Relation::kLess, bx - *floor,
              a.name + ": money above floor");
    }
    {
      auto r = row();
      Bundle d = x - endow[j].goods;
      for (std::size_t i = 0; i < n; ++i) r[i] = d[i];
      r[n + j] = ax;
      sys.add(std::move(r), Relation::kEqual, endow[j].money - bx,
              a.name + ": budget");
    }
    for (const auto& [xp, ab] : pc.affine) {
      if (xp == x) continue;
      auto r = row();
      Bundle d = x - xp;
      for (std::size_t i = 0; i < n; ++i) r[i] = d[i];
      r[n + j] = ax - ab.first;
      sys.add(std::move(r), Relation::kLessEqual, ab.second - bx,
              a.name + ": (" + format_bundle(x) + ") over (" +
                  format_bundle(xp) + ")");
    }
  }
  return sys;
}

std::optional<Found> extract(const Economy& e, const EndowmentAllocation& endow,
                             const Allocation& alloc,
                             const std::vector<std::size_t>& cells) {
  LinearSystem sys = extraction_system(e, endow, alloc, cells);
  auto pt = find_point(sys);
  if (!pt.feasible()) return std::nullopt;
  const std::size_t n = e.num_goods();
  auto accept = [&](const PriceVector& p) {
    return verify_ce(e, endow, p, alloc);
  };
  std::optional<PriceVector> price;
  if (n > 0)
    if (auto box = bounding_box(sys, n)) price = integer_point(*box, accept);
  if (!price) {
    PriceVector p(pt.point->begin(), pt.point->begin() + n);
    if (!accept(p))
      throw std::logic_error("extracted price fails equilibrium verification");
    price = std::move(p);
  }
  return Found{*price, alloc, money_after(endow, *price, alloc)};
}

Rational clamp_level(const Agent& a, Rational u) {
  if (const auto* f = std::get_if<TabulatedFamily>(&a.utility.variant())) {
    if (u < f->levels.front()) return f->levels.front();
    if (u > f->levels.back()) return f->levels.back();
  }
  return u;
}

}  // namespace

CEOutcome solve_income_ce(const Economy& e, const EndowmentAllocation& endow,
                          const IncomeSearchParams& params,
                          IncomeSearchState* trace) {
  validate_economy(e);
  validate_endowment(e, endow);
  const std::size_t J = e.agents.size();

  if (all_kind(e, &UtilityModel::is_quasilinear)) {
    auto out = solve_tu_ce(as_tu_economy(e));
    if (auto* f = std::get_if<Found>(&out))
      f->money = money_after(endow, f->price, f->allocation);
    return out;
  }

  IncomeSearchState state;
  for (std::size_t j = 0; j < J; ++j) {
    const Agent& a = e.agents[j];
    Rational umin = clamp_level(a, utility_key(a, endow[j]));
    Rational cheapest = endow[j].money;
    for (const auto& x : a.utility.feasible_set())
      cheapest = std::min(cheapest, compensation(a, x, {umin}));
    state.u_min.push_back(umin);
    state.k.push_back(endow[j].money - cheapest);
  }
  state.k_total = 1;
  for (const auto& k : state.k) state.k_total += k;
  for (std::size_t j = 0; j < J; ++j) {
    const Agent& a = e.agents[j];
    Rational umax = state.u_min[j];
    for (const auto& x : a.utility.feasible_set())
      umax = std::max(umax, utility_key(a, {endow[j].money + state.k_total, x}));
    state.u_max.push_back(clamp_level(a, umax));
  }

  std::set<std::pair<Allocation, std::vector<std::size_t>>> tried;
  std::size_t candidates = 0;
  auto attempt = [&](const Allocation& alloc,
                     const std::vector<std::size_t>& cells) -> std::optional<Found> {
    if (candidates >= params.max_candidates) return std::nullopt;
    if (!tried.emplace(alloc, cells).second) return std::nullopt;
    ++candidates;
    return extract(e, endow, alloc, cells);
  };
  auto cells_at = [&](const std::vector<UtilityLevel>& u) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j < J; ++j) c.push_back(cell_of(e.agents[j], u[j].value));
    return c;
  };

  std::vector<Rational> lo = state.u_min, hi = state.u_max;
  std::vector<UtilityLevel> u;
  for (const auto& v : state.u_min) u.push_back({v});
  std::size_t it = 0;
  for (; it < params.max_iter; ++it) {
    auto box = net_expenditure_box(e, endow, u);
    state.levels.push_back(u);
    state.boxes.push_back(box ? box->boxes : std::vector<Interval>{});
    auto h = build_hicksian_economy(e, u);
    for (const auto& alloc : welfare_max_allocations(h))
      if (auto f = attempt(alloc, cells_at(u))) {
        if (trace) *trace = std::move(state);
        return *f;
      }
    if (!box) break;
    bool moved = false;
    for (std::size_t j = 0; j < J; ++j) {
      const Interval& b = box->boxes[j];
      if (b.lo && *b.lo > 0) {
        hi[j] = u[j].value;
      } else if (b.hi && *b.hi < 0) {
        lo[j] = u[j].value;
      } else {
        continue;
      }
      Rational width = state.u_max[j] - state.u_min[j];
      if (hi[j] - lo[j] <= params.epsilon * width) continue;
      u[j].value = (lo[j] + hi[j]) / 2;
      moved = true;
    }
    if (!moved) break;
  }
  if (trace) *trace = state;

  // Every remaining allocation, best welfare at the final levels first.
  auto h = build_hicksian_economy(e, u);
  auto all = feasible_allocations(feasible_sets_of(e), e.total_endowment);
  std::vector<std::pair<Rational, std::size_t>> order;
  for (std::size_t i = 0; i < all.size(); ++i)
    order.emplace_back(-total_value(h, all[i]), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<std::size_t>> cell_sets{cells_at(u)};
  {
    std::vector<std::size_t> c(J, 0);
    double combos = 1;
    for (const auto& a : e.agents) combos *= static_cast<double>(cell_count(a));
    if (combos > 1 && combos <= 64) {
      while (true) {
        if (c != cell_sets.front()) cell_sets.push_back(c);
        std::size_t j = 0;
        while (j < J && ++c[j] == cell_count(e.agents[j])) c[j++] = 0;
        if (j == J) break;
      }
    }
  }
  for (const auto& cells : cell_sets)
    for (const auto& [w, i] : order)
      if (auto f = attempt(all[i], cells)) return *f;

  std::ostringstream os;
  os << "no equilibrium found after " << it << " bisection steps and "
     << candidates << " candidate allocations";
  if (candidates >= params.max_candidates) os << " (candidate limit reached)";
  return NotFound{SearchExhausted{os.str(), it, candidates}, std::nullopt,
                  std::nullopt};
}

LinearSystem marshallian_ce_system(const Economy& e,
                                   const EndowmentAllocation& endow,
                                   const Allocation& alloc) {
  const std::size_t n = e.num_goods();
  if (alloc.size() != e.agents.size() || endow.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "endowment and allocation must list every agent");
  LinearSystem sys(n);
  for (std::size_t j = 0; j < alloc.size(); ++j) {
    const Agent& a = e.agents[j];
    const Bundle& x = alloc[j];
    const Bundle& w = endow[j].goods;
    const Rational& m = endow[j].money;
    if (const auto* q = std::get_if<Quasilinear>(&a.utility.variant())) {
      const Valuation& v = q->valuation;
      for (const auto& [xp, vxp] : v.entries()) {
        if (xp == x) continue;
        sys.add(to_rationals(x - xp), Relation::kLessEqual, v.value(x) - vxp,
                a.name + ": (" + format_bundle(x) + ") over (" +
                    format_bundle(xp) + ")");
      }
    } else if (const auto* g = std::get_if<Quasilog>(&a.utility.variant())) {
      const Valuation& q = g->quasivaluation;
      Rational cx = -q.value(x);
      sys.add(to_rationals(x - w), Relation::kLess, m, a.name + ": budget");
      for (const auto& [xp, qxp] : q.entries()) {
        if (xp == x) continue;
        Rational cxp = -qxp;
        std::vector<Rational> r(n);
        for (std::size_t i = 0; i < n; ++i)
          r[i] = cxp * (x[i] - w[i]) - cx * (xp[i] - w[i]);
        sys.add(std::move(r), Relation::kLessEqual, m * (cxp - cx),
                a.name + ": (" + format_bundle(x) + ") over (" +
                    format_bundle(xp) + ")");
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent '" + a.name +
                      "' is tabulated; the exact decision needs closed-form "
                      "utility");
    }
  }
  return sys;
}

std::optional<Found> decide_marshallian_ce(const Economy& e,
                                           const EndowmentAllocation& endow) {
  validate_economy(e);
  validate_endowment(e, endow);
  for (const auto& alloc :
       feasible_allocations(feasible_sets_of(e), e.total_endowment)) {
    auto pt = find_point(marshallian_ce_system(e, endow, alloc));
    if (!pt.feasible()) continue;
    if (!verify_ce(e, endow, *pt.point, alloc))
      throw std::logic_error("decided price fails equilibrium verification");
    return Found{*pt.point, alloc, money_after(endow, *pt.point, alloc)};
  }
  return std::nullopt;
}

DualityReport duality_probe(
    const Economy& e, std::span<const std::vector<UtilityLevel>> level_grid,
    std::span<const EndowmentAllocation> endowment_samples,
    const IncomeSearchParams& params) {
  validate_economy(e);
  const std::size_t J = e.agents.size();
  if (level_grid.size() != J)
    throw Error(ErrorCode::kDimensionMismatch,
                "level grid must list levels for every agent");
  DualityReport rep;
  rep.exact = std::all_of(e.agents.begin(), e.agents.end(), [](const Agent& a) {
    return !a.utility.is_tabulated();
  });

  std::vector<EndowmentAllocation> witnesses;
  std::vector<std::size_t> idx(J, 0);
  bool any_empty = std::any_of(level_grid.begin(), level_grid.end(),
                               [](const auto& g) { return g.empty(); });
  while (!any_empty) {
    HicksianProbe probe;
    for (std::size_t j = 0; j < J; ++j) probe.levels.push_back(level_grid[j][idx[j]]);
    auto h = build_hicksian_economy(e, probe.levels);
    auto out = solve_tu_ce(h);
    if (is_found(out)) {
      probe.found = true;
    } else {
      auto& nf = std::get<NotFound>(out);
      probe.certificate = std::get<FarkasCertificate>(nf.reason);
      EndowmentAllocation w;
      for (std::size_t j = 0; j < J; ++j) {
        const Bundle& x = (*nf.allocation)[j];
        w.push_back({-h.valuations[j].value(x), x});
      }
      probe.witness_endowment = w;
      witnesses.push_back(std::move(w));
    }
    rep.hicksian.push_back(std::move(probe));
    std::size_t j = 0;
    while (j < J && ++idx[j] == level_grid[j].size()) idx[j++] = 0;
    if (j == J) break;
  }

  auto run = [&](const EndowmentAllocation& w) {
    MarshallianProbe mp{w, false, false, std::nullopt};
    auto out = solve_income_ce(e, w, params);
    mp.found = is_found(out);
    mp.exhausted = !mp.found;
    if (rep.exact) mp.exists = decide_marshallian_ce(e, w).has_value();
    return mp;
  };
  for (const auto& w : endowment_samples) rep.marshallian.push_back(run(w));
  const std::size_t sampled = rep.marshallian.size();
  for (const auto& w : witnesses) rep.marshallian.push_back(run(w));

  bool hicksian_everywhere = std::all_of(
      rep.hicksian.begin(), rep.hicksian.end(),
      [](const HicksianProbe& p) { return p.found; });
  for (std::size_t i = 0; i < rep.marshallian.size(); ++i) {
    const auto& mp = rep.marshallian[i];
    std::string tag = i < sampled ? "sample " + std::to_string(i)
                                  : "witness " + std::to_string(i - sampled);
    if (mp.exists && *mp.exists && !mp.found)
      rep.violations.push_back(tag + ": search missed an existing equilibrium");
    if (mp.exists && !*mp.exists && mp.found)
      rep.violations.push_back(tag + ": found equilibrium contradicts decision");
    if (i >= sampled && (mp.found || (mp.exists && *mp.exists)))
      rep.violations.push_back(
          tag + ": Hicksian economy has no equilibrium but the market does");
    if (i < sampled && hicksian_everywhere && mp.exists && !*mp.exists)
      rep.violations.push_back(
          tag + ": Hicksian equilibria on the whole grid but none here");
  }
  return rep;
}

namespace {

std::vector<std::string> good_names(std::size_t n) {
  std::vector<std::string> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back("g" + std::to_string(i + 1));
  return g;
}

}  // namespace

Counterexample counterexample_substitutes(const Valuation& vj) {
  auto viol = find_substitutes_violation(vj);
  if (!viol)
    throw Error(ErrorCode::kIsActuallySubstitutes,
                "valuation satisfies the substitutes condition");
  const std::size_t n = vj.goods();
  Bundle from = viol->from, to = viol->to;
  Bundle g = to - from;
  auto count = [&](int sign) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (sign > 0 ? g[i] > 0 : g[i] < 0);
    return c;
  };
  if (count(-1) < 2) {
    std::swap(from, to);
    g = -g;
  }
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < n && neg.size() < 2; ++i)
    if (g[i] < 0) neg.push_back(i);
  const std::size_t i1 = neg[0], i2 = neg[1];

  std::vector<Bundle> dom;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bundle x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    if (x[i1] + x[i2] <= 1) dom.push_back(x);
  }
  PriceVector t = viol->price;
  t[i1] += 1;
  t[i2] += 1;
  Bundle y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 1;

  Counterexample ce;
  ce.economy = TuEconomy{good_names(n), y, {"j", "k"},
                         {vj, linear_on_domain(dom, t)}};
  ce.endowment = {from, y - from};
  ce.price = viol->price;
  auto out = solve_tu_ce(ce.economy);
  if (is_found(out))
    throw std::logic_error("substitutes counterexample has an equilibrium");
  ce.outcome = std::get<NotFound>(std::move(out));
  return ce;
}

Counterexample counterexample_unimodular(std::span<const Bundle> subset,
                                         std::optional<Bundle> z) {
  if (subset.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty vector subset");
  const std::size_t n = subset[0].size();
  for (const auto& d : subset)
    if (d.size() != n)
      throw Error(ErrorCode::kDimensionMismatch, "vectors differ in length");
  if (rank(subset) != subset.size())
    throw Error(ErrorCode::kInvalidArgument, "vectors are linearly dependent");
  if (minor_gcd(subset) == 1)
    throw Error(ErrorCode::kSubsetUnimodular,
                "maximal minors have gcd 1; no interior lattice point exists");
  if (!z) z = find_interior_lattice_point(subset);
  if (!z || z->size() != n)
    throw Error(ErrorCode::kInvalidArgument, "no interior lattice point given");
  auto coords = coordinates_in(subset, *z);
  if (!coords || std::any_of(coords->begin(), coords->end(), [](const Rational& a) {
        return !(a > 0 && a < 1);
      }))
    throw Error(ErrorCode::kInvalidArgument,
                "(" + format_bundle(*z) + ") is not interior to the parallelepiped");

  const std::size_t last = subset.size() - 1;
  LinearSystem eqs(n);
  for (std::size_t l = 0; l < subset.size(); ++l)
    eqs.add(to_rationals(subset[l]), Relation::kEqual, l == last ? 1 : 0);
  auto s = find_point(eqs);
  if (!s.feasible()) throw std::logic_error("no separating price for d^n");
  PriceVector price = *s.point;

  std::vector<Bundle> xk{Bundle(n), subset[last]};
  std::sort(xk.begin(), xk.end());
  Counterexample ce;
  ce.economy = TuEconomy{good_names(n), *z, {"j", "k"},
                         {linear_on_domain(parallelepiped_points(subset),
                                           PriceVector(n, Rational(0))),
                          linear_on_domain(xk, price)}};
  ce.endowment = {*z, Bundle(n)};
  ce.price = price;
  if (!is_pseudo_equilibrium(ce.economy, price))
    throw std::logic_error("construction price is not a pseudo-equilibrium");
  auto out = solve_tu_ce(ce.economy);
  if (is_found(out))
    throw std::logic_error("unimodularity counterexample has an equilibrium");
  ce.outcome = std::get<NotFound>(std::move(out));
  return ce;
}

}  // namespace indiv
