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


#include "indiv/structure.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "indiv/demand.hpp"
#include "indiv/hicksian.hpp"
#include "indiv/lp.hpp"

namespace indiv {
namespace {

constexpr std::uint64_t kMaxBoxPoints = 2'000'000;

std::vector<Rational> to_rationals(const Bundle& x) {
  std::vector<Rational> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i];
  return r;
}

// Calls f on every integer point of the box [lo, hi].
template <typename F>
void for_each_box_point(const Bundle& lo, const Bundle& hi, F f) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return;
    count *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
    if (count > kMaxBoxPoints)
      throw Error(ErrorCode::kEnumerationTooLarge,
                  "lattice box has more than " + std::to_string(kMaxBoxPoints) +
                      " points");
  }
  Bundle z = lo;
  while (true) {
    f(z);
    std::size_t i = 0;
    while (i < z.size() && z[i] == hi[i]) {
      z[i] = lo[i];
      ++i;
    }
    if (i == z.size()) return;
    ++z[i];
  }
}

// p.(x - y) (rel) V(x) - V(y) for every y != x.
void add_demand_rows(LinearSystem& s, const Valuation& v, const Bundle& x,
                     Relation rel, const std::set<Bundle>& skip = {}) {
  const Rational& vx = v.value(x);
  for (const auto& [y, vy] : v.entries()) {
    if (y == x || skip.contains(y)) continue;
    s.add(to_rationals(x - y), rel, vx - vy);
  }
}

bool differs_by_substitution(const Bundle& g) {
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 0) ++pos;
    if (g[i] < 0) ++neg;
  }
  return pos <= 1 && neg <= 1;
}

// Price at which D(p) = {a, b} exactly.
std::optional<PriceVector> pair_price(const Valuation& v, const Bundle& a,
                                      const Bundle& b) {
  LinearSystem s(v.goods());
  s.add(to_rationals(a - b), Relation::kEqual, v.value(a) - v.value(b));
  add_demand_rows(s, v, a, Relation::kLess, {b});
  auto r = find_point(s);
  if (!r.feasible()) return std::nullopt;
  return std::move(*r.point);
}

void check_unit_bounded(const Valuation& v) {
  for (const auto& x : v.bundles())
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0 && x[i] != 1)
        throw Error(ErrorCode::kNotUnitBounded,
                    "bundle (" + format_bundle(x) + ") is not a 0/1 vector");
}

// Valuations whose structure determines the agent's Hicksian valuations: one
// suffices for quasilinear and quasilogarithmic agents (all Hicksian
// valuations are positive affine images of it).
std::vector<Valuation> hicksian_representatives(
    const Agent& agent, std::span<const UtilityLevel> probes) {
  const auto& m = agent.utility.variant();
  if (const auto* q = std::get_if<Quasilinear>(&m)) return {q->valuation};
  if (const auto* q = std::get_if<Quasilog>(&m)) return {q->quasivaluation};
  const auto& f = std::get<TabulatedFamily>(m);
  std::vector<Valuation> out = f.valuations;
  for (const auto& u : probes) out.push_back(hicksian_valuation(agent, u));
  return out;
}

Integer gcd_int(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Determinant of a square integer matrix by fraction-free elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

DemandTypeVectorSet::DemandTypeVectorSet(std::vector<Bundle> vectors) {
  std::set<Bundle> all;
  for (auto& d : vectors) {
    if (!all.empty() && all.begin()->size() != d.size())
      throw Error(ErrorCode::kDimensionMismatch,
                  "demand type vectors have different lengths");
    if (d.is_zero())
      throw Error(ErrorCode::kInvalidArgument, "zero demand type vector");
    if (primitive(d) != d)
      throw Error(ErrorCode::kInvalidArgument,
                  "demand type vector (" + format_bundle(d) +
                      ") is not primitive");
    all.insert(-d);
    all.insert(std::move(d));
  }
  v_.assign(all.begin(), all.end());
}

bool DemandTypeVectorSet::contains(const Bundle& d) const {
  return std::binary_search(v_.begin(), v_.end(), d);
}

std::vector<Bundle> DemandTypeVectorSet::representatives() const {
  std::vector<Bundle> out;
  for (const auto& d : v_)
    if (-d < d) out.push_back(d);
  return out;
}

bool DemandTypeVectorSet::subset_of(const DemandTypeVectorSet& other) const {
  return std::all_of(v_.begin(), v_.end(),
                     [&](const Bundle& d) { return other.contains(d); });
}

DemandTypeVectorSet strong_substitutes_vectors(std::size_t goods) {
  std::vector<Bundle> out;
  for (std::size_t i = 0; i < goods; ++i) {
    Bundle e(goods);
    e[i] = 1;
    out.push_back(e);
    for (std::size_t k = 0; k < goods; ++k) {
      if (k == i) continue;
      Bundle d(goods);
      d[i] = 1;
      d[k] = -1;
      out.push_back(d);
    }
  }
  return DemandTypeVectorSet(std::move(out));
}

Bundle primitive(const Bundle& d) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < d.size(); ++i) g = std::gcd(g, d[i]);
  if (g == 0) throw Error(ErrorCode::kInvalidArgument, "zero vector");
  Bundle out = d;
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] / g;
  return out;
}

std::vector<Bundle> hull_lattice_points(std::span<const Bundle> points) {
  if (points.empty()) return {};
  const std::size_t n = points[0].size();
  Bundle lo = points[0], hi = points[0];
  for (const auto& x : points)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  std::set<Bundle> given(points.begin(), points.end());
  std::vector<Bundle> out;
  for_each_box_point(lo, hi, [&](const Bundle& z) {
    if (given.contains(z)) {
      out.push_back(z);
      return;
    }
    // z is outside the hull iff some (a, b) has a.x <= b on the points and
    // a.z > b.
    LinearSystem s(n + 1);
    for (const auto& x : given) {
      auto row = to_rationals(x);
      row.push_back(-1);
      s.add(std::move(row), Relation::kLessEqual, 0);
    }
    auto row = to_rationals(-z);
    row.push_back(1);
    s.add(std::move(row), Relation::kLess, 0);
    if (!find_point(s).feasible()) out.push_back(z);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PriceVector> demand_price(const Valuation& v, const Bundle& x) {
  LinearSystem s(v.goods());
  add_demand_rows(s, v, x, Relation::kLessEqual);
  auto r = max_slack(s);
  if (r.slack < 0) return std::nullopt;
  return std::move(r.point);
}

bool is_concave(const Valuation& v) {
  auto xs = v.bundles();
  for (const auto& z : hull_lattice_points(xs)) {
    if (!v.contains(z)) return false;
    if (!demand_price(v, z)) return false;
  }
  return true;
}

std::vector<Bundle> uniquely_demanded(const Valuation& v) {
  std::vector<Bundle> out;
  for (const auto& [x, vx] : v.entries()) {
    LinearSystem s(v.goods());
    add_demand_rows(s, v, x, Relation::kLess);
    if (find_point(s).feasible()) out.push_back(x);
  }
  return out;
}

DemandTypeVectorSet minimal_demand_type(const Valuation& v) {
  auto unique = uniquely_demanded(v);
  std::set<Bundle> uset(unique.begin(), unique.end());
  std::vector<Bundle> dirs;
  for (std::size_t a = 0; a < unique.size(); ++a) {
    for (std::size_t b = a + 1; b < unique.size(); ++b) {
      const Bundle& x = unique[a];
      const Bundle& y = unique[b];
      LinearSystem s(v.goods());
      s.add(to_rationals(x - y), Relation::kEqual, v.value(x) - v.value(y));
      std::set<Bundle> others = uset;
      others.erase(x);
      others.erase(y);
      std::set<Bundle> skip = others;
      skip.insert(y);
      add_demand_rows(s, v, x, Relation::kLessEqual, skip);
      for (const auto& u : others)
        s.add(to_rationals(x - u), Relation::kLess, v.value(x) - v.value(u));
      auto r = find_point(s);
      if (!r.feasible()) continue;
      auto demand = quasilinear_demand(v, *r.point);
      for (const auto& d : demand)
        if (others.contains(d))
          throw std::logic_error("adjacency witness price admits another "
                                 "uniquely demanded bundle");
      dirs.push_back(primitive(y - x));
    }
  }
  return DemandTypeVectorSet(std::move(dirs));
}

bool is_of_demand_type(const Valuation& v, const DemandTypeVectorSet& d) {
  return minimal_demand_type(v).subset_of(d);
}

std::optional<SubstitutesViolation> find_substitutes_violation(
    const Valuation& v) {
  check_unit_bounded(v);
  auto xs = v.bundles();
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      if (differs_by_substitution(xs[b] - xs[a])) continue;
      if (auto p = pair_price(v, xs[a], xs[b]))
        return SubstitutesViolation{std::move(*p), xs[a], xs[b]};
    }
  }
  return std::nullopt;
}

bool is_substitutes(const Valuation& v) {
  return !find_substitutes_violation(v).has_value();
}

bool is_net_substitutes(const Agent& agent,
                        std::span<const UtilityLevel> level_probe) {
  for (const auto& v : hicksian_representatives(agent, level_probe))
    if (!is_substitutes(v)) return false;
  return true;
}

std::optional<GrossSubstitutesViolation> find_gross_substitutes_violation(
    const Agent& agent, const Bundle& goods_endow,
    std::span<const Rational> money_grid,
    std::span<const PriceVector> price_grid, std::span<const Rational> deltas) {
  const std::size_t n = agent.utility.goods();
  for (const auto& m : money_grid) {
    ConsumptionBundle endow{m, goods_endow};
    if (!is_feasible_consumption(agent, endow)) continue;
    for (const auto& p : price_grid) {
      auto before = marshallian_demand(agent, p, endow);
      if (before.size() != 1) continue;
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& delta : deltas) {
          if (!(delta > 0)) continue;
          PriceVector q = p;
          q[i] += delta;
          auto after = marshallian_demand(agent, q, endow);
          if (after.size() != 1) continue;
          for (std::size_t k = 0; k < n; ++k) {
            if (k != i && after[0][k] < before[0][k])
              return GrossSubstitutesViolation{m, p, i, delta, before[0],
                                               after[0]};
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_gross_substitutes_at(const Agent& agent, const Bundle& goods_endow,
                             std::span<const Rational> money_grid,
                             std::span<const PriceVector> price_grid,
                             std::span<const Rational> deltas) {
  return !find_gross_substitutes_violation(agent, goods_endow, money_grid,
                                           price_grid, deltas)
              .has_value();
}

Valuation unpack_units(const Valuation& v) {
  const std::size_t n = v.goods();
  std::vector<std::int64_t> cap(n, 0);
  for (const auto& [x, val] : v.entries()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] < 0)
        throw Error(ErrorCode::kNegativeQuantities,
                    "bundle (" + format_bundle(x) + ") has a negative quantity");
      cap[i] = std::max(cap[i], x[i]);
    }
  }
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    offset[i + 1] = offset[i] + static_cast<std::size_t>(cap[i]);
  // masks[i][c]: all ways to pick c of the cap[i] copies of good i.
  std::vector<std::vector<std::vector<std::uint32_t>>> masks(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cap[i] > 20)
      throw Error(ErrorCode::kEnumerationTooLarge,
                  "too many units of good " + std::to_string(i + 1));
    masks[i].resize(static_cast<std::size_t>(cap[i]) + 1);
    for (std::uint32_t m = 0; m < (1u << cap[i]); ++m)
      masks[i][static_cast<std::size_t>(std::popcount(m))].push_back(m);
  }
  std::map<Bundle, Rational> out;
  for (const auto& [x, val] : v.entries()) {
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      Bundle u(offset[n]);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t m = masks[i][static_cast<std::size_t>(x[i])][pick[i]];
        for (std::int64_t c = 0; c < cap[i]; ++c)
          if (m >> c & 1u) u[offset[i] + static_cast<std::size_t>(c)] = 1;
      }
      out.emplace(std::move(u), val);
      std::size_t i = 0;
      while (i < n &&
             pick[i] + 1 == masks[i][static_cast<std::size_t>(x[i])].size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == n) break;
      ++pick[i];
    }
  }
  return Valuation(std::move(out));
}

bool is_strong_substitutes(const Valuation& v) {
  return is_substitutes(unpack_units(v));
}

bool is_strong_net_substitutes(const Agent& agent,
                               std::span<const UtilityLevel> level_probe) {
  for (const auto& v : hicksian_representatives(agent, level_probe))
    if (!is_strong_substitutes(v)) return false;
  return true;
}

std::size_t rank(std::span<const Bundle> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors[0].size();
  std::vector<std::vector<Rational>> m;
  for (const auto& v : vectors) m.push_back(to_rationals(v));
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

Integer minor_gcd(std::span<const Bundle> columns) {
  const std::size_t k = columns.size();
  if (k == 0) return 1;
  const std::size_t n = columns[0].size();
  if (k > n) return 0;
  Integer g = 0;
  std::vector<std::size_t> rows(k);
  std::iota(rows.begin(), rows.end(), 0);
  while (true) {
    std::vector<std::vector<Integer>> sq(k, std::vector<Integer>(k));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) sq[a][b] = columns[b][rows[a]];
    g = gcd_int(g, bareiss_det(std::move(sq)));
    if (g == 1) return g;
    // Next k-subset of rows in lexicographic order.
    std::size_t i = k;
    while (i > 0 && rows[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
  return g;
}

std::optional<UnimodularityViolation> find_unimodularity_violation(
    const DemandTypeVectorSet& d) {
  auto reps = d.representatives();
  const std::size_t n = d.dimension();
  std::optional<UnimodularityViolation> found;
  std::vector<Bundle> chosen;
  // Depth-first over independent subsets; dependent sets have no
  // independent supersets.
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < reps.size() && !found; ++i) {
      chosen.push_back(reps[i]);
      if (rank(chosen) == chosen.size()) {
        Integer g = minor_gcd(chosen);
        if (g != 1) {
          found = UnimodularityViolation{chosen, g};
        } else if (chosen.size() < n) {
          self(self, i + 1);
        }
      }
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return found;
}

bool is_unimodular(const DemandTypeVectorSet& d) {
  return !find_unimodularity_violation(d).has_value();
}

std::optional<std::vector<Rational>> coordinates_in(std::span<const Bundle> d,
                                                    const Bundle& z) {
  const std::size_t k = d.size();
  const std::size_t n = z.size();
  // Augmented n x (k+1) system.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) m[i][l] = d[l][i];
    m[i][k] = z[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[r], m[piv]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j <= k; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (m[i][k] != 0) return std::nullopt;
  std::vector<Rational> a(k, Rational(0));
  for (std::size_t i = 0; i < r; ++i) a[pivot_col[i]] = m[i][k];
  return a;
}

namespace {

template <typename Accept>
std::vector<Bundle> parallelepiped_scan(std::span<const Bundle> d,
                                        Accept accept, bool first_only) {
  if (d.empty()) return {};
  const std::size_t n = d[0].size();
  Bundle lo(n), hi(n);
  for (const auto& v : d)
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] < 0) lo[i] += v[i];
      else hi[i] += v[i];
    }
  std::vector<Bundle> out;
  bool done = false;
  for_each_box_point(lo, hi, [&](const Bundle& z) {
    if (done) return;
    auto a = coordinates_in(d, z);
    if (!a) return;
    if (std::all_of(a->begin(), a->end(), accept)) {
      out.push_back(z);
      done = first_only;
    }
  });
  return out;
}

}  // namespace

std::optional<Bundle> find_interior_lattice_point(std::span<const Bundle> d) {
  if (rank(d) != d.size())
    throw Error(ErrorCode::kInvalidArgument, "vectors are linearly dependent");
  auto pts = parallelepiped_scan(
      d, [](const Rational& a) { return a > 0 && a < 1; }, true);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

std::vector<Bundle> parallelepiped_points(std::span<const Bundle> d) {
  if (rank(d) != d.size())
    throw Error(ErrorCode::kInvalidArgument, "vectors are linearly dependent");
  return parallelepiped_scan(
      d, [](const Rational& a) { return a >= 0 && a <= 1; }, false);
}

bool is_quasiconcave(const Agent& agent,
                     std::span<const UtilityLevel> level_probe) {
  for (const auto& v : hicksian_representatives(agent, level_probe))
    if (!is_concave(v)) return false;
  return true;
}

Valuation linear_on_domain(std::span<const Bundle> domain,
                           std::span<const Rational> t) {
  std::map<Bundle, Rational> values;
  for (const auto& x : domain) values.emplace(x, dot(t, x));
  return Valuation(std::move(values));
}

}  // namespace indiv
