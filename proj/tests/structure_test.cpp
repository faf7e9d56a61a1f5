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

#include <random>

#include <gtest/gtest.h>

#include "indiv/demand.hpp"
#include "indiv/fixtures.hpp"
#include "oracles/brute_force.hpp"

namespace indiv {
namespace {

using R = Rational;

Valuation complements_j() {
  return std::get<Quasilinear>(fixtures::complements().agents[0].utility.variant())
      .valuation;
}
Valuation unit_k() {
  return std::get<Quasilinear>(fixtures::complements().agents[1].utility.variant())
      .valuation;
}
Valuation quasivaluation_j() {
  return std::get<Quasilog>(fixtures::income_effects().agents[0].utility.variant())
      .quasivaluation;
}
Valuation one_good(std::initializer_list<int> values) {
  std::map<Bundle, R> m;
  std::int64_t q = 0;
  for (int v : values) m.emplace(Bundle{q++}, v);
  return Valuation(std::move(m));
}
Valuation zero_square() {
  return Valuation({{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 0}});
}

TEST(DemandTypeVectorSetTest, Construction) {
  DemandTypeVectorSet d({{1, -1}, {1, 1}});
  EXPECT_EQ(d.size(), 4u);
  EXPECT_TRUE(d.contains({-1, 1}));
  EXPECT_EQ(d.representatives(), (std::vector<Bundle>{{1, -1}, {1, 1}}));
  EXPECT_THROW(DemandTypeVectorSet({{2, 0}}), Error);
  EXPECT_THROW(DemandTypeVectorSet({{0, 0}}), Error);
  EXPECT_THROW(DemandTypeVectorSet({{1, 0}, {1}}), Error);
  EXPECT_EQ(strong_substitutes_vectors(2),
            DemandTypeVectorSet({{1, 0}, {0, 1}, {1, -1}}));
  EXPECT_EQ(strong_substitutes_vectors(3).size(), 12u);
  EXPECT_EQ(primitive({4, -6, 0}), (Bundle{2, -3, 0}));
}

TEST(ConcavityTest, Examples) {
  EXPECT_TRUE(is_concave(complements_j()));
  EXPECT_FALSE(is_concave(one_good({0, 0, 5})));
  EXPECT_TRUE(is_concave(one_good({0, 3, 5})));
  // A hole in the domain.
  EXPECT_FALSE(is_concave(Valuation({{{0}, 0}, {{2}, 0}})));
  std::vector<Bundle> square{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (const auto& t : {PriceVector{0, 0}, PriceVector{3, -1}, PriceVector{R(1, 2), 7}})
    EXPECT_TRUE(is_concave(linear_on_domain(square, t)));
}

TEST(ConcavityTest, HullLatticePoints) {
  std::vector<Bundle> tri{{0, 0}, {2, 0}, {0, 2}};
  EXPECT_EQ(hull_lattice_points(tri),
            (std::vector<Bundle>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}));
}

TEST(UniquelyDemandedTest, Examples) {
  EXPECT_EQ(uniquely_demanded(fixtures::demand_type_valuation()),
            (std::vector<Bundle>{{0, 0}, {0, 3}, {1, 3}, {3, 0}, {3, 1}}));
  EXPECT_EQ(uniquely_demanded(one_good({7})), (std::vector<Bundle>{{0}}));
  EXPECT_EQ(uniquely_demanded(zero_square()), zero_square().bundles());
}

TEST(MinimalDemandTypeTest, Examples) {
  EXPECT_EQ(minimal_demand_type(fixtures::demand_type_valuation()),
            DemandTypeVectorSet({{1, 0}, {0, 1}, {1, -1}}));
  auto dj = minimal_demand_type(complements_j());
  EXPECT_TRUE(dj.contains({1, 1}));
  EXPECT_TRUE(minimal_demand_type(one_good({7})).empty());
}

TEST(DemandTypeTest, Membership) {
  auto ss = strong_substitutes_vectors(2);
  EXPECT_TRUE(is_of_demand_type(fixtures::demand_type_valuation(), ss));
  EXPECT_FALSE(is_of_demand_type(complements_j(), ss));
  EXPECT_TRUE(is_of_demand_type(complements_j(), minimal_demand_type(complements_j())));
}

TEST(SubstitutesTest, Examples) {
  EXPECT_TRUE(is_substitutes(unit_k()));
  EXPECT_FALSE(is_substitutes(complements_j()));
  EXPECT_TRUE(is_substitutes(quasivaluation_j()));
  auto viol = find_substitutes_violation(complements_j());
  ASSERT_TRUE(viol);
  EXPECT_EQ(viol->to - viol->from, (Bundle{1, 1}));
  EXPECT_EQ(quasilinear_demand(complements_j(), viol->price),
            (DemandSet{viol->from, viol->to}));
  try {
    is_substitutes(one_good({0, 1, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitBounded);
  }
}

TEST(NetSubstitutesTest, Examples) {
  auto ie = fixtures::income_effects();
  EXPECT_TRUE(is_net_substitutes(ie.agents[0]));
  Agent ql{"q", Quasilinear{complements_j()}};
  EXPECT_FALSE(is_net_substitutes(ql));
  auto hm = fixtures::housing_market();
  for (const auto& a : hm.agents) EXPECT_TRUE(is_net_substitutes(a));

  std::vector<R> grid{R(1, 2), 1, 2};
  std::vector<Valuation> vals;
  for (const auto& w : grid) vals.push_back(quasivaluation_j().scaled(w));
  Agent tab{"t", TabulatedFamily{grid, vals, R(0)}};
  std::vector<UtilityLevel> probe{{R(3, 4)}};
  EXPECT_TRUE(is_net_substitutes(tab, probe));
}

std::vector<PriceVector> price_grid(std::size_t goods, int hi, int den) {
  std::vector<PriceVector> out;
  std::vector<int> idx(goods, 0);
  while (true) {
    PriceVector p(goods);
    for (std::size_t i = 0; i < goods; ++i) p[i] = R(idx[i], den);
    out.push_back(p);
    std::size_t i = 0;
    while (i < goods && idx[i] == hi) idx[i++] = 0;
    if (i == goods) return out;
    ++idx[i];
  }
}

TEST(GrossSubstitutesTest, Examples) {
  auto ie = fixtures::income_effects();
  std::vector<R> money{3};
  std::vector<PriceVector> prices{{2, 2}};
  std::vector<R> deltas{2};
  auto viol = find_gross_substitutes_violation(ie.agents[0], {0, 1}, money,
                                               prices, deltas);
  ASSERT_TRUE(viol);
  EXPECT_EQ(viol->before, (Bundle{1, 1}));
  EXPECT_EQ(viol->after, (Bundle{0, 0}));
  EXPECT_FALSE(is_gross_substitutes_at(ie.agents[0], {0, 1}, money, prices, deltas));

  auto grid = price_grid(2, 12, 2);
  std::vector<R> moneys{1, 3, 7, 15};
  std::vector<R> ds{R(1, 2), 1, 3};
  EXPECT_TRUE(is_gross_substitutes_at(ie.agents[1], {1, 0}, moneys, grid, ds));

  auto hm = fixtures::housing_market();
  auto grid3 = price_grid(3, 8, 2);
  EXPECT_TRUE(is_gross_substitutes_at(hm.agents[0], {0, 0, 0}, moneys, grid3, ds));
  EXPECT_FALSE(is_gross_substitutes_at(hm.agents[0], {1, 0, 0}, moneys, grid3, ds));
}

TEST(UnpackUnitsTest, Examples) {
  auto u = unpack_units(one_good({0, 1, 3}));
  EXPECT_EQ(u, Valuation({{{0, 0}, 0}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 3}}));
  EXPECT_EQ(unpack_units(complements_j()), complements_j());
  try {
    unpack_units(Valuation({{{-1}, 0}, {{0}, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeQuantities);
  }
  auto big = unpack_units(fixtures::demand_type_valuation());
  EXPECT_EQ(big.goods(), 6u);
  EXPECT_EQ(big.value({1, 1, 1, 0, 0, 1}), 4);
}

TEST(StrongSubstitutesTest, Examples) {
  EXPECT_FALSE(is_strong_substitutes(one_good({0, 1, 3})));
  EXPECT_TRUE(is_strong_substitutes(one_good({0, 2, 3})));
  EXPECT_TRUE(is_strong_substitutes(unit_k()));
  EXPECT_TRUE(is_strong_substitutes(fixtures::demand_type_valuation()) ==
              (is_concave(fixtures::demand_type_valuation()) &&
               is_of_demand_type(fixtures::demand_type_valuation(),
                                 strong_substitutes_vectors(2))));
  Agent a{"a", Quasilog{one_good({-5, -3, -2})}};
  EXPECT_TRUE(is_strong_net_substitutes(a));
}

TEST(UnimodularTest, Examples) {
  auto bad = fixtures::substitutes_and_complements_vectors();
  EXPECT_FALSE(is_unimodular(bad));
  auto viol = find_unimodularity_violation(bad);
  ASSERT_TRUE(viol);
  EXPECT_EQ(viol->minor_gcd, 2);
  for (std::size_t n = 2; n <= 4; ++n)
    EXPECT_TRUE(is_unimodular(strong_substitutes_vectors(n))) << n;
  EXPECT_TRUE(is_unimodular(fixtures::five_good_vectors()));
  EXPECT_TRUE(is_unimodular(DemandTypeVectorSet{}));
}

TEST(UnimodularTest, ParallelepipedOracle) {
  std::vector<Bundle> pair{{1, -1}, {1, 1}};
  EXPECT_EQ(find_interior_lattice_point(pair), (Bundle{1, 0}));
  std::vector<Bundle> three{{1, 0, 0}, {0, 1, 0}, {1, 1, 2}};
  EXPECT_EQ(minor_gcd(three), 2);
  EXPECT_EQ(find_interior_lattice_point(three), (Bundle{1, 1, 1}));
  std::vector<Bundle> basis{{1, 0}, {1, 1}};
  EXPECT_FALSE(find_interior_lattice_point(basis));
  EXPECT_EQ(parallelepiped_points(pair).size(), 5u);
  EXPECT_EQ(*coordinates_in(pair, {1, 0}), (std::vector<R>{R(1, 2), R(1, 2)}));
  EXPECT_EQ(rank(std::vector<Bundle>{{1, 2}, {2, 4}}), 1u);
}

TEST(UnimodularTest, AgreesWithOracleOnRandomSets) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-2, 2), count(1, 5), dim(1, 4);
  int unimodular = 0;
  for (int t = 0; t < 250; ++t) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    std::vector<Bundle> vs;
    int k = count(rng);
    while (static_cast<int>(vs.size()) < k) {
      Bundle d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = entry(rng);
      if (d.is_zero()) continue;
      vs.push_back(primitive(d));
    }
    DemandTypeVectorSet set(vs);
    bool got = is_unimodular(set);
    unimodular += got;
    EXPECT_EQ(got, oracle::parallelepiped_unimodular(set)) << "trial " << t;
  }
  EXPECT_GT(unimodular, 20);
  EXPECT_LT(unimodular, 230);
}

TEST(QuasiconcaveTest, Examples) {
  EXPECT_TRUE(is_quasiconcave(fixtures::income_effects().agents[0]));
  Agent nc{"n", Quasilinear{one_good({0, 0, 5})}};
  EXPECT_FALSE(is_quasiconcave(nc));
  for (const auto& a : fixtures::housing_market().agents)
    EXPECT_TRUE(is_quasiconcave(a));
}

TEST(LinearOnDomainTest, Examples) {
  auto square = zero_square().bundles();
  auto zero = linear_on_domain(square, PriceVector{0, 0});
  EXPECT_EQ(zero, zero_square());
  EXPECT_EQ(quasilinear_demand(zero, PriceVector{0, 0}), square);

  // {x in {0,1}^3 : x1 + x2 <= 1} with t = p + e1 + e2.
  std::vector<Bundle> dom;
  for (std::int64_t a = 0; a <= 1; ++a)
    for (std::int64_t b = 0; b <= 1; ++b)
      for (std::int64_t c = 0; c <= 1; ++c)
        if (a + b <= 1) dom.push_back({a, b, c});
  PriceVector p{R(5, 2), R(5, 2), 1};
  PriceVector t{p[0] + 1, p[1] + 1, p[2]};
  auto vk = linear_on_domain(dom, t);
  for (const auto& x : quasilinear_demand(vk, p)) EXPECT_EQ(x[0] + x[1], 1);
  EXPECT_EQ(quasilinear_demand(vk, p).size(), 4u);
  EXPECT_TRUE(is_substitutes(vk));
  // Edge directions of the domain.
  EXPECT_EQ(minimal_demand_type(vk),
            DemandTypeVectorSet({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}}));
}

class RandomValuations : public ::testing::Test {
 protected:
  std::mt19937 rng{31337};
  Valuation random_on(const std::vector<Bundle>& dom, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::map<Bundle, R> m;
    for (const auto& x : dom) m.emplace(x, d(rng));
    return Valuation(std::move(m));
  }
  std::vector<Bundle> cube(std::size_t n) {
    std::vector<Bundle> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      Bundle x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = m >> i & 1u;
      out.push_back(x);
    }
    return out;
  }
};

TEST_F(RandomValuations, UniquelyDemandedMatchesFourierMotzkin) {
  for (int t = 0; t < 40; ++t) {
    auto v = random_on(cube(2 + t % 2), -4, 4);
    EXPECT_EQ(uniquely_demanded(v), oracle::fm_uniquely_demanded(v));
  }
}

TEST_F(RandomValuations, UnitDemandSubstitutesIffStrongSubstitutesType) {
  int subs = 0;
  for (int t = 0; t < 80; ++t) {
    auto v = random_on(cube(2 + t % 2), -3, 6);
    bool s = is_substitutes(v);
    subs += s;
    EXPECT_EQ(s, is_of_demand_type(v, strong_substitutes_vectors(v.goods())));
    if (oracle::grid_refutes_substitutes(v, 24, 4)) EXPECT_FALSE(s);
  }
  EXPECT_GT(subs, 5);
  EXPECT_LT(subs, 75);
}

TEST_F(RandomValuations, StrongSubstitutesIffConcaveOfStrongType) {
  std::vector<Bundle> box;
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t b = 0; b <= 1; ++b) box.push_back({a, b});
  int strong = 0;
  for (int t = 0; t < 60; ++t) {
    auto v = random_on(box, -2, 6);
    bool s = is_strong_substitutes(v);
    strong += s;
    EXPECT_EQ(s, is_concave(v) &&
                     is_of_demand_type(v, strong_substitutes_vectors(2)))
        << "trial " << t;
  }
  EXPECT_GT(strong, 0);
}

}  // namespace
}  // namespace indiv
