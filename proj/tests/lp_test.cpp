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


#include "indiv/lp.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles/fourier_motzkin.hpp"

namespace indiv {
namespace {

using R = Rational;

TEST(LpTest, SmallMaximization) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x >= 0, y >= 0.
  LinearSystem s(2);
  s.add({1, 2}, Relation::kLessEqual, 4);
  s.add({3, 1}, Relation::kLessEqual, 6);
  s.add({-1, 0}, Relation::kLessEqual, 0);
  s.add({0, -1}, Relation::kLessEqual, 0);
  std::vector<R> c{1, 1};
  auto r = maximize(s, c);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, R(14, 5));
  EXPECT_EQ(r.point, (std::vector<R>{R(8, 5), R(6, 5)}));
  auto m = minimize(s, c);
  ASSERT_EQ(m.status, LpStatus::kOptimal);
  EXPECT_EQ(m.value, 0);
}

TEST(LpTest, EqualityAndUnbounded) {
  LinearSystem s(2);
  s.add({1, 1}, Relation::kEqual, 3);
  s.add({-1, 0}, Relation::kLessEqual, 0);
  std::vector<R> c{1, 0};
  auto r = maximize(s, c);
  EXPECT_EQ(r.status, LpStatus::kUnbounded);
  auto m = minimize(s, c);
  ASSERT_EQ(m.status, LpStatus::kOptimal);
  EXPECT_EQ(m.value, 0);
  EXPECT_EQ(m.point, (std::vector<R>{0, 3}));
}

TEST(LpTest, InfeasibleGivesCertificate) {
  // p1 + p2 <= 5, p1 >= 4, p2 >= 3.
  LinearSystem s(2);
  s.add({1, 1}, Relation::kLessEqual, 5);
  s.add({-1, 0}, Relation::kLessEqual, -4);
  s.add({0, -1}, Relation::kLessEqual, -3);
  s.add({1, 0}, Relation::kLessEqual, 5);
  std::vector<R> c{0, 1};
  auto r = maximize(s, c);
  ASSERT_EQ(r.status, LpStatus::kInfeasible);
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(verify_certificate(s, *r.certificate));

  auto slack = max_slack(s);
  EXPECT_EQ(slack.slack, R(-2, 3));
  ASSERT_TRUE(slack.certificate);
  EXPECT_TRUE(verify_certificate(s, *slack.certificate));
  EXPECT_EQ(slack.certificate->multipliers,
            (std::vector<R>{R(1, 2), R(1, 2), R(1, 2), 0}));
}

TEST(LpTest, StrictRows) {
  // x < 1 and x > 1 - 1 is fine; x < 1 and x >= 1 is not.
  LinearSystem ok(1);
  ok.add({1}, Relation::kLess, 1);
  ok.add({-1}, Relation::kLess, 0);
  auto a = find_point(ok);
  ASSERT_TRUE(a.feasible());
  EXPECT_TRUE(satisfies(ok, *a.point));

  LinearSystem bad(1);
  bad.add({1}, Relation::kLess, 1);
  bad.add({-1}, Relation::kLessEqual, -1);
  auto b = find_point(bad);
  EXPECT_FALSE(b.feasible());
  ASSERT_TRUE(b.certificate);
  EXPECT_TRUE(verify_certificate(bad, *b.certificate));
  auto weak = max_slack(bad);
  EXPECT_EQ(weak.slack, 0);
}

TEST(LpTest, NoVariables) {
  LinearSystem s(0);
  s.add({}, Relation::kLessEqual, -1);
  auto p = find_point(s);
  EXPECT_FALSE(p.feasible());
  EXPECT_TRUE(verify_certificate(s, *p.certificate));
}

TEST(LpTest, FormatConstraint) {
  Constraint c{{1, -1, R(1, 2)}, Relation::kLessEqual, 5, ""};
  EXPECT_EQ(format_constraint(c), "p1 - p2 + 1/2*p3 <= 5");
}

LinearSystem random_system(std::mt19937& rng, std::size_t vars) {
  std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 6), rows(1, 7),
      rel(0, 5);
  LinearSystem s(vars);
  int n = rows(rng);
  for (int r = 0; r < n; ++r) {
    std::vector<R> a(vars);
    for (auto& v : a) v = coef(rng);
    int k = rel(rng);
    Relation re = k < 3 ? Relation::kLessEqual
                        : (k < 5 ? Relation::kLess : Relation::kEqual);
    s.add(std::move(a), re, rhs(rng));
  }
  return s;
}

TEST(LpTest, AgreesWithFourierMotzkin) {
  std::mt19937 rng(7);
  int feasible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    auto s = random_system(rng, 1 + trial % 4);
    bool expect = oracle::fm_feasible(s);
    auto r = find_point(s);
    ASSERT_EQ(r.feasible(), expect) << "trial " << trial;
    if (r.feasible()) {
      ++feasible;
      EXPECT_TRUE(satisfies(s, *r.point));
    } else {
      ASSERT_TRUE(r.certificate);
      EXPECT_TRUE(verify_certificate(s, *r.certificate));
    }
  }
  EXPECT_GT(feasible, 50);
  EXPECT_LT(feasible, 550);
}

TEST(LpTest, OptimumNotImprovableAlongFeasibleSamples) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_system(rng, 2);
    std::vector<R> c{coef(rng), coef(rng)};
    auto r = maximize(s, c);
    if (r.status != LpStatus::kOptimal) continue;
    EXPECT_TRUE(satisfies(LinearSystem(s), r.point) ||
                [&] {
                  // strict rows are read as weak by maximize
                  for (const auto& row : s.constraints())
                    if (dot(row.coeffs, r.point) > row.rhs) return false;
                  return true;
                }());
    EXPECT_EQ(dot(c, r.point), r.value);
    // Adding value + 1/1000 as a constraint makes the system infeasible.
    LinearSystem t = s;
    std::vector<R> neg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
    t.add(neg, Relation::kLessEqual, -(r.value + R(1, 1000)));
    for (std::size_t k = 0; k < t.size(); ++k) {
      (void)k;
    }
    LinearSystem weak(t.variables());
    for (auto row : t.constraints()) {
      if (row.relation == Relation::kLess) row.relation = Relation::kLessEqual;
      weak.add(row);
    }
    EXPECT_FALSE(oracle::fm_feasible(weak));
  }
}

}  // namespace
}  // namespace indiv
