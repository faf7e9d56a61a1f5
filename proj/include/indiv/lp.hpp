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


#ifndef INDIV_LP_HPP_
#define INDIV_LP_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indiv/core.hpp"

namespace indiv {

enum class Relation { kLessEqual, kLess, kEqual };

/// coeffs . x (relation) rhs
struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
  std::string label;
};

/// A finite system of linear constraints over free rational variables.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t variables = 0) : vars_(variables) {}

  std::size_t variables() const noexcept { return vars_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  const Constraint& operator[](std::size_t i) const { return rows_[i]; }

  void add(Constraint c);
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs,
           std::string label = {});

 private:
  std::size_t vars_;
  std::vector<Constraint> rows_;
};

/// Renders a row as e.g. "p1 + p2 <= 5" using the given variable prefix.
std::string format_constraint(const Constraint& c, std::string_view var = "p");

/// Multipliers, one per constraint of the system they refer to. A valid
/// certificate has nonnegative multipliers on inequality rows, combines the
/// left-hand sides to zero, and combines the right-hand sides to a negative
/// number (or to zero with positive weight on some strict row).
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

bool verify_certificate(const LinearSystem& system,
                        const FarkasCertificate& cert);
bool satisfies(const LinearSystem& system, std::span<const Rational> point);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> point;
  Rational value;
  std::optional<FarkasCertificate> certificate;  // set when infeasible
};

/// Maximizes objective . x over the system, reading strict rows as weak.
LpResult maximize(const LinearSystem& system,
                  std::span<const Rational> objective);
LpResult minimize(const LinearSystem& system,
                  std::span<const Rational> objective);

struct PointResult {
  std::optional<std::vector<Rational>> point;
  std::optional<FarkasCertificate> certificate;
  bool feasible() const { return point.has_value(); }
};

/// Exact feasibility of a system with strict rows. Returns a point satisfying
/// every row, or a certificate of infeasibility.
PointResult find_point(const LinearSystem& system);

struct SlackResult {
  /// max e such that every inequality row holds with slack e (capped at 1).
  Rational slack;
  std::vector<Rational> point;
  /// Present when slack < 0, i.e. the weak system is infeasible.
  std::optional<FarkasCertificate> certificate;
};

/// Tightens every inequality row by a common slack and maximizes it. The
/// weak system is feasible iff slack >= 0 and has a strictly interior point
/// iff slack > 0.
SlackResult max_slack(const LinearSystem& system);

}  // namespace indiv

#endif  // INDIV_LP_HPP_
