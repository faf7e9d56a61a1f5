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


#ifndef INDIV_STRUCTURE_HPP_
#define INDIV_STRUCTURE_HPP_

#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "indiv/core.hpp"

namespace indiv {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Primitive integer vectors closed under negation, kept sorted.
class DemandTypeVectorSet {
 public:
  DemandTypeVectorSet() = default;
  /// Adds the negation of every vector. Throws kInvalidArgument on zero or
  /// non-primitive vectors and kDimensionMismatch on mixed lengths.
  explicit DemandTypeVectorSet(std::vector<Bundle> vectors);

  const std::vector<Bundle>& vectors() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  std::size_t dimension() const { return v_.empty() ? 0 : v_.front().size(); }
  bool contains(const Bundle& d) const;
  /// One vector from each pair {d, -d}: the lexicographically larger one.
  std::vector<Bundle> representatives() const;
  /// True iff every vector here is in `other`.
  bool subset_of(const DemandTypeVectorSet& other) const;

  friend bool operator==(const DemandTypeVectorSet&,
                         const DemandTypeVectorSet&) = default;

 private:
  std::vector<Bundle> v_;
};

/// Vectors with at most one +1, at most one -1 and no other nonzero entries.
DemandTypeVectorSet strong_substitutes_vectors(std::size_t goods);

/// Divides by the gcd of the entries. Throws on the zero vector.
Bundle primitive(const Bundle& d);

/// Every integer point of conv(X) is feasible and demanded at some price.
bool is_concave(const Valuation& v);

/// Bundles x with D(p) = {x} for some p, in lexicographic order.
std::vector<Bundle> uniquely_demanded(const Valuation& v);

DemandTypeVectorSet minimal_demand_type(const Valuation& v);
bool is_of_demand_type(const Valuation& v, const DemandTypeVectorSet& d);

/// Requires a 0/1 feasible set (kNotUnitBounded otherwise).
bool is_substitutes(const Valuation& v);

/// A price at which D(p) = {x, x + g} with g violating the substitutes
/// condition, if one exists.
struct SubstitutesViolation {
  PriceVector price;
  Bundle from;
  Bundle to;
};
std::optional<SubstitutesViolation> find_substitutes_violation(
    const Valuation& v);

bool is_net_substitutes(const Agent& agent,
                        std::span<const UtilityLevel> level_probe = {});

struct GrossSubstitutesViolation {
  Rational money;
  PriceVector price;
  std::size_t good;
  Rational delta;
  Bundle before;
  Bundle after;
};

/// Sampled check: searches the grid for a money endowment m, price p, good i
/// and delta > 0 with single-valued Marshallian demands at p and p + delta e_i
/// where demand for some other good falls.
std::optional<GrossSubstitutesViolation> find_gross_substitutes_violation(
    const Agent& agent, const Bundle& goods_endow,
    std::span<const Rational> money_grid,
    std::span<const PriceVector> price_grid, std::span<const Rational> deltas);

bool is_gross_substitutes_at(const Agent& agent, const Bundle& goods_endow,
                             std::span<const Rational> money_grid,
                             std::span<const PriceVector> price_grid,
                             std::span<const Rational> deltas);

/// Treats each unit of each good as a separate good. Requires nonnegative
/// quantities (kNegativeQuantities otherwise).
Valuation unpack_units(const Valuation& v);

bool is_strong_substitutes(const Valuation& v);
bool is_strong_net_substitutes(const Agent& agent,
                               std::span<const UtilityLevel> level_probe = {});

/// A linearly independent subset whose maximal minors have gcd > 1.
struct UnimodularityViolation {
  std::vector<Bundle> subset;
  Integer minor_gcd;
};

std::optional<UnimodularityViolation> find_unimodularity_violation(
    const DemandTypeVectorSet& d);
bool is_unimodular(const DemandTypeVectorSet& d);

/// Rank of the vectors over the rationals.
std::size_t rank(std::span<const Bundle> vectors);

/// gcd of the maximal minors of the matrix with the given columns; zero when
/// the columns are dependent.
Integer minor_gcd(std::span<const Bundle> columns);

/// An integer point sum a_l d_l with every a_l strictly between 0 and 1, for
/// linearly independent d_l.
std::optional<Bundle> find_interior_lattice_point(std::span<const Bundle> d);

/// Integer points of the parallelepiped {sum a_l d_l : 0 <= a_l <= 1}.
std::vector<Bundle> parallelepiped_points(std::span<const Bundle> d);

/// Exact coefficients a with sum a_l d_l = z, if z is in the span.
std::optional<std::vector<Rational>> coordinates_in(std::span<const Bundle> d,
                                                    const Bundle& z);

bool is_quasiconcave(const Agent& agent,
                     std::span<const UtilityLevel> level_probe = {});

/// V(x) = t.x on X.
Valuation linear_on_domain(std::span<const Bundle> domain,
                           std::span<const Rational> t);

/// Integer points of conv(points).
std::vector<Bundle> hull_lattice_points(std::span<const Bundle> points);

/// Some price at which x is demanded, if any.
std::optional<PriceVector> demand_price(const Valuation& v, const Bundle& x);

}  // namespace indiv

#endif  // INDIV_STRUCTURE_HPP_
