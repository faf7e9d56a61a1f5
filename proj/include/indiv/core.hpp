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

#ifndef INDIV_CORE_HPP_
#define INDIV_CORE_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace indiv {

/// Exact rational scalar. GMP keeps every value in canonical reduced form.
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Price per good; the price of money is fixed at 1.
using PriceVector = std::vector<Rational>;

enum class ErrorCode {
  kInfeasibleConsumption,
  kInfeasibleBundle,
  kLevelOutOfRange,
  kNoEndowmentAllocation,
  kEmptyFeasibleSet,
  kDimensionMismatch,
  kNotStrictlyDecreasing,
  kMismatchedDomains,
  kNotUnitBounded,
  kNegativeQuantities,
  kNotParetoEfficient,
  kIsActuallySubstitutes,
  kSubsetUnimodular,
  kEnumerationTooLarge,
  kInvalidArgument,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parses "p/q", "-p/q" or an integer. Rejects zero denominators.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Integer quantities of each good. Entries may be negative.
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(std::size_t goods) : q_(goods, 0) {}
  Bundle(std::initializer_list<std::int64_t> q) : q_(q) {}
  explicit Bundle(std::vector<std::int64_t> q) : q_(std::move(q)) {}

  std::size_t size() const noexcept { return q_.size(); }
  std::int64_t operator[](std::size_t i) const { return q_[i]; }
  std::int64_t& operator[](std::size_t i) { return q_[i]; }
  const std::vector<std::int64_t>& quantities() const noexcept { return q_; }
  bool is_zero() const;

  Bundle& operator+=(const Bundle& o);
  Bundle& operator-=(const Bundle& o);
  friend Bundle operator+(Bundle a, const Bundle& b) { return a += b; }
  friend Bundle operator-(Bundle a, const Bundle& b) { return a -= b; }
  friend Bundle operator-(Bundle a);

  friend bool operator==(const Bundle&, const Bundle&) = default;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;

 private:
  std::vector<std::int64_t> q_;
};

/// "q1,q2,..." (the key format used in documents).
std::string format_bundle(const Bundle& b);
Bundle parse_bundle(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Bundle& b);

Rational dot(std::span<const Rational> p, const Bundle& x);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
std::string format_prices(std::span<const Rational> p);

/// Finite map from feasible bundles to exact values.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::map<Bundle, Rational> values);

  std::size_t goods() const noexcept { return goods_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(const Bundle& x) const { return values_.contains(x); }
  const Rational& value(const Bundle& x) const;
  const std::map<Bundle, Rational>& entries() const noexcept { return values_; }
  /// Feasible bundles in lexicographic order.
  std::vector<Bundle> bundles() const;
  bool same_domain(const Valuation& other) const;

  /// V(x) + shift for every bundle.
  Valuation shifted(const Rational& shift) const;
  /// factor * V(x) for every bundle.
  Valuation scaled(const Rational& factor) const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::size_t goods_ = 0;
  std::map<Bundle, Rational> values_;
};

struct Quasilinear {
  Valuation valuation;
  friend bool operator==(const Quasilinear&, const Quasilinear&) = default;
};

/// Quasilogarithmic utility log(m) - log(-q(x)); money floor is 0.
struct Quasilog {
  Valuation quasivaluation;
  friend bool operator==(const Quasilog&, const Quasilog&) = default;
};

/// Utility given by a finite family of valuations indexed by increasing
/// utility levels. Between grid levels the compensation is interpolated
/// linearly, beyond the grid it is extrapolated with the end slopes.
struct TabulatedFamily {
  std::vector<Rational> levels;
  std::vector<Valuation> valuations;
  std::optional<Rational> money_floor;  // nullopt means -infinity
  friend bool operator==(const TabulatedFamily&,
                         const TabulatedFamily&) = default;
};

class UtilityModel {
 public:
  using Variant = std::variant<Quasilinear, Quasilog, TabulatedFamily>;

  UtilityModel(Quasilinear q);
  UtilityModel(Quasilog q);
  UtilityModel(TabulatedFamily t);

  const Variant& variant() const noexcept { return v_; }
  bool is_quasilinear() const { return std::holds_alternative<Quasilinear>(v_); }
  bool is_quasilog() const { return std::holds_alternative<Quasilog>(v_); }
  bool is_tabulated() const { return std::holds_alternative<TabulatedFamily>(v_); }

  /// Valuation carrying the feasible set (for tabulated families, level 0).
  const Valuation& base() const;
  std::vector<Bundle> feasible_set() const { return base().bundles(); }
  std::size_t goods() const { return base().goods(); }
  std::optional<Rational> money_floor() const;
  std::string_view kind() const;

  friend bool operator==(const UtilityModel&, const UtilityModel&) = default;

 private:
  Variant v_;
};

/// A utility value. For quasilinear agents this is u itself, for
/// quasilogarithmic agents it is w = exp(u), for tabulated families it is the
/// level on the family's own scale.
struct UtilityLevel {
  Rational value;
  friend bool operator==(const UtilityLevel&, const UtilityLevel&) = default;
  friend std::strong_ordering operator<=>(const UtilityLevel& a,
                                         const UtilityLevel& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct ConsumptionBundle {
  Rational money;
  Bundle goods;
  friend bool operator==(const ConsumptionBundle&,
                         const ConsumptionBundle&) = default;
};

struct Agent {
  std::string name;
  UtilityModel utility;
  friend bool operator==(const Agent&, const Agent&) = default;
};

using EndowmentAllocation = std::vector<ConsumptionBundle>;

struct Economy {
  std::vector<std::string> goods;
  std::vector<Agent> agents;
  Bundle total_endowment;
  /// Optional per-agent endowment carried by documents.
  std::optional<EndowmentAllocation> endowment;

  std::size_t num_goods() const { return goods.size(); }
  const Agent& agent(std::string_view name) const;

  friend bool operator==(const Economy&, const Economy&) = default;
};

/// Exact ordering key: for a fixed agent, U(c) >= U(c') iff key(c) >= key(c').
/// The key equals the agent's utility level of c.
Rational utility_key(const Agent& agent, const ConsumptionBundle& c);
inline UtilityLevel level_of(const Agent& agent, const ConsumptionBundle& c) {
  return {utility_key(agent, c)};
}

/// Money needed with goods x to reach utility level u.
Rational compensation(const Agent& agent, const Bundle& x,
                      const UtilityLevel& u);

/// Throws kLevelOutOfRange if u is not a valid level for the agent.
void check_level(const Agent& agent, const UtilityLevel& u);

/// True iff money > floor and goods are feasible.
bool is_feasible_consumption(const Agent& agent, const ConsumptionBundle& c);

void validate_economy(const Economy& e);
void validate_endowment(const Economy& e, const EndowmentAllocation& endow);

/// All goods vectors reachable as a sum of one feasible bundle per agent.
std::vector<Bundle> aggregate_bundles(
    std::span<const std::vector<Bundle>> feasible_sets);

Bundle sum(std::span<const Bundle> bundles);

}  // namespace indiv

#endif  // INDIV_CORE_HPP_
