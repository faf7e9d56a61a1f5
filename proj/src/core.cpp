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

#include "indiv/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace indiv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleConsumption: return "InfeasibleConsumption";
    case ErrorCode::kInfeasibleBundle: return "InfeasibleBundle";
    case ErrorCode::kLevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::kNoEndowmentAllocation: return "NoEndowmentAllocation";
    case ErrorCode::kEmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotStrictlyDecreasing: return "NotStrictlyDecreasing";
    case ErrorCode::kMismatchedDomains: return "MismatchedDomains";
    case ErrorCode::kNotUnitBounded: return "NotUnitBounded";
    case ErrorCode::kNegativeQuantities: return "NegativeQuantities";
    case ErrorCode::kNotParetoEfficient: return "NotParetoEfficient";
    case ErrorCode::kIsActuallySubstitutes: return "IsActuallySubstitutes";
    case ErrorCode::kSubsetUnimodular: return "SubsetUnimodular";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::kParse,
                "not a rational literal: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  boost::multiprecision::mpz_int n(std::string{num});
  boost::multiprecision::mpz_int d(std::string{den});
  if (d == 0) {
    throw Error(ErrorCode::kParse,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(n, d);
}

std::string format_rational(const Rational& r) { return r.str(); }

bool Bundle::is_zero() const {
  return std::all_of(q_.begin(), q_.end(), [](auto v) { return v == 0; });
}

Bundle& Bundle::operator+=(const Bundle& o) {
  if (o.size() != size())
    throw Error(ErrorCode::kDimensionMismatch, "bundle sizes differ");
  for (std::size_t i = 0; i < q_.size(); ++i) q_[i] += o.q_[i];
  return *this;
}

Bundle& Bundle::operator-=(const Bundle& o) {
  if (o.size() != size())
    throw Error(ErrorCode::kDimensionMismatch, "bundle sizes differ");
  for (std::size_t i = 0; i < q_.size(); ++i) q_[i] -= o.q_[i];
  return *this;
}

Bundle operator-(Bundle a) {
  for (auto& v : a.q_) v = -v;
  return a;
}

std::string format_bundle(const Bundle& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(b[i]);
  }
  return out;
}

Bundle parse_bundle(std::string_view text) {
  std::vector<std::int64_t> q;
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')')
    s = s.substr(1, s.size() - 2);
  while (true) {
    auto comma = s.find(',');
    std::string_view part = trim(s.substr(0, comma));
    std::int64_t v = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw Error(ErrorCode::kParse,
                  "not an integer bundle: '" + std::string(text) + "'");
    }
    q.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return Bundle(std::move(q));
}

std::ostream& operator<<(std::ostream& os, const Bundle& b) {
  return os << '(' << format_bundle(b) << ')';
}

Rational dot(std::span<const Rational> p, const Bundle& x) {
  if (p.size() != x.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "price has " + std::to_string(p.size()) + " goods, bundle has " +
                    std::to_string(x.size()));
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (x[i] != 0) s += p[i] * x[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::kDimensionMismatch, "vector sizes differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string format_prices(std::span<const Rational> p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += format_rational(p[i]);
  }
  return out;
}

Valuation::Valuation(std::map<Bundle, Rational> values)
    : values_(std::move(values)) {
  if (values_.empty())
    throw Error(ErrorCode::kEmptyFeasibleSet, "valuation has no bundles");
  goods_ = values_.begin()->first.size();
  for (const auto& [x, v] : values_) {
    if (x.size() != goods_)
      throw Error(ErrorCode::kDimensionMismatch,
                  "bundle " + format_bundle(x) + " has the wrong length");
  }
}

const Rational& Valuation::value(const Bundle& x) const {
  auto it = values_.find(x);
  if (it == values_.end())
    throw Error(ErrorCode::kInfeasibleBundle,
                "bundle (" + format_bundle(x) + ") is not feasible");
  return it->second;
}

std::vector<Bundle> Valuation::bundles() const {
  std::vector<Bundle> out;
  out.reserve(values_.size());
  for (const auto& kv : values_) out.push_back(kv.first);
  return out;
}

bool Valuation::same_domain(const Valuation& other) const {
  if (size() != other.size()) return false;
  return std::equal(values_.begin(), values_.end(), other.values_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; });
}

Valuation Valuation::shifted(const Rational& shift) const {
  Valuation out = *this;
  for (auto& kv : out.values_) kv.second += shift;
  return out;
}

Valuation Valuation::scaled(const Rational& factor) const {
  Valuation out = *this;
  for (auto& kv : out.values_) kv.second *= factor;
  return out;
}

UtilityModel::UtilityModel(Quasilinear q) : v_(std::move(q)) {
  if (v_.index() == 0 && std::get<Quasilinear>(v_).valuation.size() == 0)
    throw Error(ErrorCode::kEmptyFeasibleSet, "empty quasilinear valuation");
}

UtilityModel::UtilityModel(Quasilog q) : v_(std::move(q)) {
  const auto& qv = std::get<Quasilog>(v_).quasivaluation;
  if (qv.size() == 0)
    throw Error(ErrorCode::kEmptyFeasibleSet, "empty quasivaluation");
  for (const auto& [x, v] : qv.entries()) {
    if (v >= 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "quasivaluation must be negative, got " + format_rational(v) +
                      " at (" + format_bundle(x) + ")");
  }
}

UtilityModel::UtilityModel(TabulatedFamily t) : v_(std::move(t)) {
  const auto& f = std::get<TabulatedFamily>(v_);
  if (f.levels.size() < 2 || f.levels.size() != f.valuations.size())
    throw Error(ErrorCode::kInvalidArgument,
                "a tabulated family needs at least two levels and one valuation "
                "per level");
  for (std::size_t i = 0; i < f.valuations.size(); ++i) {
    if (f.valuations[i].size() == 0)
      throw Error(ErrorCode::kEmptyFeasibleSet, "empty valuation in family");
    if (!f.valuations[i].same_domain(f.valuations[0]))
      throw Error(ErrorCode::kMismatchedDomains,
                  "family valuations must share one feasible set");
  }
  for (std::size_t i = 1; i < f.levels.size(); ++i) {
    if (!(f.levels[i - 1] < f.levels[i]))
      throw Error(ErrorCode::kInvalidArgument,
                  "family levels must be strictly increasing");
    for (const auto& [x, v] : f.valuations[i].entries()) {
      if (!(v < f.valuations[i - 1].value(x)))
        throw Error(ErrorCode::kNotStrictlyDecreasing,
                    "valuation at level " + format_rational(f.levels[i]) +
                        " does not fall below level " +
                        format_rational(f.levels[i - 1]) + " at (" +
                        format_bundle(x) + ")");
    }
  }
  if (f.money_floor) {
    for (const auto& val : f.valuations)
      for (const auto& [x, v] : val.entries())
        if (!(-v > *f.money_floor))
          throw Error(ErrorCode::kInvalidArgument,
                      "compensation at (" + format_bundle(x) +
                          ") does not exceed the money floor");
  }
}

const Valuation& UtilityModel::base() const {
  return std::visit(
      [](const auto& m) -> const Valuation& {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Quasilinear>) return m.valuation;
        else if constexpr (std::is_same_v<T, Quasilog>) return m.quasivaluation;
        else return m.valuations.front();
      },
      v_);
}

std::optional<Rational> UtilityModel::money_floor() const {
  if (is_quasilinear()) return std::nullopt;
  if (is_quasilog()) return Rational(0);
  return std::get<TabulatedFamily>(v_).money_floor;
}

std::string_view UtilityModel::kind() const {
  if (is_quasilinear()) return "quasilinear";
  if (is_quasilog()) return "quasilog";
  return "tabulated";
}

const Agent& Economy::agent(std::string_view name) const {
  for (const auto& a : agents)
    if (a.name == name) return a;
  throw Error(ErrorCode::kInvalidArgument,
              "no agent named '" + std::string(name) + "'");
}

namespace {

void check_goods(const Agent& agent, const Bundle& x) {
  if (x.size() != agent.utility.goods())
    throw Error(ErrorCode::kDimensionMismatch,
                "bundle length " + std::to_string(x.size()) + " for agent '" +
                    agent.name + "' with " +
                    std::to_string(agent.utility.goods()) + " goods");
  if (!agent.utility.base().contains(x))
    throw Error(ErrorCode::kInfeasibleBundle,
                "bundle (" + format_bundle(x) + ") is not feasible for '" +
                    agent.name + "'");
}

// Piecewise-linear compensation of a tabulated family. Within [levels[0],
// levels.back()] this interpolates; outside it extends the end segments.
Rational family_compensation(const TabulatedFamily& f, const Bundle& x,
                             const Rational& u) {
  const std::size_t n = f.levels.size();
  std::size_t i = 0;
  if (u >= f.levels[n - 1]) {
    i = n - 2;
  } else {
    while (i + 2 < n && u >= f.levels[i + 1]) ++i;
  }
  Rational s0 = -f.valuations[i].value(x);
  Rational s1 = -f.valuations[i + 1].value(x);
  return s0 + (u - f.levels[i]) * (s1 - s0) / (f.levels[i + 1] - f.levels[i]);
}

Rational family_level(const TabulatedFamily& f, const Bundle& x,
                      const Rational& money) {
  const std::size_t n = f.levels.size();
  std::size_t i = 0;
  if (money >= -f.valuations[n - 1].value(x)) {
    i = n - 2;
  } else {
    while (i + 2 < n && money >= -f.valuations[i + 1].value(x)) ++i;
  }
  Rational s0 = -f.valuations[i].value(x);
  Rational s1 = -f.valuations[i + 1].value(x);
  return f.levels[i] + (money - s0) * (f.levels[i + 1] - f.levels[i]) / (s1 - s0);
}

}  // namespace

bool is_feasible_consumption(const Agent& agent, const ConsumptionBundle& c) {
  if (c.goods.size() != agent.utility.goods()) return false;
  if (!agent.utility.base().contains(c.goods)) return false;
  auto floor = agent.utility.money_floor();
  return !floor || c.money > *floor;
}

Rational utility_key(const Agent& agent, const ConsumptionBundle& c) {
  check_goods(agent, c.goods);
  if (auto floor = agent.utility.money_floor(); floor && !(c.money > *floor)) {
    throw Error(ErrorCode::kInfeasibleConsumption,
                "money " + format_rational(c.money) + " is not above the floor " +
                    format_rational(*floor) + " for '" + agent.name + "'");
  }
  return std::visit(
      [&](const auto& m) -> Rational {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Quasilinear>) {
          return c.money + m.valuation.value(c.goods);
        } else if constexpr (std::is_same_v<T, Quasilog>) {
          return c.money / -m.quasivaluation.value(c.goods);
        } else {
          return family_level(m, c.goods, c.money);
        }
      },
      agent.utility.variant());
}

void check_level(const Agent& agent, const UtilityLevel& u) {
  if (agent.utility.is_quasilog() && !(u.value > 0))
    throw Error(ErrorCode::kLevelOutOfRange,
                "quasilog level w must be positive, got " +
                    format_rational(u.value));
  if (const auto* f = std::get_if<TabulatedFamily>(&agent.utility.variant())) {
    if (u.value < f->levels.front() || u.value > f->levels.back())
      throw Error(ErrorCode::kLevelOutOfRange,
                  "level " + format_rational(u.value) + " is outside [" +
                      format_rational(f->levels.front()) + ", " +
                      format_rational(f->levels.back()) + "]");
  }
}

Rational compensation(const Agent& agent, const Bundle& x,
                      const UtilityLevel& u) {
  check_goods(agent, x);
  check_level(agent, u);
  return std::visit(
      [&](const auto& m) -> Rational {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Quasilinear>) {
          return u.value - m.valuation.value(x);
        } else if constexpr (std::is_same_v<T, Quasilog>) {
          return u.value * -m.quasivaluation.value(x);
        } else {
          return family_compensation(m, x, u.value);
        }
      },
      agent.utility.variant());
}

std::vector<Bundle> aggregate_bundles(
    std::span<const std::vector<Bundle>> feasible_sets) {
  if (feasible_sets.empty()) return {};
  std::set<Bundle> acc(feasible_sets[0].begin(), feasible_sets[0].end());
  for (std::size_t j = 1; j < feasible_sets.size(); ++j) {
    std::set<Bundle> next;
    for (const auto& a : acc)
      for (const auto& b : feasible_sets[j]) next.insert(a + b);
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

Bundle sum(std::span<const Bundle> bundles) {
  if (bundles.empty()) return {};
  Bundle total(bundles[0].size());
  for (const auto& b : bundles) total += b;
  return total;
}

void validate_economy(const Economy& e) {
  const std::size_t n = e.goods.size();
  if (e.agents.empty())
    throw Error(ErrorCode::kInvalidArgument, "economy has no agents");
  if (e.total_endowment.size() != n)
    throw Error(ErrorCode::kDimensionMismatch,
                "total endowment has " + std::to_string(e.total_endowment.size()) +
                    " goods, economy has " + std::to_string(n));
  std::vector<std::vector<Bundle>> sets;
  for (const auto& a : e.agents) {
    if (a.utility.base().size() == 0)
      throw Error(ErrorCode::kEmptyFeasibleSet,
                  "agent '" + a.name + "' has no feasible bundle");
    if (a.utility.goods() != n)
      throw Error(ErrorCode::kDimensionMismatch,
                  "agent '" + a.name + "' has bundles of length " +
                      std::to_string(a.utility.goods()) + ", economy has " +
                      std::to_string(n) + " goods");
    sets.push_back(a.utility.feasible_set());
  }
  auto reachable = aggregate_bundles(sets);
  if (!std::binary_search(reachable.begin(), reachable.end(), e.total_endowment))
    throw Error(ErrorCode::kNoEndowmentAllocation,
                "total endowment (" + format_bundle(e.total_endowment) +
                    ") is not a sum of feasible bundles");
}

void validate_endowment(const Economy& e, const EndowmentAllocation& endow) {
  if (endow.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "endowment lists " + std::to_string(endow.size()) +
                    " agents, economy has " + std::to_string(e.agents.size()));
  Bundle total(e.goods.size());
  for (std::size_t j = 0; j < endow.size(); ++j) {
    const auto& a = e.agents[j];
    check_goods(a, endow[j].goods);
    if (!is_feasible_consumption(a, endow[j]))
      throw Error(ErrorCode::kInfeasibleConsumption,
                  "endowment money of '" + a.name + "' is not above the floor");
    total += endow[j].goods;
  }
  if (total != e.total_endowment)
    throw Error(ErrorCode::kNoEndowmentAllocation,
                "endowments sum to (" + format_bundle(total) +
                    "), total endowment is (" + format_bundle(e.total_endowment) +
                    ")");
}

}  // namespace indiv
