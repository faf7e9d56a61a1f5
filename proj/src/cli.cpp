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


#include "indiv/cli.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "indiv/demand.hpp"
#include "indiv/document.hpp"
#include "indiv/equilibrium.hpp"
#include "indiv/fixtures.hpp"
#include "indiv/hicksian.hpp"
#include "indiv/structure.hpp"

namespace indiv::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::size_t max_iter = 200;
  std::string epsilon = "1/4294967296";
  unsigned seed = 1;
};

// Accumulates one command's result as JSON plus a text rendering.
struct Report {
  json data = json::object();
  std::ostringstream text;
  int code = kComputed;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_list(const std::string& s, const char* what) {
  std::vector<Rational> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    try {
      out.push_back(parse_rational(part));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Bundle> parse_bundles(const std::string& s, const char* what) {
  std::vector<Bundle> out;
  for (const auto& part : split(s, ';')) {
    try {
      out.push_back(parse_bundle(part));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
    }
  }
  return out;
}

json rationals_json(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(format_rational(r));
  return a;
}

json bundle_json(const Bundle& b) {
  json a = json::array();
  for (auto q : b.quantities()) a.push_back(q);
  return a;
}

json bundles_json(std::span<const Bundle> v) {
  json a = json::array();
  for (const auto& b : v) a.push_back(bundle_json(b));
  return a;
}

std::string bundles_text(std::span<const Bundle> v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", (" : "(") + format_bundle(v[i]) + ")";
  return s + "}";
}

std::string prices_text(std::span<const Rational> p) {
  return "(" + format_prices(p) + ")";
}

const Agent& pick_agent(const Economy& e, const std::string& name) {
  if (name.empty()) {
    if (e.agents.size() == 1) return e.agents.front();
    throw Error(ErrorCode::kInvalidArgument,
                "--agent is required for economies with several agents");
  }
  return e.agent(name);
}

std::vector<const Agent*> selected_agents(const Economy& e,
                                          const std::string& name) {
  std::vector<const Agent*> out;
  if (!name.empty()) {
    out.push_back(&e.agent(name));
  } else {
    for (const auto& a : e.agents) out.push_back(&a);
  }
  return out;
}

EndowmentAllocation endowment_of(const Economy& e) {
  if (!e.endowment)
    throw Error(ErrorCode::kInvalidArgument, "the document carries no endowment");
  return *e.endowment;
}

void write_certificate(Report& r, const LinearSystem& sys,
                       const FarkasCertificate& cert) {
  json rows = json::array();
  r.text << "certificate (nonnegative weights on price constraints):\n";
  std::vector<Rational> combo(sys.variables(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Rational& lam = cert.multipliers[i];
    if (lam == 0) continue;
    std::string row = format_constraint(sys[i]);
    r.text << "  " << lam << " x  " << row << "    [" << sys[i].label << "]\n";
    rows.push_back({{"multiplier", format_rational(lam)},
                    {"constraint", row},
                    {"label", sys[i].label}});
    for (std::size_t k = 0; k < combo.size(); ++k) combo[k] += lam * sys[i].coeffs[k];
    rhs += lam * sys[i].rhs;
  }
  Constraint sum_row{combo, Relation::kLessEqual, rhs, {}};
  r.text << "  sum: " << format_constraint(sum_row) << "\n";
  r.data["certificate"] = std::move(rows);
  r.data["certificate_sum"] = format_constraint(sum_row);
  r.data["certificate_verified"] = verify_certificate(sys, cert);
}

void write_outcome(Report& r, const Economy& e, const CEOutcome& out) {
  if (const auto* f = std::get_if<Found>(&out)) {
    r.data["outcome"] = "found";
    r.data["price"] = rationals_json(f->price);
    r.data["allocation"] = bundles_json(f->allocation);
    r.data["money"] = rationals_json(f->money);
    r.text << "outcome: found\nprice: " << prices_text(f->price) << "\n";
    for (std::size_t j = 0; j < f->allocation.size(); ++j)
      r.text << "  " << e.agents[j].name << ": goods (" << format_bundle(f->allocation[j])
             << "), money " << f->money[j] << "\n";
    r.code = kComputed;
    return;
  }
  const auto& nf = std::get<NotFound>(out);
  r.data["outcome"] = "not-found";
  if (const auto* se = std::get_if<SearchExhausted>(&nf.reason)) {
    r.data["reason"] = "search-exhausted";
    r.data["details"] = se->details;
    r.text << "outcome: search exhausted (not a proof of nonexistence)\n"
           << se->details << "\n";
    r.code = kSearchExhausted;
    return;
  }
  r.data["reason"] = "certificate";
  r.text << "outcome: no equilibrium\n";
  if (nf.allocation) {
    r.data["allocation"] = bundles_json(*nf.allocation);
    r.text << "welfare-maximizing allocation:";
    for (std::size_t j = 0; j < nf.allocation->size(); ++j)
      r.text << " " << e.agents[j].name << "=(" << format_bundle((*nf.allocation)[j]) << ")";
    r.text << "\n";
  }
  write_certificate(r, *nf.system, std::get<FarkasCertificate>(nf.reason));
  r.code = kNegative;
}

IncomeSearchParams params_of(const Options& o) {
  IncomeSearchParams p;
  p.max_iter = o.max_iter;
  p.epsilon = parse_rational(o.epsilon);
  if (!(p.epsilon > 0))
    throw Error(ErrorCode::kInvalidArgument, "--epsilon must be positive");
  return p;
}

// demand

struct DemandArgs {
  std::string kind, doc, agent, price, money, goods, level;
};

Report cmd_demand(const DemandArgs& a) {
  auto doc = load_document(a.doc);
  const Economy& e = doc.economy;
  const Agent& agent = pick_agent(e, a.agent);
  auto p = parse_list(a.price, "--price");
  if (p.size() != e.num_goods())
    throw Error(ErrorCode::kDimensionMismatch, "--price needs one entry per good");
  Report r;
  r.data["command"] = "demand";
  r.data["kind"] = a.kind;
  r.data["agent"] = agent.name;
  DemandSet d;
  if (a.kind == "quasilinear") {
    d = quasilinear_demand(agent.utility.base(), p);
  } else if (a.kind == "marshallian") {
    ConsumptionBundle endow;
    if (!a.money.empty() || !a.goods.empty()) {
      endow.money = a.money.empty() ? Rational(0) : parse_rational(a.money);
      endow.goods = a.goods.empty() ? Bundle(e.num_goods()) : parse_bundle(a.goods);
    } else {
      auto all = endowment_of(e);
      std::size_t j = &agent - e.agents.data();
      endow = all[j];
    }
    d = marshallian_demand(agent, p, endow);
    auto u = indirect_utility(agent, p, endow);
    r.data["indirect_utility"] = format_rational(u.value);
    r.text << "indirect utility: " << u.value << "\n";
  } else {
    if (a.level.empty())
      throw Error(ErrorCode::kInvalidArgument, "hicksian demand needs --level");
    UtilityLevel u{parse_rational(a.level)};
    d = hicksian_demand(agent, p, u);
    Rational ex = expenditure(agent, p, u);
    r.data["expenditure"] = format_rational(ex);
    r.text << "expenditure: " << ex << "\n";
  }
  r.data["demand"] = bundles_json(d);
  r.text << "demand: " << bundles_text(d) << "\n";
  return r;
}

// hicksian-valuation

Report cmd_hicksian_valuation(const std::string& path, const std::string& name,
                              const std::string& level) {
  auto doc = load_document(path);
  const Agent& agent = pick_agent(doc.economy, name);
  auto v = hicksian_valuation(agent, {parse_rational(level)});
  Report r;
  r.data["command"] = "hicksian-valuation";
  r.data["agent"] = agent.name;
  r.data["level"] = level;
  json table = json::object();
  for (const auto& [x, val] : v.entries()) {
    table[format_bundle(x)] = format_rational(val);
    r.text << "(" << format_bundle(x) << ") " << val << "\n";
  }
  r.data["values"] = std::move(table);
  return r;
}

// check

struct CheckArgs {
  std::string property, doc, agent, vectors, levels, money;
};

std::vector<UtilityLevel> level_probe(const std::string& s) {
  std::vector<UtilityLevel> out;
  for (const auto& r : parse_list(s, "--levels")) out.push_back({r});
  return out;
}

std::vector<PriceVector> price_grid(const Agent& a) {
  Rational span = 0;
  for (const auto& [x, v] : a.utility.base().entries()) span = std::max(span, abs(v));
  std::int64_t hi = static_cast<std::int64_t>(span.convert_to<double>()) + 1;
  const std::size_t n = a.utility.goods();
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(hi + 1);
  if (count > 50000) hi = static_cast<std::int64_t>(std::pow(50000.0, 1.0 / n)) - 1;
  std::vector<PriceVector> out;
  PriceVector p(n, Rational(0));
  while (true) {
    out.push_back(p);
    std::size_t i = 0;
    while (i < n && p[i] == hi) p[i++] = 0;
    if (i == n) return out;
    p[i] += 1;
  }
}

Report cmd_check(const CheckArgs& a) {
  Report r;
  r.data["command"] = "check";
  r.data["property"] = a.property;
  const std::string& prop = a.property;

  if (prop == "unimodular") {
    std::vector<Bundle> vs;
    if (!a.vectors.empty()) {
      vs = parse_bundles(a.vectors, "--vectors");
    } else if (!a.doc.empty()) {
      auto doc = load_document(a.doc);
      if (doc.vectors) {
        vs = *doc.vectors;
      } else {
        for (const Agent* ag : selected_agents(doc.economy, a.agent))
          for (const auto& d : minimal_demand_type(ag->utility.base()).vectors())
            vs.push_back(d);
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unimodular needs --vectors or a document");
    }
    DemandTypeVectorSet set(vs);
    r.data["vectors"] = bundles_json(set.representatives());
    auto viol = find_unimodularity_violation(set);
    r.data["holds"] = !viol;
    if (viol) {
      r.data["subset"] = bundles_json(viol->subset);
      r.data["minor_gcd"] = viol->minor_gcd.str();
      r.text << "unimodular: false\nindependent subset " << bundles_text(viol->subset)
             << " has maximal minors with gcd " << viol->minor_gcd << "\n";
      r.code = kNegative;
    } else {
      r.text << "unimodular: true\n";
    }
    return r;
  }

  if (a.doc.empty())
    throw Error(ErrorCode::kInvalidArgument, prop + " needs a document");
  auto doc = load_document(a.doc);
  const Economy& e = doc.economy;
  bool all = true;
  json per_agent = json::array();
  for (const Agent* ag : selected_agents(e, a.agent)) {
    const Valuation& v = ag->utility.base();
    json item = {{"agent", ag->name}};
    bool holds = false;
    if (prop == "concave") {
      holds = is_concave(v);
    } else if (prop == "quasiconcave") {
      holds = is_quasiconcave(*ag, level_probe(a.levels));
    } else if (prop == "substitutes") {
      auto viol = find_substitutes_violation(v);
      holds = !viol;
      if (viol) {
        item["price"] = rationals_json(viol->price);
        item["demand"] = bundles_json(std::vector<Bundle>{viol->from, viol->to});
        r.text << ag->name << ": at price " << prices_text(viol->price)
               << " demand is {(" << format_bundle(viol->from) << "), ("
               << format_bundle(viol->to) << ")}\n";
      }
    } else if (prop == "net-substitutes") {
      holds = is_net_substitutes(*ag, level_probe(a.levels));
    } else if (prop == "gross-substitutes") {
      std::vector<Rational> money = a.money.empty()
                                        ? std::vector<Rational>{1, 2, 4, 8, 16}
                                        : parse_list(a.money, "--money");
      std::vector<Rational> deltas{Rational(1, 2), 1, 2};
      Bundle w(e.num_goods());
      if (e.endowment) w = (*e.endowment)[ag - e.agents.data()].goods;
      auto grid = price_grid(*ag);
      auto viol = find_gross_substitutes_violation(*ag, w, money, grid, deltas);
      holds = !viol;
      item["sampled"] = true;
      if (viol) {
        item["money"] = format_rational(viol->money);
        item["price"] = rationals_json(viol->price);
        item["good"] = viol->good;
        item["delta"] = format_rational(viol->delta);
        item["before"] = bundle_json(viol->before);
        item["after"] = bundle_json(viol->after);
        r.text << ag->name << ": money " << viol->money << ", raising the price of good "
               << viol->good + 1 << " by " << viol->delta << " at "
               << prices_text(viol->price) << " moves demand from ("
               << format_bundle(viol->before) << ") to (" << format_bundle(viol->after)
               << ")\n";
      }
    } else if (prop == "strong-substitutes") {
      holds = ag->utility.is_quasilinear() ? is_strong_substitutes(v)
                                          : is_strong_net_substitutes(*ag, level_probe(a.levels));
    } else if (prop == "demand-type") {
      auto d = minimal_demand_type(v);
      item["demand_type"] = bundles_json(d.representatives());
      r.text << ag->name << ": minimal demand type +-" << bundles_text(d.representatives())
             << "\n";
      if (!a.vectors.empty()) {
        holds = is_of_demand_type(v, DemandTypeVectorSet(parse_bundles(a.vectors, "--vectors")));
      } else if (doc.vectors) {
        holds = is_of_demand_type(v, DemandTypeVectorSet(*doc.vectors));
      } else {
        holds = true;
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown property '" + prop + "'");
    }
    item["holds"] = holds;
    r.text << ag->name << ": " << prop << " " << (holds ? "true" : "false") << "\n";
    all = all && holds;
    per_agent.push_back(std::move(item));
  }
  r.data["agents"] = std::move(per_agent);
  r.data["holds"] = all;
  r.code = all ? kComputed : kNegative;
  return r;
}

// solve

Report cmd_solve(const std::string& mode, const std::string& path, const Options& o) {
  auto doc = load_document(path);
  const Economy& e = doc.economy;
  Report r;
  r.data["command"] = "solve";
  r.data["mode"] = mode;
  CEOutcome out = mode == "tu" ? solve_tu_ce(as_tu_economy(e))
                               : solve_income_ce(e, endowment_of(e), params_of(o));
  write_outcome(r, e, out);
  if (const auto* f = std::get_if<Found>(&out)) {
    bool ok = mode == "tu" ? is_found(out)
                           : verify_ce(e, endowment_of(e), f->price, f->allocation);
    r.data["verified"] = ok;
  }
  return r;
}

// verify-ce

Report cmd_verify(const std::string& path, const std::string& price,
                  const std::string& alloc) {
  auto doc = load_document(path);
  const Economy& e = doc.economy;
  auto p = parse_list(price, "--price");
  auto a = parse_bundles(alloc, "--alloc");
  bool ok = verify_ce(e, endowment_of(e), p, a);
  Report r;
  r.data["command"] = "verify-ce";
  r.data["price"] = rationals_json(p);
  r.data["allocation"] = bundles_json(a);
  r.data["holds"] = ok;
  r.text << "competitive equilibrium: " << (ok ? "true" : "false") << "\n";
  r.code = ok ? kComputed : kNegative;
  return r;
}

// pareto

std::vector<ConsumptionBundle> profile_of(const Economy& e, const std::string& alloc,
                                          const std::string& money) {
  if (alloc.empty() && money.empty()) return endowment_of(e);
  auto goods = parse_bundles(alloc, "--alloc");
  auto m = parse_list(money, "--money");
  if (goods.size() != e.agents.size() || m.size() != e.agents.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "--alloc and --money need one entry per agent");
  std::vector<ConsumptionBundle> out;
  for (std::size_t j = 0; j < goods.size(); ++j) out.push_back({m[j], goods[j]});
  return out;
}

Report cmd_pareto(const std::string& mode, const std::string& path,
                  const std::string& alloc, const std::string& money) {
  auto doc = load_document(path);
  const Economy& e = doc.economy;
  auto profile = profile_of(e, alloc, money);
  Report r;
  r.data["command"] = "pareto";
  r.data["mode"] = mode;
  if (mode == "check") {
    bool ok = is_pareto_efficient(e, profile);
    r.data["holds"] = ok;
    r.text << "Pareto efficient: " << (ok ? "true" : "false") << "\n";
    r.code = ok ? kComputed : kNegative;
    return r;
  }
  auto p = support_pareto(e, profile);
  r.data["supported"] = p.has_value();
  if (p) {
    r.data["price"] = rationals_json(*p);
    r.text << "supporting price: " << prices_text(*p) << "\n";
  } else {
    r.text << "no supporting price\n";
    r.code = kNegative;
  }
  return r;
}

// duality-probe

std::vector<std::vector<UtilityLevel>> default_levels(const Economy& e) {
  std::vector<std::vector<UtilityLevel>> grid;
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    const Agent& a = e.agents[j];
    std::vector<UtilityLevel> g;
    if (const auto* f = std::get_if<TabulatedFamily>(&a.utility.variant())) {
      for (const auto& l : f->levels) g.push_back({l});
    } else {
      Rational base = e.endowment ? utility_key(a, (*e.endowment)[j]) : Rational(1);
      if (a.utility.is_quasilog()) {
        for (const auto& f : {Rational(1, 2), Rational(3, 4), Rational(1),
                              Rational(3, 2), Rational(2)})
          g.push_back({base * f});
      } else {
        for (int d = -2; d <= 2; ++d) g.push_back({base + d});
      }
    }
    grid.push_back(std::move(g));
  }
  return grid;
}

EndowmentAllocation random_endowment(std::mt19937& rng, const Economy& e,
                                     const std::vector<Allocation>& allocs) {
  std::uniform_int_distribution<std::size_t> pick(0, allocs.size() - 1);
  std::uniform_int_distribution<int> money(1, 10);
  EndowmentAllocation out;
  const Allocation& a = allocs[pick(rng)];
  for (std::size_t j = 0; j < a.size(); ++j) {
    Rational m = money(rng);
    if (auto floor = e.agents[j].utility.money_floor(); floor && m <= *floor)
      m = *floor + 1;
    out.push_back({m, a[j]});
  }
  return out;
}

Report cmd_duality(const std::string& path, const std::string& levels,
                   std::size_t samples, const Options& o) {
  auto doc = load_document(path);
  const Economy& e = doc.economy;
  std::vector<std::vector<UtilityLevel>> grid;
  if (levels.empty()) {
    grid = default_levels(e);
  } else {
    for (const auto& part : split(levels, ';')) grid.push_back(level_probe(part));
  }
  std::vector<EndowmentAllocation> endows;
  if (e.endowment) endows.push_back(*e.endowment);
  if (samples > 0) {
    std::vector<std::vector<Bundle>> sets;
    for (const auto& a : e.agents) sets.push_back(a.utility.feasible_set());
    auto allocs = feasible_allocations(sets, e.total_endowment);
    std::mt19937 rng(o.seed);
    for (std::size_t i = 0; i < samples && !allocs.empty(); ++i)
      endows.push_back(random_endowment(rng, e, allocs));
  }
  auto rep = duality_probe(e, grid, endows, params_of(o));
  Report r;
  r.data["command"] = "duality-probe";
  r.data["exact"] = rep.exact;
  json hs = json::array();
  std::size_t hicks_found = 0;
  for (const auto& h : rep.hicksian) {
    std::vector<Rational> u;
    for (const auto& l : h.levels) u.push_back(l.value);
    hs.push_back({{"levels", rationals_json(u)}, {"found", h.found}});
    hicks_found += h.found;
  }
  json ms = json::array();
  for (const auto& m : rep.marshallian) {
    json item = {{"found", m.found}, {"exhausted", m.exhausted}};
    item["exists"] = m.exists ? json(*m.exists) : json(nullptr);
    json endow = json::array();
    for (const auto& c : m.endowment)
      endow.push_back({{"money", format_rational(c.money)}, {"goods", bundle_json(c.goods)}});
    item["endowment"] = std::move(endow);
    ms.push_back(std::move(item));
  }
  r.data["hicksian"] = std::move(hs);
  r.data["marshallian"] = std::move(ms);
  r.data["violations"] = rep.violations;
  r.text << "Hicksian economies with an equilibrium: " << hicks_found << " of "
         << rep.hicksian.size() << "\n";
  for (std::size_t i = 0; i < rep.marshallian.size(); ++i) {
    const auto& m = rep.marshallian[i];
    r.text << "endowment " << i << ": "
           << (m.found ? "equilibrium found" : "search exhausted");
    if (m.exists) r.text << ", exact decision: " << (*m.exists ? "exists" : "none");
    r.text << "\n";
  }
  for (const auto& v : rep.violations) r.text << "violation: " << v << "\n";
  if (!rep.exact) r.text << "(Marshallian side sampled, not decided)\n";
  r.code = rep.violations.empty() ? kComputed : kNegative;
  return r;
}

// counterexample

Report cmd_counterexample(const std::string& kind, const std::string& path,
                          const std::string& agent, const std::string& vectors,
                          const std::string& z) {
  Counterexample ce;
  if (kind == "substitutes") {
    if (path.empty())
      throw Error(ErrorCode::kInvalidArgument, "substitutes needs a document");
    auto doc = load_document(path);
    ce = counterexample_substitutes(pick_agent(doc.economy, agent).utility.base());
  } else {
    if (vectors.empty())
      throw Error(ErrorCode::kInvalidArgument, "unimodular needs --vectors");
    auto vs = parse_bundles(vectors, "--vectors");
    std::optional<Bundle> point;
    if (!z.empty()) point = parse_bundle(z);
    ce = counterexample_unimodular(vs, point);
  }
  Economy e = to_economy(ce.economy);
  EndowmentAllocation endow;
  for (const auto& w : ce.endowment) endow.push_back({0, w});
  e.endowment = endow;
  Report r;
  r.data["command"] = "counterexample";
  r.data["kind"] = kind;
  std::string text = serialize_document({e, std::nullopt});
  r.data["economy"] = json::parse(text);
  r.data["price"] = rationals_json(ce.price);
  r.data["pseudo_equilibrium"] = is_pseudo_equilibrium(ce.economy, ce.price);
  r.text << "economy without equilibrium:\n" << text;
  r.text << "pseudo-equilibrium price: " << prices_text(ce.price) << "\n";
  write_outcome(r, e, ce.outcome);
  r.code = kComputed;
  return r;
}

// fixtures

Report cmd_fixtures(const std::string& name, const std::string& out_dir) {
  Report r;
  r.data["command"] = "fixtures";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    json written = json::array();
    for (const auto& n : fixture_document_names()) {
      if (!name.empty() && n != name) continue;
      auto file = std::filesystem::path(out_dir) / (n + ".json");
      std::ofstream f(file);
      if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + file.string());
      f << serialize_document(fixture_document(n));
      written.push_back(file.string());
      r.text << "wrote " << file.string() << "\n";
    }
    r.data["written"] = std::move(written);
    return r;
  }
  if (!name.empty()) {
    std::string text = serialize_document(fixture_document(name));
    r.data["document"] = json::parse(text);
    r.text << text;
    return r;
  }
  json list = json::array();
  for (const auto& f : fixtures::fixture_names()) {
    list.push_back({{"name", f.name}, {"description", f.description}});
    r.text << f.name << "  " << f.description << "\n";
  }
  r.data["fixtures"] = std::move(list);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Competitive equilibrium tools for economies with indivisible goods",
               "indiv"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-iter", o.max_iter, "Bisection steps for income search")
      ->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "Bisection tolerance (rational)")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for sampled endowments")->capture_default_str();

  DemandArgs da;
  auto* demand = app.add_subcommand("demand", "Demand set at a price");
  demand->add_option("kind", da.kind)->required()->check(
      CLI::IsMember({"quasilinear", "marshallian", "hicksian"}));
  demand->add_option("document", da.doc)->required();
  demand->add_option("--agent", da.agent);
  demand->add_option("--price", da.price, "e.g. 2,2 or 3/2,1")->required();
  demand->add_option("--money", da.money, "Endowment money (marshallian)");
  demand->add_option("--goods", da.goods, "Endowment goods (marshallian)");
  demand->add_option("--level", da.level, "Utility level (hicksian)");

  std::string hv_doc, hv_agent, hv_level;
  auto* hv = app.add_subcommand("hicksian-valuation", "Hicksian valuation at a level");
  hv->add_option("document", hv_doc)->required();
  hv->add_option("--agent", hv_agent);
  hv->add_option("--level", hv_level)->required();

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Check a structural property");
  check->add_option("property", ca.property)->required()->check(CLI::IsMember(
      {"concave", "quasiconcave", "substitutes", "net-substitutes",
       "gross-substitutes", "strong-substitutes", "demand-type", "unimodular"}));
  check->add_option("document", ca.doc);
  check->add_option("--agent", ca.agent);
  check->add_option("--vectors", ca.vectors, "e.g. \"1,-1;1,1\"");
  check->add_option("--levels", ca.levels, "Extra utility levels to probe");
  check->add_option("--money", ca.money, "Money grid (gross-substitutes)");

  std::string solve_mode, solve_doc;
  auto* solve = app.add_subcommand("solve", "Find a competitive equilibrium");
  solve->add_option("mode", solve_mode)->required()->check(CLI::IsMember({"tu", "income"}));
  solve->add_option("document", solve_doc)->required();

  std::string v_doc, v_price, v_alloc;
  auto* verify = app.add_subcommand("verify-ce", "Verify a competitive equilibrium");
  verify->add_option("document", v_doc)->required();
  verify->add_option("--price", v_price)->required();
  verify->add_option("--alloc", v_alloc, "e.g. \"1,0;0,1\"")->required();

  std::string p_mode, p_doc, p_alloc, p_money;
  auto* pareto = app.add_subcommand("pareto", "Pareto efficiency and support");
  pareto->add_option("mode", p_mode)->required()->check(CLI::IsMember({"check", "support"}));
  pareto->add_option("document", p_doc)->required();
  pareto->add_option("--alloc", p_alloc);
  pareto->add_option("--money", p_money);

  std::string d_doc, d_levels;
  std::size_t d_samples = 5;
  auto* duality = app.add_subcommand("duality-probe", "Compare Hicksian and market sides");
  duality->add_option("document", d_doc)->required();
  duality->add_option("--levels", d_levels, "Per-agent levels, e.g. \"1/2,1;3,7\"");
  duality->add_option("--samples", d_samples, "Random endowment allocations")
      ->capture_default_str();

  std::string c_kind, c_doc, c_agent, c_vectors, c_z;
  auto* counter = app.add_subcommand("counterexample", "Build an economy without equilibrium");
  counter->add_option("kind", c_kind)->required()->check(
      CLI::IsMember({"substitutes", "unimodular"}));
  counter->add_option("document", c_doc);
  counter->add_option("--agent", c_agent);
  counter->add_option("--vectors", c_vectors);
  counter->add_option("--z", c_z, "Interior lattice point");

  std::string f_name, f_out;
  auto* fix = app.add_subcommand("fixtures", "Emit the example economies");
  fix->add_option("name", f_name);
  fix->add_option("--out", f_out, "Directory to write NAME.json files into");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kComputed : kInputError;
  }

  try {
    Report r;
    if (demand->parsed()) {
      r = cmd_demand(da);
    } else if (hv->parsed()) {
      r = cmd_hicksian_valuation(hv_doc, hv_agent, hv_level);
    } else if (check->parsed()) {
      r = cmd_check(ca);
    } else if (solve->parsed()) {
      r = cmd_solve(solve_mode, solve_doc, o);
    } else if (verify->parsed()) {
      r = cmd_verify(v_doc, v_price, v_alloc);
    } else if (pareto->parsed()) {
      r = cmd_pareto(p_mode, p_doc, p_alloc, p_money);
    } else if (duality->parsed()) {
      r = cmd_duality(d_doc, d_levels, d_samples, o);
    } else if (counter->parsed()) {
      r = cmd_counterexample(c_kind, c_doc, c_agent, c_vectors, c_z);
    } else {
      r = cmd_fixtures(f_name, f_out);
    }
    if (o.format == "json") {
      r.data["exit_code"] = r.code;
      out << r.data.dump(2) << "\n";
    } else {
      out << r.text.str();
    }
    return r.code;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace indiv::cli
