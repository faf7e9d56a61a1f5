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


// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "generators.hpp"
#include "indiv/cli.hpp"
#include "indiv/demand.hpp"
#include "indiv/document.hpp"
#include "indiv/equilibrium.hpp"
#include "indiv/fixtures.hpp"
#include "indiv/hicksian.hpp"
#include "indiv/structure.hpp"
#include "oracles/brute_force.hpp"
#include "oracles/fourier_motzkin.hpp"
#include "oracles/market.hpp"

namespace {

using namespace indiv;
using json = nlohmann::json;
using R = Rational;
namespace fs = std::filesystem;

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

fs::path g_dir;

std::string fx(const std::string& name) { return (g_dir / (name + ".json")).string(); }

json cli_json(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), {"--format", "json"});
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  try {
    return json::parse(out.str());
  } catch (const json::exception&) {
    return json::object();
  }
}

std::vector<Bundle> sorted(std::vector<Bundle> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void criterion1(Check& c) {
  int code = 0;
  auto j = cli_json({"solve", "tu", fx("ex44a")}, code);
  c.expect(code == cli::kNegative, "exit code " + std::to_string(code));
  c.expect(j.value("outcome", "") == "not-found", "outcome");
  c.expect(j.value("certificate_verified", false), "certificate does not recheck");
  c.expect(j["allocation"] == json::parse("[[1,1],[0,0]]"), "welfare-max allocation");
  std::set<std::string> rows;
  for (const auto& r : j["certificate"]) rows.insert(r["constraint"].get<std::string>());
  c.expect(rows == std::set<std::string>{"p1 + p2 <= 5", "-p1 <= -4", "-p2 <= -3"},
           "certificate rows");
  c.expect(j.value("certificate_sum", "") == "0 <= -1", "certificate sum");

  // Independent recheck of the library outcome.
  auto out = solve_tu_ce(as_tu_economy(fixtures::complements()));
  const auto* nf = std::get_if<NotFound>(&out);
  c.expect(nf && nf->has_certificate(), "library outcome");
  if (nf && nf->has_certificate()) {
    const auto& cert = std::get<FarkasCertificate>(nf->reason);
    c.expect(verify_certificate(*nf->system, cert), "library certificate");
    c.expect(!oracle::fm_feasible(*nf->system), "Fourier-Motzkin finds a price");
  }
  c.summary = "certificate rows {p1 + p2 <= 5, -p1 <= -4, -p2 <= -3} sum to 0 <= -1";
}

void criterion2(Check& c) {
  int code = 0;
  auto j = cli_json({"solve", "income", fx("ex44b")}, code);
  c.expect(code == cli::kComputed, "exit code " + std::to_string(code));
  c.expect(j.value("outcome", "") == "found", "outcome");
  c.expect(j["price"] == json::parse(R"(["3","2"])"), "price " + j["price"].dump());
  c.expect(j["allocation"] == json::parse("[[1,0],[0,1]]"), "allocation");
  c.expect(j.value("verified", false), "cli verification");

  const Economy e = fixtures::income_effects();
  c.expect(verify_ce(e, *e.endowment, PriceVector{3, 2}, {{1, 0}, {0, 1}}),
           "verify_ce at (3,2)");
  const Agent& aj = e.agents[0];
  const auto& wj = (*e.endowment)[0];
  c.expect(marshallian_demand(aj, PriceVector{2, 2}, wj) == DemandSet{{1, 1}},
           "Marshallian demand at (2,2)");
  c.expect(marshallian_demand(aj, PriceVector{4, 2}, wj) == DemandSet{{0, 0}},
           "Marshallian demand at (4,2)");
  UtilityLevel u{R(5, 11)};
  c.expect(hicksian_demand(aj, PriceVector{2, 2}, u) == DemandSet{{1, 0}},
           "Hicksian demand at (2,2)");
  c.expect(hicksian_demand(aj, PriceVector{4, 2}, u) == DemandSet{{0, 0}},
           "Hicksian demand at (4,2)");
  c.summary = "found p=(3,2), allocation ((1,0),(0,1)); demand tables match";
}

void criterion3(Check& c) {
  auto v = fixtures::demand_type_valuation();
  auto d = minimal_demand_type(v).representatives();
  c.expect(sorted(d) == sorted({{1, 0}, {0, 1}, {1, -1}}), "minimal demand type");
  auto u = uniquely_demanded(v);
  c.expect(sorted(u) == sorted({{0, 0}, {0, 3}, {1, 3}, {3, 0}, {3, 1}}),
           "uniquely demanded bundles");
  c.expect(sorted(oracle::fm_uniquely_demanded(v)) == sorted(u),
           "Fourier-Motzkin oracle disagrees");
  c.summary = "+-{(1,0),(0,1),(1,-1)}; {(0,0),(0,3),(1,3),(3,0),(3,1)}";
}

void criterion4(Check& c) {
  c.expect(!is_unimodular(DemandTypeVectorSet({{1, -1}, {1, 1}})), "+-{(1,-1),(1,1)}");
  for (std::size_t n = 2; n <= 4; ++n)
    c.expect(is_unimodular(strong_substitutes_vectors(n)),
             "strong substitutes, " + std::to_string(n) + " goods");
  c.expect(is_unimodular(fixtures::five_good_vectors()), "five-good set");

  std::mt19937 rng(20261015);
  std::uniform_int_distribution<int> entry(-2, 2), count(1, 5), dim(1, 4);
  int agree = 0, positive = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    std::vector<Bundle> vs;
    int k = count(rng);
    while (static_cast<int>(vs.size()) < k) {
      Bundle d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = entry(rng);
      if (!d.is_zero()) vs.push_back(primitive(d));
    }
    DemandTypeVectorSet set(vs);
    bool got = is_unimodular(set);
    positive += got;
    bool want = oracle::parallelepiped_unimodular(set);
    agree += got == want;
    c.expect(got == want, "random set " + std::to_string(t));
  }
  c.summary = std::to_string(agree) + "/1000 random sets agree with the oracle (" +
              std::to_string(positive) + " unimodular)";
}

// Five distinct levels per agent taken from its utility at the sampled
// endowments, padded geometrically.
std::vector<std::vector<UtilityLevel>> level_grid(
    const Economy& e, const std::vector<EndowmentAllocation>& samples) {
  std::vector<std::vector<UtilityLevel>> grid;
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    std::set<R> levels;
    for (const auto& s : samples) levels.insert(utility_key(e.agents[j], s[j]));
    R top = *levels.rbegin();
    while (levels.size() < 5) {
      top *= 2;
      levels.insert(top);
    }
    std::vector<UtilityLevel> g;
    for (const auto& l : levels) {
      if (g.size() == 5) break;
      g.push_back({l});
    }
    grid.push_back(std::move(g));
  }
  return grid;
}

void criterion5(Check& c) {
  std::mt19937 rng(5);
  int all_found = 0, with_witness = 0, witnesses = 0, found = 0;
  for (int t = 0; t < 200; ++t) {
    auto agents = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    auto goods = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    auto mk = gen::random_quasilog(rng, agents, goods, 4);
    const Economy& e = mk.economy;
    std::vector<EndowmentAllocation> samples;
    for (int s = 0; s < 5; ++s) samples.push_back(gen::random_endowment(rng, e));
    auto grid = level_grid(e, samples);
    auto rep = duality_probe(e, grid, samples);
    const std::string tag = "economy " + std::to_string(t) + ": ";
    c.expect(rep.exact, tag + "not exact");
    for (const auto& v : rep.violations) c.expect(false, tag + v);

    bool everywhere = std::all_of(rep.hicksian.begin(), rep.hicksian.end(),
                                  [](const HicksianProbe& p) { return p.found; });
    all_found += everywhere;
    std::size_t w = rep.marshallian.size() - samples.size();
    with_witness += w > 0;
    witnesses += static_cast<int>(w);
    for (std::size_t i = 0; i < rep.marshallian.size(); ++i) {
      const auto& mp = rep.marshallian[i];
      const bool witness = i >= samples.size();
      if (everywhere && !witness)
        c.expect(mp.found, tag + "sample " + std::to_string(i) + " not found");
      if (witness) {
        c.expect(!mp.found, tag + "witness found");
        c.expect(mp.exists && !*mp.exists, tag + "witness has an equilibrium");
      }
      c.expect(!mp.exists || *mp.exists ==
                                  oracle::market_equilibrium_exists(e, mp.endowment),
               tag + "exact decision disagrees with the oracle");
      if (mp.found) {
        ++found;
        auto out = solve_income_ce(e, mp.endowment);
        const auto* f = std::get_if<Found>(&out);
        c.expect(f && verify_ce(e, mp.endowment, f->price, f->allocation),
                 tag + "positive witness does not verify");
      }
    }
  }
  c.summary = std::to_string(all_found) + "/200 economies with Hicksian equilibria on the grid, " +
              std::to_string(found) + " verified equilibria, " + std::to_string(witnesses) +
              " certificate witnesses in " + std::to_string(with_witness) + " economies";
}

std::vector<PriceVector> integer_prices(std::size_t goods, int lo, int hi) {
  std::vector<PriceVector> out;
  PriceVector p(goods, R(lo));
  while (true) {
    out.push_back(p);
    std::size_t i = 0;
    while (i < goods && p[i] == hi) p[i++] = lo;
    if (i == goods) return out;
    p[i] += 1;
  }
}

// Lattice prices in [-hi, hi]^n plus, along each coordinate line through
// them, both sides of every point where the agent's ranking of two bundles
// flips at some grid money level. Unaffordable bundles rank below all others.
std::vector<PriceVector> boundary_prices(const Agent& a, const Bundle& w,
                                         std::span<const R> money, int hi) {
  auto base = integer_prices(a.utility.goods(), -hi, hi);
  std::set<PriceVector> out(base.begin(), base.end());
  auto xs = a.utility.feasible_set();
  for (const auto& p : base) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (const auto& m : money) {
        for (std::size_t s = 0; s < xs.size(); ++s) {
          for (std::size_t t = s + 1; t < xs.size(); ++t) {
            const auto d = xs[s][i] - xs[t][i];
            if (d == 0) continue;
            // Solve U(x_s, m - p.(x_s - w)) = U(x_t, m - p.(x_t - w)) for p_i
            // by bisection on the utility keys.
            PriceVector q = p;
            auto gap = [&](const R& pi) {
              q[i] = pi;
              ConsumptionBundle cs{m - dot(q, xs[s] - w), xs[s]};
              ConsumptionBundle ct{m - dot(q, xs[t] - w), xs[t]};
              bool fs = is_feasible_consumption(a, cs), ft = is_feasible_consumption(a, ct);
              if (!fs && !ft) return std::optional<R>{};
              if (!fs || !ft) return std::optional<R>{fs ? 1 : -1};
              return std::optional<R>{utility_key(a, cs) - utility_key(a, ct)};
            };
            R lo = -4 * hi, hi_p = 4 * hi;
            auto glo = gap(lo), ghi = gap(hi_p);
            if (!glo || !ghi || *glo == 0 || *ghi == 0 || (*glo > 0) == (*ghi > 0)) continue;
            for (int k = 0; k < 24; ++k) {
              R mid = (lo + hi_p) / 2;
              auto g = gap(mid);
              if (!g) break;
              if ((*g > 0) == (*glo > 0)) lo = mid; else hi_p = mid;
            }
            q[i] = lo;
            out.insert(q);
            q[i] = hi_p;
            out.insert(q);
          }
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

bool sampled_gross(const Agent& a, const Bundle& w) {
  std::vector<R> money{1, 2, 3, 5, 8};
  std::vector<R> deltas{R(1, 4), 1, 2};
  auto prices = boundary_prices(a, w, money, 6);
  return is_gross_substitutes_at(a, w, money, prices, deltas);
}

void criterion6(Check& c) {
  std::mt19937 rng(6);
  int gross = 0, net = 0, separated = 0;
  for (int t = 0; t < 200; ++t) {
    auto goods = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    auto cube = gen::cube(goods);
    std::vector<Bundle> dom{Bundle(goods)};
    std::shuffle(cube.begin(), cube.end(), rng);
    auto size = static_cast<std::size_t>(gen::uniform(rng, 2, static_cast<int>(cube.size())));
    for (const auto& x : cube)
      if (dom.size() < size && !x.is_zero()) dom.push_back(x);
    Agent a{"a", Quasilog{gen::random_quasivaluation(rng, dom, 1, 12)}};
    Bundle w = dom[gen::uniform(rng, 0, static_cast<int>(dom.size()) - 1)];
    bool g = sampled_gross(a, w);
    bool n = is_net_substitutes(a);
    gross += g;
    net += n;
    separated += n && !g;
    c.expect(!g || n, "agent " + std::to_string(t) + " gross but not net");
  }
  const Economy ie = fixtures::income_effects();
  const Agent& j = ie.agents[0];
  bool fixture_net = is_net_substitutes(j);
  bool fixture_gross = sampled_gross(j, (*ie.endowment)[0].goods);
  c.expect(fixture_net && !fixture_gross, "fixture agent j does not separate");
  c.summary = std::to_string(gross) + "/200 gross, " + std::to_string(net) +
              " net, " + std::to_string(separated) +
              " net only; fixture agent j is net but not gross";
}

void criterion7(Check& c) {
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto houses = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    auto agents = static_cast<std::size_t>(gen::uniform(rng, static_cast<int>(houses), 4));
    auto mk = gen::random_housing(rng, houses, agents);
    const std::string tag = "economy " + std::to_string(t) + ": ";
    auto out = solve_income_ce(mk.economy, mk.endowment);
    const auto* f = std::get_if<Found>(&out);
    c.expect(f != nullptr, tag + "not found");
    if (f) c.expect(verify_ce(mk.economy, mk.endowment, f->price, f->allocation),
                    tag + "does not verify");
    c.expect(oracle::market_equilibrium_exists(mk.economy, mk.endowment),
             tag + "oracle finds no equilibrium");
  }
  c.summary = "100 housing markets solved, verified and confirmed by the oracle";
}

void criterion8(Check& c) {
  std::mt19937 rng(8);
  int built = 0, tries = 0;
  while (built < 50 && tries < 100000) {
    ++tries;
    auto goods = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
    std::map<Bundle, R> m;
    for (const auto& x : gen::cube(goods))
      m.emplace(x, x.is_zero() ? R(0) : R(gen::uniform(rng, 0, 10)));
    Valuation v(std::move(m));
    if (is_substitutes(v)) continue;
    ++built;
    auto ce = counterexample_substitutes(v);
    const std::string tag = "valuation " + std::to_string(built) + ": ";
    c.expect(ce.outcome.has_certificate(), tag + "constructor outcome");
    auto out = solve_tu_ce(ce.economy);
    const auto* nf = std::get_if<NotFound>(&out);
    c.expect(nf && nf->has_certificate(), tag + "solve_tu_ce found an equilibrium");
    if (nf && nf->has_certificate()) {
      c.expect(verify_certificate(*nf->system, std::get<FarkasCertificate>(nf->reason)),
               tag + "certificate");
      c.expect(!oracle::fm_feasible(*nf->system), tag + "Fourier-Motzkin finds a price");
    }
  }
  c.expect(built == 50, "only " + std::to_string(built) + " non-substitutes valuations");

  auto ce = counterexample_unimodular(std::vector<Bundle>{{1, -1}, {1, 1}});
  c.expect(is_pseudo_equilibrium(ce.economy, ce.price), "not a pseudo-equilibrium");
  auto out = solve_tu_ce(ce.economy);
  const auto* nf = std::get_if<NotFound>(&out);
  c.expect(nf && nf->has_certificate(), "unimodular counterexample has an equilibrium");
  if (nf && nf->has_certificate())
    c.expect(!oracle::fm_feasible(*nf->system), "Fourier-Motzkin finds a price");
  c.summary = "50 substitutes counterexamples and the +-{(1,-1),(1,1)} economy have no "
              "equilibrium; pseudo-equilibrium at (" + format_prices(ce.price) + ")";
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  g_dir = fs::temp_directory_path() / ("indiv_acceptance_" + std::to_string(::getpid()));
  {
    std::ostringstream out, err;
    if (cli::run({"fixtures", "--out", g_dir.string()}, out, err) != 0) {
      std::cerr << err.str();
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "complements: no equilibrium, certificate", 1, criterion1},
      {2, "income effects: equilibrium at (3,2)", 5, criterion2},
      {3, "demand type of the two-good example", 1, criterion3},
      {4, "unimodularity checker", 60, criterion4},
      {5, "Hicksian and market equilibria agree", 300, criterion5},
      {6, "gross substitutes imply net substitutes", 120, criterion6},
      {7, "housing markets have equilibria", 120, criterion7},
      {8, "counterexample constructors", 60, criterion8},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds)
      c.failures.push_back("took " + std::to_string(secs) + " s, limit " +
                           std::to_string(cr.limit_seconds) + " s");
    bool pass = c.failures.empty();
    failed += !pass;
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name
              << " (" << time.str() << " s)";
    if (!c.summary.empty()) std::cout << " - " << c.summary;
    std::cout << "\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i)
      std::cout << "    " << c.failures[i] << "\n";
    if (c.failures.size() > 10)
      std::cout << "    ... " << c.failures.size() - 10 << " more\n";
  }
  fs::remove_all(g_dir);
  return failed == 0 ? 0 : 1;
}
