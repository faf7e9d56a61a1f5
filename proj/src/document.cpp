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


#include "indiv/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "indiv/fixtures.hpp"

namespace indiv {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kParse, path + ": " + msg);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

Rational read_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) fail(path, "expected a rational string such as \"3/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Bundle read_bundle(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an integer array");
  Bundle b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer())
      fail(path + "[" + std::to_string(i) + "]", "expected an integer");
    b[i] = v[i].get<std::int64_t>();
  }
  return b;
}

Valuation read_table(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object keyed \"q1,q2,...\"");
  std::map<Bundle, Rational> values;
  for (const auto& [key, val] : v.items()) {
    std::string p = path + "[\"" + key + "\"]";
    Bundle x;
    try {
      x = parse_bundle(key);
    } catch (const Error& e) {
      fail(p, e.what());
    }
    if (!values.emplace(x, read_rational(val, p)).second)
      fail(p, "duplicate bundle");
  }
  try {
    return Valuation(std::move(values));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::optional<Rational> read_floor(const json& agent, const std::string& path) {
  auto it = agent.find("money_floor");
  if (it == agent.end() || it->is_null()) return std::nullopt;
  return read_rational(*it, path + ".money_floor");
}

Agent read_agent(const json& a, const std::string& path) {
  const json& name = field(a, path, "name");
  if (!name.is_string()) fail(path + ".name", "expected a string");
  const json& kind = field(a, path, "utility");
  if (!kind.is_string()) fail(path + ".utility", "expected a string");
  const std::string k = kind.get<std::string>();
  auto floor = read_floor(a, path);
  const json& values = field(a, path, "values");
  try {
    if (k == "quasilinear") {
      if (floor) fail(path + ".money_floor", "quasilinear agents have no floor");
      return {name.get<std::string>(),
              Quasilinear{read_table(values, path + ".values")}};
    }
    if (k == "quasilog") {
      if (floor && *floor != 0)
        fail(path + ".money_floor", "quasilog agents have floor 0");
      return {name.get<std::string>(),
              Quasilog{read_table(values, path + ".values")}};
    }
    if (k == "tabulated") {
      const json& levels = field(a, path, "levels");
      if (!levels.is_array()) fail(path + ".levels", "expected an array");
      if (!values.is_array()) fail(path + ".values", "expected an array");
      TabulatedFamily f;
      for (std::size_t i = 0; i < levels.size(); ++i)
        f.levels.push_back(
            read_rational(levels[i], path + ".levels[" + std::to_string(i) + "]"));
      for (std::size_t i = 0; i < values.size(); ++i)
        f.valuations.push_back(
            read_table(values[i], path + ".values[" + std::to_string(i) + "]"));
      f.money_floor = floor;
      return {name.get<std::string>(), std::move(f)};
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    fail(path, e.what());
  }
  fail(path + ".utility",
       "unknown kind '" + k + "' (quasilinear, quasilog or tabulated)");
}

json write_rational(const Rational& r) { return format_rational(r); }

json write_bundle(const Bundle& b) {
  json a = json::array();
  for (auto q : b.quantities()) a.push_back(q);
  return a;
}

json write_table(const Valuation& v) {
  json o = json::object();
  for (const auto& [x, val] : v.entries()) o[format_bundle(x)] = write_rational(val);
  return o;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

EconomyDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " +
                    (pos == std::string::npos ? what : what.substr(pos)));
  }
  if (!root.is_object()) fail("document", "expected an object");
  EconomyDocument doc;
  Economy& e = doc.economy;
  const json& goods = field(root, "document", "goods");
  if (!goods.is_array()) fail("goods", "expected an array of names");
  for (std::size_t i = 0; i < goods.size(); ++i) {
    if (!goods[i].is_string())
      fail("goods[" + std::to_string(i) + "]", "expected a string");
    e.goods.push_back(goods[i].get<std::string>());
  }
  e.total_endowment =
      read_bundle(field(root, "document", "total_endowment"), "total_endowment");
  const json& agents = field(root, "document", "agents");
  if (!agents.is_array()) fail("agents", "expected an array");
  std::size_t endowed = 0;
  EndowmentAllocation endow;
  for (std::size_t j = 0; j < agents.size(); ++j) {
    std::string path = "agents[" + std::to_string(j) + "]";
    e.agents.push_back(read_agent(agents[j], path));
    auto it = agents[j].find("endowment");
    if (it != agents[j].end() && !it->is_null()) {
      ++endowed;
      endow.push_back(
          {read_rational(field(*it, path + ".endowment", "money"),
                         path + ".endowment.money"),
           read_bundle(field(*it, path + ".endowment", "goods"),
                       path + ".endowment.goods")});
    }
  }
  if (endowed != 0 && endowed != agents.size())
    fail("agents", "either every agent or no agent carries an endowment");
  if (endowed != 0) e.endowment = std::move(endow);
  if (auto it = root.find("vectors"); it != root.end() && !it->is_null()) {
    if (!it->is_array()) fail("vectors", "expected an array of integer arrays");
    std::vector<Bundle> vs;
    for (std::size_t i = 0; i < it->size(); ++i)
      vs.push_back(read_bundle((*it)[i], "vectors[" + std::to_string(i) + "]"));
    doc.vectors = std::move(vs);
  }
  validate_economy(e);
  if (e.endowment) validate_endowment(e, *e.endowment);
  return doc;
}

std::string serialize_document(const EconomyDocument& doc) {
  const Economy& e = doc.economy;
  json root = json::object();
  root["goods"] = e.goods;
  root["total_endowment"] = write_bundle(e.total_endowment);
  json agents = json::array();
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    const Agent& a = e.agents[j];
    json o = json::object();
    o["name"] = a.name;
    o["utility"] = std::string(a.utility.kind());
    if (const auto* f = std::get_if<TabulatedFamily>(&a.utility.variant())) {
      json levels = json::array();
      for (const auto& l : f->levels) levels.push_back(write_rational(l));
      o["levels"] = std::move(levels);
      json tables = json::array();
      for (const auto& v : f->valuations) tables.push_back(write_table(v));
      o["values"] = std::move(tables);
    } else {
      o["values"] = write_table(a.utility.base());
    }
    auto floor = a.utility.money_floor();
    o["money_floor"] = floor ? write_rational(*floor) : json(nullptr);
    if (e.endowment) {
      const auto& c = (*e.endowment)[j];
      o["endowment"] = {{"money", write_rational(c.money)},
                        {"goods", write_bundle(c.goods)}};
    }
    agents.push_back(std::move(o));
  }
  root["agents"] = std::move(agents);
  if (doc.vectors) {
    json vs = json::array();
    for (const auto& v : *doc.vectors) vs.push_back(write_bundle(v));
    root["vectors"] = std::move(vs);
  }
  return root.dump(2) + "\n";
}

EconomyDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::vector<std::string> fixture_document_names() {
  std::vector<std::string> out;
  for (const auto& f : fixtures::fixture_names()) out.push_back(f.name);
  return out;
}

EconomyDocument fixture_document(std::string_view name) {
  if (name == "ex34") return {fixtures::housing_market(), std::nullopt};
  if (name == "ex44a") return {fixtures::complements(), std::nullopt};
  if (name == "ex44b") return {fixtures::income_effects(), std::nullopt};
  if (name == "ex52") return {fixtures::demand_type_economy(), std::nullopt};
  if (name == "ex53")
    return {fixtures::five_good_economy(),
            fixtures::five_good_vectors().representatives()};
  throw Error(ErrorCode::kInvalidArgument,
              "unknown fixture '" + std::string(name) + "'");
}

}  // namespace indiv
