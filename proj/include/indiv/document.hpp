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


#ifndef INDIV_DOCUMENT_HPP_
#define INDIV_DOCUMENT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indiv/core.hpp"

namespace indiv {

/// An economy as stored on disk, optionally with a demand type vector set.
///
///   {
///     "goods": ["good1", "good2"],
///     "total_endowment": [1, 1],
///     "agents": [
///       {"name": "j", "utility": "quasilog",
///        "values": {"0,0": "-11", "0,1": "-7", ...},
///        "money_floor": "0",
///        "endowment": {"money": "3", "goods": [0, 1]}},
///       {"name": "t", "utility": "tabulated", "levels": ["1/2", "1"],
///        "values": [{...}, {...}], "money_floor": null}
///     ],
///     "vectors": [[1, -1], [1, 1]]
///   }
///
/// Rationals are "p/q" strings; plain integers are accepted on input.
struct EconomyDocument {
  Economy economy;
  std::optional<std::vector<Bundle>> vectors;

  friend bool operator==(const EconomyDocument&,
                         const EconomyDocument&) = default;
};

/// Throws kParse with a line/column or field path on malformed input, and the
/// validation errors of validate_economy on inconsistent economies.
EconomyDocument parse_document(std::string_view text);
std::string serialize_document(const EconomyDocument& doc);
EconomyDocument load_document(const std::string& path);

/// Names accepted by fixture_document.
std::vector<std::string> fixture_document_names();
EconomyDocument fixture_document(std::string_view name);

}  // namespace indiv

#endif  // INDIV_DOCUMENT_HPP_
