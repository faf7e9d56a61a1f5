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


#ifndef INDIV_CLI_HPP_
#define INDIV_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace indiv::cli {

enum ExitCode : int {
  kComputed = 0,
  /// A checked property fails, or no equilibrium exists.
  kNegative = 1,
  kInputError = 2,
  kSearchExhausted = 3,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace indiv::cli

#endif  // INDIV_CLI_HPP_
