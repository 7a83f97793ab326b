// Copyright 2026 The photonxfer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   photonxfer validate --system PATH
//   photonxfer zeros    --system PATH
//   photonxfer pulse    --system PATH --construction TAG [--coeffs ...]
//   photonxfer simulate --system PATH --construction TAG [--coeffs ...]
//   photonxfer demo     {example1|example2|example3|example4|all}
//
// JSON goes to standard output (or --out), diagnostics to standard error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "photonxfer/numerics.hpp"

namespace photonxfer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitInputError = 2;

/// Parses "re,im;re,im;..." (an entry may omit its imaginary part). Throws
/// InputError naming the offending entry.
std::vector<Complex> parse_coefficients(const std::string& text);

/// Runs one command line. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace photonxfer::cli
