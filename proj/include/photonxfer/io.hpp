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

// JSON and CSV serialization.
//
// Complex numbers are [re, im] pairs and matrices are arrays of rows. Object
// keys keep insertion order so that identical inputs give identical bytes.
// A system file looks like
//
//   {"schema": "photonxfer-system/1", "n": 1, "m": 2,
//    "omega": [[[0, 0]]],
//    "coupling": [[[1, 0]], [[1.414, 0]]],
//    "scattering": [[[0.6, 0], [0.8, 0]], [[0.8, 0], [-0.6, 0]]]}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "photonxfer/scenarios.hpp"

namespace photonxfer::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSystemSchema = "photonxfer-system/1";

Json to_json(Complex c);
Json to_json(const ComplexVector& v);
Json to_json(const ComplexMatrix& m);

/// Parsers throw InputError naming the offending field, e.g.
/// "coupling[1][0]: expected [re, im] pair".
Complex complex_from_json(const Json& j, const std::string& field);
ComplexVector vector_from_json(const Json& j, const std::string& field);
ComplexMatrix matrix_from_json(const Json& j, const std::string& field,
                               Eigen::Index rows, Eigen::Index cols);

Json system_to_json(const PassiveSystem& sys);
/// Checks the schema tag, the declared sizes and the structure of every
/// field. Physical validity is left to validate().
PassiveSystem system_from_json(const Json& j);
PassiveSystem load_system(const std::filesystem::path& path);

Json to_json(const ValidationReport& rep);
Json to_json(const ZeroRecord& rec);
Json to_json(const std::vector<ZeroRecord>& zeros);
Json to_json(const PulsePlan& plan);
Json to_json(const TransferReport& rep);
Json to_json(const ComparisonRow& row);
Json to_json(const RegressionResult& res);

Json scenario_to_json(const ScenarioSpec& spec);
/// {"name": "example3", "parameters": {"alpha": 0.6, "A1": [-0.5, 0]}}.
/// Real parameters may be plain numbers.
ScenarioSpec scenario_from_json(const Json& j);
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// Parses a whole file, reporting the line and column of syntax errors.
Json read_json(const std::filesystem::path& path);

/// Pretty-printed JSON followed by a newline.
std::string dump(const Json& j);

/// Columns t, then re/im of every mode amplitude, then re/im of every output
/// channel amplitude.
std::string trajectory_csv(const ExcitationTrajectory& traj);
/// Columns t, then re/im of every input channel.
std::string pulse_csv(const PulsePlan& plan, double t_start, double step,
                      std::size_t count);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& data);

}  // namespace photonxfer::io
