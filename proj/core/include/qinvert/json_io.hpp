// Copyright 2026 The qinvert Authors
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

#pragma once

// JSON encodings shared by the library and the CLI.
//
//   ComplexMatrix   {"dim": D, "data": [[re, im], ...]}           row-major, D^2 entries
//   SuperOperator   {"dim": D, "lr_matrix": [[re, im], ...]}      row-major, D^4 entries
//   BipartiteState  {"dims": [D1, D2], "kind": "pure"|"density",
//                    "data": [[re, im], ...]}                     D1*D2 or (D1*D2)^2 entries
//
// Schema violations throw ParseError; well-formed but physically invalid
// states throw InvalidStateError.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "qinvert/entanglement.hpp"
#include "qinvert/superoperator.hpp"

namespace qinvert {

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);

nlohmann::json superop_to_json(const SuperOperator& s);
SuperOperator superop_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const nlohmann::json& j);

/// Reads and parses a JSON document. Throws ParseError on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace qinvert
