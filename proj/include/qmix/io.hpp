// Copyright 2026 The qmix Authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qmix/density.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/scenario.hpp"

// JSON serialization. Matrix files look like
//   {"rows": 2, "cols": 2, "alpha": [[[re, im], ...], ...], "beta": [...]}
// with "beta" optional (zero when absent). Keys are emitted in that order
// and doubles in shortest round-trip form, so output is byte-stable.
namespace qmix::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const QMatrix& m);
Json to_json(const CMatrix& m);  // matrix file without "beta"

/// Throws SchemaError naming the JSON pointer of the offending node.
QMatrix matrix_from_json(const Json& j);

std::string serialize_matrix(const QMatrix& m);
QMatrix parse_matrix(std::string_view text);

QMatrix load_matrix(const std::filesystem::path& path);

/// A matrix file (constant generator) or {"span": T, "samples": [matrix, ...]}.
Generator generator_from_json(const Json& j);
Generator load_generator(const std::filesystem::path& path);

Json to_json(const QDensity& rho);
Json to_json(const ScenarioReport& report);
Json to_json(const PropositionSummary& summary);

}  // namespace qmix::io
