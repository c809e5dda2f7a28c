// Copyright 2026 The qnet Authors
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

#pragma once

#include "qnet/correlation_table.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace qnet {

/// {"outcome_alphabets": [..], "input_alphabets": [..], "probabilities": [..]}
/// with probabilities in the table's storage order.
nlohmann::ordered_json table_to_json(const CorrelationTable &t);
/// Throws ValidationError on malformed input.
CorrelationTable table_from_json(const nlohmann::json &j);
CorrelationTable load_table(const std::filesystem::path &path);
nlohmann::json load_json(const std::filesystem::path &path);

/// Serialises with two-space indentation and every float printed with 17
/// significant digits, so equal values always produce equal bytes.
std::string dump_json(const nlohmann::ordered_json &j);

/// One row per cell with a header line. Input columns come first (x for
/// the first party, y for the last, when present), then one column per
/// party (a, b or b1..bk, c) and p. Inputs and outcomes are printed 1-based.
std::string table_to_csv(const CorrelationTable &t);

}  // namespace qnet
