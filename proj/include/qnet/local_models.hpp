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

// Classical 3-local models of the triangle.
//
// Hidden variables are ordered (alpha, beta, gamma). Alice reads
// (beta, gamma), Bob (gamma, alpha), Charlie (alpha, beta), i.e. party p
// reads sources ((p + 1) % 3, (p + 2) % 3).

#pragma once

#include "qnet/correlation_table.hpp"

#include <array>
#include <cstddef>
#include <vector>

#include <json.hpp>

namespace qnet {

inline constexpr double kModelTolerance = 1e-12;

struct LocalModel {
    std::array<int, 3> alphabets{1, 1, 1};
    int outcomes = 4;
    std::array<std::vector<double>, 3> sources;
    /// responses[p][(first * |second| + second) * outcomes + o], with
    /// (first, second) the sources read by party p.
    std::array<std::vector<double>, 3> responses;

    /// Size checks throw ConfigurationError, probability checks ValidationError.
    void validate() const;

    static constexpr std::size_t first_source(std::size_t party) { return (party + 1) % 3; }
    static constexpr std::size_t second_source(std::size_t party) { return (party + 2) % 3; }
    std::size_t response_rows(std::size_t party) const;
};

/// Sum over hidden values of P(alpha)P(beta)P(gamma) A B C; a 3-party
/// table with `outcomes` per party.
CorrelationTable evaluate_model(const LocalModel &m);

/// Each hidden value is a uniform 4-dit together with a bit that is 1 with
/// probability q (index dit + 4 * bit). A party reading (first, second)
/// outputs second's dit if first's bit is 0 and second's bit 1, first's dit
/// in the opposite case, and either dit with probability 1/2 otherwise.
/// Throws RangeError for q outside [0, 1].
LocalModel symmetric_q_model(double q);
/// Same model with a separate bit bias per source.
LocalModel symmetric_q_model(double q_alpha, double q_beta, double q_gamma);

/// (13 + 9q - 9q^2) / 64. Throws RangeError for q outside [0, 1].
double q_model_abc_rate(double q);

/// Binary sources, each (0, 1) or (1, 0) with probability 1/2, with
/// deterministic responses. Source value v stands for the pair (v, 1 - v);
/// alpha's first bit goes to Bob and its second to Charlie, beta's to Charlie
/// and Alice, gamma's to Alice and Bob.
LocalModel asymmetric_model();

/// {"alphabets": [..], "sources": [[..], [..], [..]],
///  "responses": {"A": [[..], ..], "B": .., "C": ..}}. One response row per
/// (first, second) pair in row-major order.
nlohmann::ordered_json model_to_json(const LocalModel &m);
LocalModel model_from_json(const nlohmann::json &j);

}  // namespace qnet
