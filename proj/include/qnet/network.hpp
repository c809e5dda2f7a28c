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

// Exact Born-rule evaluation of triangle and chain networks.
//
// Triangle wiring. Sources are ordered (alpha, beta, gamma): alpha links
// Bob and Charlie, beta links Charlie and Alice, gamma links Alice and Bob.
// The first qubit of alpha goes to Bob, of beta to Charlie, of gamma to
// Alice. Each party holds its qubits as (previous source, next source) in
// the cycle, i.e. Alice (beta, gamma), Bob (gamma, alpha), Charlie
// (alpha, beta), the same wiring as P(a|beta,gamma) P(b|gamma,alpha)
// P(c|alpha,beta) in a 3-local model.
//
// Chain wiring. Source i holds qubits (l_i, r_i). Alice measures l_0,
// middle party i measures (r_{i-1}, l_i), Charlie measures r_{n-1}.
// End parties measure along a Bloch direction u per input; outcome 0 is the
// +1 eigenvalue of u.sigma, outcome 1 the -1 eigenvalue.

#pragma once

#include "qnet/correlation_table.hpp"
#include "qnet/measurements.hpp"
#include "qnet/quantum_core.hpp"

#include <array>
#include <filesystem>
#include <vector>

#include <json.hpp>

namespace qnet {

enum class Topology { triangle, chain };

struct EndSettings {
    std::vector<BlochVector> x;  // Alice, one direction per input
    std::vector<BlochVector> y;  // Charlie
};

struct NetworkScenario {
    Topology topology = Topology::triangle;
    std::vector<double> visibilities;
    std::vector<Operator> sources;
    JointBasis measurement;
    EndSettings end_settings;  // chain only

    std::size_t n_sources() const { return sources.size(); }
};

/// Werner sources with the given visibilities; validates the basis.
NetworkScenario make_triangle_scenario(const JointBasis &measurement, std::array<double, 3> visibilities);
NetworkScenario make_chain_scenario(int n_sources, std::span<const double> visibilities, EndSettings settings,
                                    const JointBasis &middle_measurement);

CorrelationTable evaluate(const NetworkScenario &scenario);

/// 4x4x4 table p(a, b, c).
CorrelationTable triangle_correlation(const JointBasis &measurement, std::array<double, 3> visibilities);

/// Table over parties (Alice, middle_1..middle_{n-1}, Charlie) with
/// outcome alphabets (2, 4, ..., 4, 2) and inputs (|x|, 1, ..., 1, |y|).
CorrelationTable chain_correlation(int n_sources, std::span<const double> visibilities, const EndSettings &settings,
                                   const JointBasis &middle_measurement);

/// Same chain evaluated on arbitrary two-qubit source states.
CorrelationTable chain_correlation(std::span<const Operator> sources, const EndSettings &settings,
                                   const JointBasis &middle_measurement);

/// The BSM triangle with noiseless singlets.
CorrelationTable bsm_triangle_reference();

/// Normalised Alice-Charlie state after the middle party of a two-source
/// chain projects its qubits onto `middle_outcome`.
Operator swapped_state(const Operator &rho1, const Operator &rho2, const Ket &middle_outcome);

/// Werner visibility of rho relative to a maximally entangled `reference`:
/// (4 <ref|rho|ref> - 1) / 3.
double visibility_relative_to(const Operator &rho, const Ket &reference);

/// Scenario file:
/// {"topology": "triangle"|"chain", "n_sources": int, "visibilities": [..],
///  "measurement": "ejm"|"bsm", "convention": "invariant_first"|"paper_literal",
///  "end_settings": [[[x,y,z], ..], [[x,y,z], ..]]}
NetworkScenario scenario_from_json(const nlohmann::json &j);
NetworkScenario load_scenario(const std::filesystem::path &path);

}  // namespace qnet
