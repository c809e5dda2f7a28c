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

// CHSH and bilocality evaluation on chain tables, plus the visibility
// thresholds for entanglement swapping.
//
// Binary outcomes are read as values +1 (outcome 0) and -1 (outcome 1).

#pragma once

#include "qnet/correlation_table.hpp"
#include "qnet/measurements.hpp"
#include "qnet/network.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnet {

enum class InequalityKind { chsh, bilocality };

std::string_view to_string(InequalityKind kind);

struct InequalityResult {
    InequalityKind name = InequalityKind::chsh;
    double value = 0.0;
    double bound = 0.0;
    bool violated = false;
    std::string settings_used;
};

inline constexpr double kViolationMargin = 1e-9;

/// s(x, y) multiplies the correlator E(x, y) before the CHSH sum.
using SignTable = std::array<std::array<int, 2>, 2>;
inline constexpr SignTable kNoCorrection{{{1, 1}, {1, 1}}};

/// |E00 + E01 + E10 - E11| of a two-party table with binary outcomes and
/// two inputs per party; bound 2. Throws UsageError on other shapes.
InequalityResult chsh_value(const CorrelationTable &t, const SignTable &signs = kNoCorrection,
                            std::string settings_used = {});

/// Values (+1/-1) of the two bits carried by one middle-party outcome.
struct OutcomeBits {
    int b0 = 1;
    int b1 = 1;
};

/// sqrt|I| + sqrt|J| with I = 1/4 sum <A_x B0 C_y> and
/// J = 1/4 sum (-1)^(x+y) <A_x B1 C_y>; bound 1. `bits` gives the
/// decomposition of each middle outcome; UsageError if it is missing or the
/// table is not a two-source chain with binary ends and two inputs each.
InequalityResult bilocality_value(const CorrelationTable &t, std::span<const OutcomeBits> bits,
                                  std::string settings_used = {});

/// Bit values of each basis outcome, read off as the eigenvalues of
/// sigma_z (x) sigma_z and sigma_x (x) sigma_x. Throws UsageError when a ket
/// is not a joint eigenstate of both.
std::vector<OutcomeBits> bit_decomposition(const JointBasis &basis);

/// Alice {z, x}, Charlie {(z+x)/sqrt2, (z-x)/sqrt2}.
EndSettings chsh_optimal_settings();
/// Both ends in the +-45 degree bases {(z+x)/sqrt2, (z-x)/sqrt2}.
EndSettings bilocal_optimal_settings();
std::string describe(const EndSettings &settings);

/// Index k in {0: identity, 1: x, 2: y, 3: z} such that
/// |bell> = (sigma_k (x) 1)|psi-> up to phase; UsageError if none.
int pauli_relating_to_singlet(const Ket &bell);

/// Sign table that maps the correlators of the Bell state `bell` onto those
/// of the singlet for the given settings. The Pauli correction acts on
/// Alice's side, so each Alice direction must be mapped onto +-itself; throws
/// UsageError otherwise.
SignTable correction_signs(const Ket &bell, const EndSettings &settings);

enum class SwapScenario { chsh_swap, bilocal };

struct ThresholdReport {
    SwapScenario scenario = SwapScenario::chsh_swap;
    double w1 = 0.0;
    double w2 = 0.0;
    double product = 0.0;
    double chsh_product_threshold = 0.0;      // 1/sqrt2
    double bilocal_product_threshold = 0.0;   // 1/2
    double chsh_symmetric_threshold = 0.0;    // 2^(-1/4)
    double bilocal_symmetric_threshold = 0.0; // 2^(-1/2)
    bool chsh_violated = false;
    bool bilocal_violated = false;
    bool violated = false;  // for the selected scenario
};

ThresholdReport threshold_report(SwapScenario scenario, double w1, double w2);

}  // namespace qnet
