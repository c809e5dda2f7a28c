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

#include "oracles.hpp"

#include "qnet/errors.hpp"
#include "qnet/inequalities.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qnet;

namespace {

const std::array<double, 4> kGrid{0.25, 0.5, 0.75, 1.0};

// Two-party table of a Werner state measured along the given directions.
CorrelationTable werner_table(double w, const EndSettings &s) {
    std::vector<double> p;
    for (const auto &x : s.x) {
        for (const auto &y : s.y) {
            for (int a = 0; a < 2; ++a) {
                for (int c = 0; c < 2; ++c) {
                    const oracle::M proj = oracle::kron(oracle::end_projector({x.x, x.y, x.z}, a),
                                                        oracle::end_projector({y.x, y.y, y.z}, c));
                    p.push_back((oracle::werner(w) * proj).trace().real());
                }
            }
        }
    }
    return CorrelationTable({2, 2}, {static_cast<int>(s.x.size()), static_cast<int>(s.y.size())}, p);
}

}  // namespace

TEST(Chsh, WernerStateWithOptimalSettings) {
    for (double w : kGrid) {
        const InequalityResult r = chsh_value(werner_table(w, chsh_optimal_settings()));
        EXPECT_NEAR(r.value, 2.0 * std::numbers::sqrt2 * w, 1e-12);
        EXPECT_EQ(r.violated, r.value > 2.0 + kViolationMargin);
        EXPECT_EQ(r.bound, 2.0);
    }
}

TEST(Chsh, DeterministicStrategiesStayWithinBound) {
    for (int strat = 0; strat < 16; ++strat) {
        // Bits of strat: Alice's outputs for x=0,1 and Charlie's for y=0,1.
        std::vector<double> p(16, 0.0);
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const int a = (strat >> x) & 1;
                const int c = (strat >> (2 + y)) & 1;
                p[static_cast<std::size_t>((x * 2 + y) * 4 + a * 2 + c)] = 1.0;
            }
        }
        const InequalityResult r = chsh_value(CorrelationTable({2, 2}, {2, 2}, p));
        EXPECT_NEAR(r.value, 2.0, 1e-15);
        EXPECT_FALSE(r.violated);
    }
}

TEST(Chsh, RejectsWrongShape) {
    EXPECT_THROW(chsh_value(CorrelationTable({4, 4}, std::vector<double>(16, 1.0 / 16))), UsageError);
}

TEST(BitDecomposition, BellBasisBits) {
    const auto bits = bit_decomposition(bell_basis());
    ASSERT_EQ(bits.size(), 4u);
    // (phi+, phi-, psi+, psi-): ZZ separates phi from psi, XX the sign.
    EXPECT_EQ(bits[0].b0, 1);
    EXPECT_EQ(bits[0].b1, 1);
    EXPECT_EQ(bits[1].b0, 1);
    EXPECT_EQ(bits[1].b1, -1);
    EXPECT_EQ(bits[2].b0, -1);
    EXPECT_EQ(bits[2].b1, 1);
    EXPECT_EQ(bits[3].b0, -1);
    EXPECT_EQ(bits[3].b1, -1);
    EXPECT_THROW(bit_decomposition(ejm_basis()), UsageError);
}

TEST(Bilocality, ClosedFormOnVisibilityGrid) {
    const auto bits = bit_decomposition(bell_basis());
    for (double w1 : kGrid) {
        for (double w2 : kGrid) {
            const std::vector<double> w{w1, w2};
            const CorrelationTable t = chain_correlation(2, w, bilocal_optimal_settings(), bell_basis());
            const InequalityResult r = bilocality_value(t, bits);
            EXPECT_NEAR(r.value, std::sqrt(2.0 * w1 * w2), 1e-9);
            EXPECT_EQ(r.violated, r.value > 1.0 + kViolationMargin);
        }
    }
}

TEST(Bilocality, BoundaryAtProductOneHalf) {
    const auto bits = bit_decomposition(bell_basis());
    const std::vector<double> w{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
    const InequalityResult r = bilocality_value(chain_correlation(2, w, bilocal_optimal_settings(), bell_basis()), bits);
    EXPECT_NEAR(r.value, 1.0, 1e-9);
    EXPECT_FALSE(r.violated);
}

TEST(Bilocality, RejectsMissingBits) {
    const std::vector<double> w{1.0, 1.0};
    const CorrelationTable t = chain_correlation(2, w, bilocal_optimal_settings(), bell_basis());
    const std::vector<OutcomeBits> short_bits(3);
    EXPECT_THROW(bilocality_value(t, short_bits), UsageError);
}

TEST(PauliCorrection, RelatesBellStatesToSinglet) {
    const auto b = bell_basis();
    EXPECT_EQ(pauli_relating_to_singlet(b.kets[3]), 0);
    for (const Ket &k : b.kets) {
        const int idx = pauli_relating_to_singlet(k);
        const std::array<oracle::M, 4> p{oracle::eye(2), oracle::sx(), oracle::sy(), oracle::sz()};
        const oracle::V v = oracle::kron(p[static_cast<std::size_t>(idx)], oracle::eye(2)) * oracle::singlet();
        EXPECT_NEAR(std::abs(k.amplitudes().dot(v)), 1.0, 1e-12);
    }
    EXPECT_THROW(pauli_relating_to_singlet(ejm_basis().kets[0]), UsageError);
}

TEST(ConditionalChsh, EqualsTwoRootTwoTimesProduct) {
    const EndSettings s = chsh_optimal_settings();
    for (double w1 : kGrid) {
        for (double w2 : kGrid) {
            const std::vector<double> w{w1, w2};
            const CorrelationTable t = chain_correlation(2, w, s, bell_basis());
            for (int b = 0; b < 4; ++b) {
                const SignTable signs = correction_signs(bell_basis().kets[static_cast<std::size_t>(b)], s);
                EXPECT_NEAR(chsh_value(condition_on(t, 1, b), signs).value, 2.0 * std::numbers::sqrt2 * w1 * w2, 1e-9);
            }
        }
    }
}

TEST(ConditionalChsh, CorrectionRejectsIncompatibleSettings) {
    // The phi+ correction flips x and z but keeps y, so this direction maps
    // to neither itself nor its antipode.
    EndSettings s{{{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0}, {0, 0, 1}}, {{0, 0, 1}, {1, 0, 0}}};
    EXPECT_THROW(correction_signs(bell_phi_plus(), s), UsageError);
}

TEST(Thresholds, ProductRule) {
    const ThresholdReport r = threshold_report(SwapScenario::chsh_swap, 0.85, 0.85);
    EXPECT_TRUE(r.chsh_violated);
    EXPECT_TRUE(r.violated);
    EXPECT_NEAR(r.chsh_symmetric_threshold, std::pow(2.0, -0.25), 1e-15);
    EXPECT_NEAR(r.bilocal_symmetric_threshold, 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_FALSE(threshold_report(SwapScenario::chsh_swap, 0.8, 0.8).violated);
    EXPECT_TRUE(threshold_report(SwapScenario::bilocal, 0.8, 0.8).violated);
    EXPECT_FALSE(threshold_report(SwapScenario::bilocal, 0.7, 0.7).violated);
    EXPECT_THROW(threshold_report(SwapScenario::bilocal, 1.2, 0.5), RangeError);
}
