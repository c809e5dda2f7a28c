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

#include "qnet/errors.hpp"
#include "qnet/local_models.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qnet;

namespace {

// Exact p(a=b=c) of the symmetric model by direct enumeration in integer
// units: each dit configuration has weight 1/64 and each fair mix 1/2, so
// for fixed bits the rate is (count of agreeing weighted branches) / 512.
double q_model_oracle(double q) {
    auto party = [](int f_dit, int f_bit, int s_dit, int s_bit, int out) {
        // Weight in halves of the party outputting `out`.
        if (f_bit == 0 && s_bit == 1) {
            return s_dit == out ? 2 : 0;
        }
        if (f_bit == 1 && s_bit == 0) {
            return f_dit == out ? 2 : 0;
        }
        return (f_dit == out ? 1 : 0) + (s_dit == out ? 1 : 0);
    };
    double total = 0.0;
    for (int bits = 0; bits < 8; ++bits) {
        const int ba = bits >> 2 & 1, bb = bits >> 1 & 1, bg = bits & 1;
        const double pb = (ba ? q : 1 - q) * (bb ? q : 1 - q) * (bg ? q : 1 - q);
        long count = 0;
        for (int da = 0; da < 4; ++da) {
            for (int db = 0; db < 4; ++db) {
                for (int dg = 0; dg < 4; ++dg) {
                    for (int k = 0; k < 4; ++k) {
                        count += party(db, bb, dg, bg, k) * party(dg, bg, da, ba, k) * party(da, ba, db, bb, k);
                    }
                }
            }
        }
        total += pb * static_cast<double>(count) / (64.0 * 8.0);
    }
    return total;
}

LocalModel constant_model(int a, int b, int c) {
    LocalModel m;
    m.alphabets = {1, 2, 3};
    m.outcomes = 4;
    m.sources = {std::vector<double>{1.0}, {0.5, 0.5}, {0.2, 0.3, 0.5}};
    const std::array<int, 3> outs{a, b, c};
    for (std::size_t p = 0; p < 3; ++p) {
        m.responses[p].assign(m.response_rows(p) * 4, 0.0);
        for (std::size_t r = 0; r < m.response_rows(p); ++r) {
            m.responses[p][r * 4 + static_cast<std::size_t>(outs[p])] = 1.0;
        }
    }
    return m;
}

}  // namespace

TEST(EvaluateModel, ConstantResponsesGivePointMass) {
    const CorrelationTable t = evaluate_model(constant_model(2, 0, 3));
    EXPECT_NEAR(t(2, 0, 3), 1.0, 1e-15);
}

TEST(EvaluateModel, UniformResponsesGiveUniformTable) {
    LocalModel m = constant_model(0, 0, 0);
    for (auto &r : m.responses) {
        std::fill(r.begin(), r.end(), 0.25);
    }
    const CorrelationTable t = evaluate_model(m);
    for (double p : t.probabilities()) {
        EXPECT_NEAR(p, 1.0 / 64, 1e-15);
    }
}

TEST(EvaluateModel, WiringMismatchIsConfigurationError) {
    LocalModel m = constant_model(0, 0, 0);
    m.responses[0].resize(4);
    EXPECT_THROW(evaluate_model(m), ConfigurationError);
    LocalModel bad = constant_model(0, 0, 0);
    bad.sources[1] = {0.7, 0.7};
    EXPECT_THROW(evaluate_model(bad), ValidationError);
}

TEST(EvaluateModel, InvariantUnderHiddenRelabeling) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    LocalModel m;
    m.alphabets = {3, 3, 3};
    m.outcomes = 4;
    auto fill = [&](std::vector<double> &v, std::size_t rows, std::size_t width) {
        v.resize(rows * width);
        for (std::size_t r = 0; r < rows; ++r) {
            double s = 0;
            for (std::size_t i = 0; i < width; ++i) {
                s += v[r * width + i] = u(rng);
            }
            for (std::size_t i = 0; i < width; ++i) {
                v[r * width + i] /= s;
            }
        }
    };
    for (auto &s : m.sources) {
        fill(s, 1, 3);
    }
    for (auto &r : m.responses) {
        fill(r, 9, 4);
    }
    // Relabel beta by the cycle 0 -> 1 -> 2 -> 0: permute its distribution
    // and every response row that reads it (Alice first, Charlie second).
    const std::array<std::size_t, 3> pi{1, 2, 0};
    LocalModel r = m;
    for (std::size_t v = 0; v < 3; ++v) {
        r.sources[1][pi[v]] = m.sources[1][v];
        for (std::size_t o = 0; o < 3; ++o) {
            for (std::size_t k = 0; k < 4; ++k) {
                r.responses[0][(pi[v] * 3 + o) * 4 + k] = m.responses[0][(v * 3 + o) * 4 + k];
                r.responses[2][(o * 3 + pi[v]) * 4 + k] = m.responses[2][(o * 3 + v) * 4 + k];
            }
        }
    }
    const auto a = evaluate_model(m).probabilities();
    const auto b = evaluate_model(r).probabilities();
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-15);
    }
}

TEST(QModel, ClosedFormMatchesEnumerationOnGrid) {
    for (int i = 0; i <= 10; ++i) {
        const double q = i / 10.0;
        const double enumerated = triangle_stats(evaluate_model(symmetric_q_model(q))).p_abc;
        EXPECT_NEAR(q_model_abc_rate(q), enumerated, 1e-12);
        EXPECT_NEAR(q_model_oracle(q), enumerated, 1e-12);
    }
}

TEST(QModel, BitPatternRows) {
    const std::array<double, 8> ab{7.0 / 16, 1.0, 0.25, 5.0 / 8, 0.25, 5.0 / 8, 0.25, 7.0 / 16};
    const std::array<double, 8> abc{13.0 / 64, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 13.0 / 64};
    for (int row = 0; row < 8; ++row) {
        const TriangleStats s =
            triangle_stats(evaluate_model(symmetric_q_model(row >> 2 & 1, row >> 1 & 1, row & 1)));
        EXPECT_NEAR(s.p_a_eq_b, ab[static_cast<std::size_t>(row)], 1e-12) << "row " << row;
        EXPECT_NEAR(s.p_abc, abc[static_cast<std::size_t>(row)], 1e-12) << "row " << row;
    }
}

TEST(QModel, MaximumAtOneHalf) {
    EXPECT_NEAR(q_model_abc_rate(0.5), 61.0 / 256, 1e-15);
    EXPECT_NEAR(q_model_abc_rate(0.0), 13.0 / 64, 1e-15);
    EXPECT_NEAR(triangle_stats(evaluate_model(symmetric_q_model(0.5))).p_abc, 61.0 / 256, 1e-12);
    for (double q : {0.0, 0.1, 0.3, 0.49, 0.51, 0.9, 1.0}) {
        EXPECT_LE(q_model_abc_rate(q), q_model_abc_rate(0.5));
    }
    EXPECT_THROW(q_model_abc_rate(1.5), RangeError);
    EXPECT_THROW(symmetric_q_model(-0.1), RangeError);
}

TEST(Asymmetric, Statistics) {
    const CorrelationTable t = evaluate_model(asymmetric_model());
    const TriangleStats s = triangle_stats(t);
    EXPECT_NEAR(s.p_abc, 0.5, 1e-15);
    EXPECT_NEAR(s.p_a_eq_b, 0.5, 1e-15);
    EXPECT_NEAR(s.p_abc_given_ab, 1.0, 1e-15);
    int zeros = 0, distinct = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                if (a != b && b != c && a != c) {
                    ++distinct;
                    zeros += t(a, b, c) == 0.0 ? 1 : 0;
                }
            }
        }
    }
    EXPECT_EQ(distinct, 24);
    EXPECT_EQ(zeros, 20);
}

TEST(Asymmetric, PrintedOutputMap) {
    // Party outputs (1-based) for the two bits it reads: (0,0) -> 2,4,3;
    // (0,1) -> 1,1,1; (1,0) -> 3,2,4; (1,1) -> 4,3,2.
    const LocalModel m = asymmetric_model();
    const std::array<std::array<int, 4>, 3> printed{{{2, 1, 3, 4}, {4, 1, 2, 3}, {3, 1, 4, 2}}};
    for (std::size_t p = 0; p < 3; ++p) {
        for (int vf = 0; vf < 2; ++vf) {
            for (int vs = 0; vs < 2; ++vs) {
                // First source's second bit is 1 - vf; second source's first bit is vs.
                const int key = (1 - vf) * 2 + vs;
                const int out = printed[p][static_cast<std::size_t>(key)] - 1;
                EXPECT_EQ(m.responses[p][static_cast<std::size_t>((vf * 2 + vs) * 4 + out)], 1.0);
            }
        }
    }
}

TEST(ModelJson, RoundTrip) {
    const LocalModel m = symmetric_q_model(0.3);
    const LocalModel back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
    EXPECT_EQ(back.alphabets, m.alphabets);
    EXPECT_EQ(back.outcomes, m.outcomes);
    EXPECT_EQ(back.responses, m.responses);
    EXPECT_EQ(back.sources, m.sources);
    EXPECT_THROW(model_from_json(nlohmann::json::parse(R"({"alphabets": [1, 1, 1]})")), ConfigurationError);
}
