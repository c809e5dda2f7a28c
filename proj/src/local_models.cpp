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

#include "qnet/local_models.hpp"

#include "qnet/errors.hpp"

#include <cmath>
#include <string>

namespace qnet {

namespace {

constexpr const char *kPartyNames[3] = {"A", "B", "C"};

void check_distribution(std::span<const double> row, const std::string &what) {
    double sum = 0.0;
    for (double p : row) {
        if (!std::isfinite(p) || p < -kModelTolerance) {
            throw ValidationError(what + ": negative or non-finite probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kModelTolerance) {
        throw ValidationError(what + ": probabilities sum to " + std::to_string(sum));
    }
}

void check_unit(double q, const char *what) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw RangeError(std::string(what) + ": q must lie in [0, 1]");
    }
}

}  // namespace

std::size_t LocalModel::response_rows(std::size_t party) const {
    return static_cast<std::size_t>(alphabets[first_source(party)]) *
           static_cast<std::size_t>(alphabets[second_source(party)]);
}

void LocalModel::validate() const {
    if (outcomes < 1) {
        throw ConfigurationError("LocalModel: outcome alphabet must be non-empty");
    }
    for (std::size_t s = 0; s < 3; ++s) {
        if (alphabets[s] < 1 || sources[s].size() != static_cast<std::size_t>(alphabets[s])) {
            throw ConfigurationError("LocalModel: source " + std::to_string(s) + " does not match its alphabet");
        }
    }
    for (std::size_t p = 0; p < 3; ++p) {
        if (responses[p].size() != response_rows(p) * static_cast<std::size_t>(outcomes)) {
            throw ConfigurationError(std::string("LocalModel: response table ") + kPartyNames[p] +
                                     " does not match the wiring");
        }
    }
    for (std::size_t s = 0; s < 3; ++s) {
        check_distribution(sources[s], "LocalModel source " + std::to_string(s));
    }
    const auto o = static_cast<std::size_t>(outcomes);
    for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t r = 0; r < response_rows(p); ++r) {
            check_distribution(std::span<const double>(responses[p]).subspan(r * o, o),
                               std::string("LocalModel response ") + kPartyNames[p]);
        }
    }
}

CorrelationTable evaluate_model(const LocalModel &m) {
    m.validate();
    const auto o = static_cast<std::size_t>(m.outcomes);
    const auto na = static_cast<std::size_t>(m.alphabets[0]);
    const auto nb = static_cast<std::size_t>(m.alphabets[1]);
    const auto ng = static_cast<std::size_t>(m.alphabets[2]);
    std::vector<double> p(o * o * o, 0.0);
    for (std::size_t al = 0; al < na; ++al) {
        for (std::size_t be = 0; be < nb; ++be) {
            const double *c_row = &m.responses[2][(al * nb + be) * o];
            for (std::size_t ga = 0; ga < ng; ++ga) {
                const double w = m.sources[0][al] * m.sources[1][be] * m.sources[2][ga];
                if (w == 0.0) {
                    continue;
                }
                const double *a_row = &m.responses[0][(be * ng + ga) * o];
                const double *b_row = &m.responses[1][(ga * na + al) * o];
                for (std::size_t a = 0; a < o; ++a) {
                    const double wa = w * a_row[a];
                    if (wa == 0.0) {
                        continue;
                    }
                    for (std::size_t b = 0; b < o; ++b) {
                        const double wab = wa * b_row[b];
                        for (std::size_t c = 0; c < o; ++c) {
                            p[(a * o + b) * o + c] += wab * c_row[c];
                        }
                    }
                }
            }
        }
    }
    return CorrelationTable(std::vector<int>(3, m.outcomes), std::move(p));
}

LocalModel symmetric_q_model(double q) {
    return symmetric_q_model(q, q, q);
}

LocalModel symmetric_q_model(double q_alpha, double q_beta, double q_gamma) {
    check_unit(q_alpha, "symmetric_q_model");
    check_unit(q_beta, "symmetric_q_model");
    check_unit(q_gamma, "symmetric_q_model");
    LocalModel m;
    m.alphabets = {8, 8, 8};
    m.outcomes = 4;
    const std::array<double, 3> qs{q_alpha, q_beta, q_gamma};
    for (std::size_t s = 0; s < 3; ++s) {
        m.sources[s].resize(8);
        for (int v = 0; v < 8; ++v) {
            m.sources[s][static_cast<std::size_t>(v)] = 0.25 * (v < 4 ? 1.0 - qs[s] : qs[s]);
        }
    }
    std::vector<double> rows(8 * 8 * 4, 0.0);
    for (int first = 0; first < 8; ++first) {
        for (int second = 0; second < 8; ++second) {
            const int f_dit = first % 4;
            const int f_bit = first / 4;
            const int s_dit = second % 4;
            const int s_bit = second / 4;
            double *row = &rows[static_cast<std::size_t>((first * 8 + second) * 4)];
            if (f_bit == 0 && s_bit == 1) {
                row[s_dit] = 1.0;
            } else if (f_bit == 1 && s_bit == 0) {
                row[f_dit] = 1.0;
            } else {
                row[f_dit] += 0.5;
                row[s_dit] += 0.5;
            }
        }
    }
    m.responses = {rows, rows, rows};
    return m;
}

double q_model_abc_rate(double q) {
    check_unit(q, "q_model_abc_rate");
    return (13.0 + 9.0 * q - 9.0 * q * q) / 64.0;
}

LocalModel asymmetric_model() {
    // Outputs (0-based) indexed by the two bits a party reads, ordered as
    // (bit from its first source, bit from its second source).
    constexpr int kOut[3][2][2] = {
        {{1, 0}, {2, 3}},  // Alice
        {{3, 0}, {1, 2}},  // Bob
        {{2, 0}, {3, 1}},  // Charlie
    };
    LocalModel m;
    m.alphabets = {2, 2, 2};
    m.outcomes = 4;
    for (auto &s : m.sources) {
        s = {0.5, 0.5};
    }
    for (std::size_t p = 0; p < 3; ++p) {
        m.responses[p].assign(2 * 2 * 4, 0.0);
        for (int vf = 0; vf < 2; ++vf) {
            for (int vs = 0; vs < 2; ++vs) {
                // Second bit of the first source, first bit of the second.
                const int out = kOut[p][1 - vf][vs];
                m.responses[p][static_cast<std::size_t>((vf * 2 + vs) * 4 + out)] = 1.0;
            }
        }
    }
    return m;
}

nlohmann::ordered_json model_to_json(const LocalModel &m) {
    nlohmann::ordered_json j;
    j["alphabets"] = m.alphabets;
    j["sources"] = m.sources;
    nlohmann::ordered_json responses = nlohmann::ordered_json::object();
    const auto o = static_cast<std::size_t>(m.outcomes);
    for (std::size_t p = 0; p < 3; ++p) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r * o < m.responses[p].size(); ++r) {
            rows.push_back(std::vector<double>(m.responses[p].begin() + static_cast<std::ptrdiff_t>(r * o),
                                               m.responses[p].begin() + static_cast<std::ptrdiff_t>((r + 1) * o)));
        }
        responses[kPartyNames[p]] = rows;
    }
    j["responses"] = responses;
    return j;
}

LocalModel model_from_json(const nlohmann::json &j) {
    LocalModel m;
    try {
        m.alphabets = j.at("alphabets").get<std::array<int, 3>>();
        m.sources = j.at("sources").get<std::array<std::vector<double>, 3>>();
        const auto &responses = j.at("responses");
        int outcomes = -1;
        for (std::size_t p = 0; p < 3; ++p) {
            for (const auto &row : responses.at(kPartyNames[p])) {
                const auto values = row.get<std::vector<double>>();
                if (outcomes < 0) {
                    outcomes = static_cast<int>(values.size());
                } else if (static_cast<int>(values.size()) != outcomes) {
                    throw ConfigurationError("model file: response rows have different lengths");
                }
                m.responses[p].insert(m.responses[p].end(), values.begin(), values.end());
            }
        }
        m.outcomes = outcomes;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigurationError(std::string("model file: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace qnet
