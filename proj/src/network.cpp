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

#include "qnet/network.hpp"

#include "qnet/errors.hpp"


#include <cmath>
#include <fstream>
#include <string>

namespace qnet {

namespace {

constexpr int kMaxChainSources = 10;

// Output qubit i of the permuted register is input qubit kTriangleOrder[i].
// Input register: (alpha0, alpha1, beta0, beta1, gamma0, gamma1).
// Output register: (A1, A2, B1, B2, C1, C2).
constexpr std::array<int, 6> kTriangleOrder{3, 4, 5, 0, 1, 2};

void require_joint_basis(const JointBasis &basis) {
    if (basis.size() != 4) {
        throw WiringError("joint measurement must have four outcomes");
    }
    for (const Ket &k : basis.kets) {
        if (k.dim() != 4) {
            throw WiringError("joint measurement kets must act on two qubits");
        }
    }
    if (orthonormality_deviation(basis.kets) > kRoundTripTolerance) {
        throw ValidationError("joint measurement basis is not orthonormal");
    }
}

void require_source(const Operator &rho) {
    if (rho.dim() != 4) {
        throw WiringError("sources must be two-qubit states");
    }
    validate_density(rho);
}

std::vector<Operator> werner_sources(std::span<const double> visibilities) {
    std::vector<Operator> out;
    out.reserve(visibilities.size());
    for (double w : visibilities) {
        out.push_back(werner_state(w));
    }
    return out;
}

Eigen::Matrix2cd end_projector(const BlochVector &u, int outcome) {
    const double s = outcome == 0 ? 1.0 : -1.0;
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity() + s * pauli_along(u).matrix();
    return 0.5 * p;
}

// tr_l[(P (x) 1) rho] for rho on (l, r).
Eigen::Matrix2cd absorb_left_end(const Eigen::Matrix2cd &proj, const Matrix &rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int r = 0; r < 2; ++r) {
        for (int rp = 0; rp < 2; ++rp) {
            for (int l = 0; l < 2; ++l) {
                for (int lp = 0; lp < 2; ++lp) {
                    out(r, rp) += proj(l, lp) * rho(2 * lp + r, 2 * l + rp);
                }
            }
        }
    }
    return out;
}

// <phi|_{c,l} (carried (x) rho) |phi>_{c,l} for carried on c and rho on (l, r).
Eigen::Matrix2cd absorb_middle(const Eigen::Matrix2cd &carried, const Vector &phi, const Matrix &rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int c = 0; c < 2; ++c) {
        for (int l = 0; l < 2; ++l) {
            const Complex bra = std::conj(phi(2 * c + l));
            if (bra == Complex{}) {
                continue;
            }
            for (int cp = 0; cp < 2; ++cp) {
                for (int lp = 0; lp < 2; ++lp) {
                    const Complex w = bra * phi(2 * cp + lp) * carried(c, cp);
                    if (w == Complex{}) {
                        continue;
                    }
                    for (int r = 0; r < 2; ++r) {
                        for (int rp = 0; rp < 2; ++rp) {
                            out(r, rp) += w * rho(2 * l + r, 2 * lp + rp);
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::vector<BlochVector> parse_directions(const nlohmann::json &arr) {
    std::vector<BlochVector> out;
    for (const auto &v : arr) {
        if (!v.is_array() || v.size() != 3) {
            throw ConfigurationError("scenario: each end setting must be a 3-vector");
        }
        out.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    return out;
}

}  // namespace

NetworkScenario make_triangle_scenario(const JointBasis &measurement, std::array<double, 3> visibilities) {
    require_joint_basis(measurement);
    NetworkScenario s;
    s.topology = Topology::triangle;
    s.visibilities.assign(visibilities.begin(), visibilities.end());
    s.sources = werner_sources(visibilities);
    s.measurement = measurement;
    return s;
}

NetworkScenario make_chain_scenario(int n_sources, std::span<const double> visibilities, EndSettings settings,
                                    const JointBasis &middle_measurement) {
    if (n_sources < 2 || n_sources > kMaxChainSources) {
        throw ConfigurationError("chain: n_sources must lie in [2, " + std::to_string(kMaxChainSources) + "]");
    }
    if (visibilities.size() != static_cast<std::size_t>(n_sources)) {
        throw ConfigurationError("chain: one visibility per source required");
    }
    NetworkScenario s;
    s.topology = Topology::chain;
    s.visibilities.assign(visibilities.begin(), visibilities.end());
    s.sources = werner_sources(visibilities);
    s.measurement = middle_measurement;
    s.end_settings = std::move(settings);
    return s;
}

CorrelationTable evaluate(const NetworkScenario &scenario) {
    if (scenario.topology == Topology::chain) {
        return chain_correlation(scenario.sources, scenario.end_settings, scenario.measurement);
    }
    if (scenario.sources.size() != 3) {
        throw WiringError("triangle: exactly three sources required");
    }
    require_joint_basis(scenario.measurement);
    for (const Operator &rho : scenario.sources) {
        require_source(rho);
    }

    const Operator joint = permute_qubits(
        tensor(tensor(scenario.sources[0], scenario.sources[1]), scenario.sources[2]), kTriangleOrder);
    const Matrix &rho = joint.matrix();
    const auto &kets = scenario.measurement.kets;

    std::vector<double> probs;
    probs.reserve(64);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const Ket ab = tensor(kets[a], kets[b]);
            for (std::size_t c = 0; c < 4; ++c) {
                const Vector v = tensor(ab, kets[c]).amplitudes();
                probs.push_back(v.dot(rho * v).real());
            }
        }
    }
    return CorrelationTable({4, 4, 4}, std::move(probs));
}

CorrelationTable triangle_correlation(const JointBasis &measurement, std::array<double, 3> visibilities) {
    return evaluate(make_triangle_scenario(measurement, visibilities));
}

CorrelationTable chain_correlation(std::span<const Operator> sources, const EndSettings &settings,
                                   const JointBasis &middle_measurement) {
    const std::size_t n = sources.size();
    if (n < 2 || n > static_cast<std::size_t>(kMaxChainSources)) {
        throw ConfigurationError("chain: number of sources must lie in [2, " + std::to_string(kMaxChainSources) + "]");
    }
    if (settings.x.empty() || settings.y.empty()) {
        throw ConfigurationError("chain: both end parties need at least one setting");
    }
    for (const auto *dirs : {&settings.x, &settings.y}) {
        for (const BlochVector &u : *dirs) {
            if (std::abs(u.norm() - 1.0) > 1e-9) {
                throw ConfigurationError("chain: end setting directions must be unit vectors");
            }
        }
    }
    require_joint_basis(middle_measurement);
    for (const Operator &rho : sources) {
        require_source(rho);
    }

    std::vector<int> outcomes(n + 1, 4);
    outcomes.front() = 2;
    outcomes.back() = 2;
    std::vector<int> inputs(n + 1, 1);
    inputs.front() = static_cast<int>(settings.x.size());
    inputs.back() = static_cast<int>(settings.y.size());

    std::vector<double> probs;
    for (const BlochVector &ux : settings.x) {
        for (const BlochVector &uy : settings.y) {
            // Unnormalised conditional states of the rightmost open qubit,
            // one per outcome prefix, in table order.
            std::vector<Eigen::Matrix2cd> level;
            for (int a = 0; a < 2; ++a) {
                level.push_back(absorb_left_end(end_projector(ux, a), sources[0].matrix()));
            }
            for (std::size_t i = 1; i < n; ++i) {
                std::vector<Eigen::Matrix2cd> next;
                next.reserve(level.size() * 4);
                for (const auto &carried : level) {
                    for (const Ket &phi : middle_measurement.kets) {
                        next.push_back(absorb_middle(carried, phi.amplitudes(), sources[i].matrix()));
                    }
                }
                level = std::move(next);
            }
            for (const auto &carried : level) {
                for (int c = 0; c < 2; ++c) {
                    probs.push_back((end_projector(uy, c) * carried).trace().real());
                }
            }
        }
    }
    return CorrelationTable(std::move(outcomes), std::move(inputs), std::move(probs));
}

CorrelationTable chain_correlation(int n_sources, std::span<const double> visibilities, const EndSettings &settings,
                                   const JointBasis &middle_measurement) {
    return evaluate(make_chain_scenario(n_sources, visibilities, settings, middle_measurement));
}

CorrelationTable bsm_triangle_reference() {
    return triangle_correlation(bell_basis(), {1.0, 1.0, 1.0});
}

Operator swapped_state(const Operator &rho1, const Operator &rho2, const Ket &middle_outcome) {
    require_source(rho1);
    require_source(rho2);
    if (middle_outcome.dim() != 4) {
        throw WiringError("swapped_state: middle outcome must be a two-qubit ket");
    }
    const Matrix rho = tensor(rho1, rho2).matrix();  // qubits (A, B1, B2, C)
    const Vector &phi = middle_outcome.amplitudes();
    Matrix out = Matrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int cp = 0; cp < 2; ++cp) {
                    Complex acc{};
                    for (int b = 0; b < 4; ++b) {
                        for (int bp = 0; bp < 4; ++bp) {
                            acc += std::conj(phi(b)) * phi(bp) * rho(8 * a + 2 * b + c, 8 * ap + 2 * bp + cp);
                        }
                    }
                    out(2 * a + c, 2 * ap + cp) = acc;
                }
            }
        }
    }
    const double norm = out.trace().real();
    if (norm <= 0.0) {
        throw UsageError("swapped_state: middle outcome has zero probability");
    }
    return Operator(out / norm);
}

double visibility_relative_to(const Operator &rho, const Ket &reference) {
    const double fidelity = reference.amplitudes().dot(rho.matrix() * reference.amplitudes()).real();
    return (4.0 * fidelity - 1.0) / 3.0;
}

NetworkScenario scenario_from_json(const nlohmann::json &j) {
    try {
        const std::string topology = j.at("topology").get<std::string>();
        const auto visibilities = j.at("visibilities").get<std::vector<double>>();
        const std::string measurement = j.value("measurement", std::string(topology == "chain" ? "bsm" : "ejm"));
        const Convention convention = parse_convention(j.value("convention", std::string("invariant_first")));

        JointBasis basis;
        if (measurement == "ejm") {
            basis = ejm_basis(convention);
        } else if (measurement == "bsm") {
            basis = bell_basis();
        } else {
            throw ConfigurationError("scenario: unknown measurement '" + measurement + "'");
        }

        if (topology == "triangle") {
            if (j.contains("n_sources") && j.at("n_sources").get<int>() != 3) {
                throw ConfigurationError("scenario: a triangle has three sources");
            }
            if (visibilities.size() != 3) {
                throw ConfigurationError("scenario: a triangle needs three visibilities");
            }
            return make_triangle_scenario(basis, {visibilities[0], visibilities[1], visibilities[2]});
        }
        if (topology == "chain") {
            const int n = j.value("n_sources", static_cast<int>(visibilities.size()));
            const auto &es = j.at("end_settings");
            if (!es.is_array() || es.size() != 2) {
                throw ConfigurationError("scenario: end_settings must hold two direction lists");
            }
            EndSettings settings{parse_directions(es[0]), parse_directions(es[1])};
            return make_chain_scenario(n, visibilities, std::move(settings), basis);
        }
        throw ConfigurationError("scenario: unknown topology '" + topology + "'");
    } catch (const nlohmann::json::exception &e) {
        throw ConfigurationError(std::string("scenario: ") + e.what());
    }
}

NetworkScenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigurationError("cannot open scenario file " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigurationError(std::string("scenario: ") + e.what());
    }
    return scenario_from_json(j);
}

}  // namespace qnet
