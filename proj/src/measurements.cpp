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

#include "qnet/measurements.hpp"

#include "qnet/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qnet {

namespace {

constexpr Complex kI{0.0, 1.0};

const std::array<const Operator *, 3> &paulis() {
    static const std::array<const Operator *, 3> p{&pauli_x(), &pauli_y(), &pauli_z()};
    return p;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

std::string_view to_string(BasisLabel label) {
    switch (label) {
    case BasisLabel::bsm:
        return "bsm";
    case BasisLabel::ejm:
        return "ejm";
    case BasisLabel::custom:
        return "custom";
    }
    return "custom";
}

std::string_view to_string(Convention convention) {
    return convention == Convention::invariant_first ? "invariant_first" : "paper_literal";
}

Convention parse_convention(std::string_view text) {
    if (text == "invariant_first") {
        return Convention::invariant_first;
    }
    if (text == "paper_literal") {
        return Convention::paper_literal;
    }
    throw UsageError("unknown convention '" + std::string(text) + "'");
}

JointBasis bell_basis() {
    return {BasisLabel::bsm, {bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()}, std::nullopt};
}

Tetrahedron tetrahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    return {{BlochVector{s, s, s}, BlochVector{s, -s, -s}, BlochVector{-s, s, -s}, BlochVector{-s, -s, s}}};
}

JointBasis ejm_basis(Convention convention) {
    const double a = std::sqrt(1.5);
    const Complex b = kI * (std::sqrt(3.0) - 1.0) / 2.0;
    const Vector singlet = bell_psi_minus().amplitudes();

    JointBasis basis{BasisLabel::ejm, {}, convention};
    for (const BlochVector &m : tetrahedron().vertices) {
        Ket up = convention == Convention::invariant_first ? ket_from_bloch(m) : ket_from_bloch_paper_literal(m);
        Ket down = convention == Convention::invariant_first ? antipodal(up) : antipodal_paper_literal(m);
        Vector v = a * tensor(up, down).amplitudes() + b * singlet;
        if (std::abs(v.norm() - 1.0) > kRoundTripTolerance) {
            throw IntegrityError("ejm_basis: constructed state is not normalised");
        }
        basis.kets.push_back(Ket::normalized(v));
    }
    if (orthonormality_deviation(basis.kets) > kRoundTripTolerance) {
        throw IntegrityError("ejm_basis: constructed states are not orthonormal");
    }
    return basis;
}

JointBasis custom_basis(std::vector<Ket> kets) {
    return {BasisLabel::custom, std::move(kets), std::nullopt};
}

double orthonormality_deviation(std::span<const Ket> kets) {
    double worst = 0.0;
    for (std::size_t i = 0; i < kets.size(); ++i) {
        for (std::size_t j = 0; j < kets.size(); ++j) {
            Complex g = inner(kets[i], kets[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

std::pair<double, double> schmidt_coefficients(const Ket &k) {
    if (k.dim() != 4) {
        throw ValidationError("schmidt_coefficients: expected a two-qubit ket");
    }
    Eigen::Matrix2cd m;
    m << k[0], k[1], k[2], k[3];
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    const auto &s = svd.singularValues();
    return {s(0), s(1)};
}

std::pair<double, double> ejm_schmidt_pair() {
    const double r3 = std::sqrt(3.0);
    const double d = 2.0 * std::numbers::sqrt2;
    return {(r3 + 1.0) / d, (r3 - 1.0) / d};
}

std::vector<PartialBlochPair> partial_bloch_pairs(const JointBasis &basis) {
    std::vector<PartialBlochPair> out;
    out.reserve(basis.size());
    for (const Ket &k : basis.kets) {
        Operator rho = projector(k);
        out.push_back({bloch_vector(partial_trace(rho, Subsystem::first)),
                       bloch_vector(partial_trace(rho, Subsystem::second))});
    }
    return out;
}

std::vector<PartialBlochPair> ejm_partial_blochs(const JointBasis &basis) {
    if (basis.label != BasisLabel::ejm) {
        throw UsageError("ejm_partial_blochs: basis is not an EJM basis");
    }
    return partial_bloch_pairs(basis);
}

std::vector<int> ejm_vertex_assignment(const JointBasis &basis) {
    const auto pairs = ejm_partial_blochs(basis);
    const auto tet = tetrahedron();
    std::vector<int> out;
    for (const auto &p : pairs) {
        int match = -1;
        double n = p.first.norm();
        for (int v = 0; v < 4 && n > 0.0; ++v) {
            if (distance(p.first * (1.0 / n), tet.vertices[static_cast<std::size_t>(v)]) < kRoundTripTolerance) {
                match = v;
            }
        }
        out.push_back(match);
    }
    return out;
}

Operator ejm_projector_expansion(const BlochVector &m) {
    const Operator id = Operator::identity(1);
    const Operator ms = pauli_along(m);
    const std::array<double, 3> mv{m.x, m.y, m.z};

    Matrix sum = Matrix::Identity(4, 4);
    sum += (std::sqrt(3.0) / 2.0) * (tensor(ms, id).matrix() - tensor(id, ms).matrix());
    for (std::size_t n = 0; n < 3; ++n) {
        for (std::size_t k = 0; k < 3; ++k) {
            sum -= 1.5 * mv[n] * mv[k] * tensor(*paulis()[n], *paulis()[k]).matrix();
        }
        sum += 0.5 * tensor(*paulis()[n], *paulis()[n]).matrix();
    }
    return Operator(0.25 * sum);
}

BasisReport validate_basis(const JointBasis &basis) {
    BasisReport report;
    if (basis.size() != 4) {
        report.failures.push_back("basis must contain four kets");
        return report;
    }
    for (const Ket &k : basis.kets) {
        if (k.dim() != 4) {
            report.failures.push_back("basis kets must be two-qubit states");
            return report;
        }
    }

    report.max_orthonormality_deviation = orthonormality_deviation(basis.kets);
    if (report.max_orthonormality_deviation > kRoundTripTolerance) {
        report.failures.push_back("orthonormality deviation " + format_double(report.max_orthonormality_deviation));
    }
    Matrix completeness = -Matrix::Identity(4, 4);
    for (const Ket &k : basis.kets) {
        completeness += projector(k).matrix();
    }
    report.completeness_deviation = completeness.cwiseAbs().maxCoeff();
    if (report.completeness_deviation > kRoundTripTolerance) {
        report.failures.push_back("completeness deviation " + format_double(report.completeness_deviation));
    }

    const auto pairs = partial_bloch_pairs(basis);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto s = schmidt_coefficients(basis.kets[j]);
        report.schmidt.push_back(s);
        report.first_partial_norms.push_back(pairs[j].first.norm());
        report.second_partial_norms.push_back(pairs[j].second.norm());

        const double implied = s.first * s.first - s.second * s.second;
        if (std::abs(pairs[j].first.norm() - implied) > kRoundTripTolerance ||
            std::abs(pairs[j].second.norm() - implied) > kRoundTripTolerance) {
            report.failures.push_back("partial Bloch norm of ket " + std::to_string(j + 1) +
                                      " disagrees with its Schmidt pair");
        }
    }

    std::optional<std::pair<double, double>> expected;
    if (basis.label == BasisLabel::bsm) {
        expected = std::pair{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
    } else if (basis.label == BasisLabel::ejm) {
        expected = ejm_schmidt_pair();
    }
    if (expected) {
        for (std::size_t j = 0; j < report.schmidt.size(); ++j) {
            const auto &s = report.schmidt[j];
            if (std::abs(s.first - expected->first) > kRoundTripTolerance ||
                std::abs(s.second - expected->second) > kRoundTripTolerance) {
                report.failures.push_back("Schmidt pair of ket " + std::to_string(j + 1) + " is off");
            }
        }
    }

    if (basis.label == BasisLabel::ejm) {
        auto assignment = ejm_vertex_assignment(basis);
        std::vector<int> sorted = assignment;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::vector<int>{0, 1, 2, 3}) {
            report.failures.push_back("partial Bloch directions do not cover the tetrahedron");
        }
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if ((pairs[j].first + pairs[j].second).norm() > kRoundTripTolerance) {
                report.failures.push_back("partial Bloch pair " + std::to_string(j + 1) + " is not antipodal");
            }
        }
    }

    report.passed = report.failures.empty();
    return report;
}

}  // namespace qnet
