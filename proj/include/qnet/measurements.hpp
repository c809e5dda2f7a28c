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

// Two-qubit joint measurement bases: the Bell-state measurement and the
// Elegant Joint Measurement built on the tetrahedron.

#pragma once

#include "qnet/quantum_core.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnet {

enum class BasisLabel { bsm, ejm, custom };

/// Single-qubit ket convention used to build |m_j> inside the EJM.
enum class Convention { invariant_first, paper_literal };

std::string_view to_string(BasisLabel label);
std::string_view to_string(Convention convention);
/// Accepts "invariant_first" / "paper_literal"; throws UsageError otherwise.
Convention parse_convention(std::string_view text);

/// Ordered set of four two-qubit kets. Outcome k (1-based) is kets[k-1].
struct JointBasis {
    BasisLabel label = BasisLabel::custom;
    std::vector<Ket> kets;
    std::optional<Convention> convention;

    std::size_t size() const { return kets.size(); }
};

struct Tetrahedron {
    std::array<BlochVector, 4> vertices;
};

/// (phi+, phi-, psi+, psi-).
JointBasis bell_basis();
Tetrahedron tetrahedron();
/// Throws IntegrityError if the construction is not orthonormal.
JointBasis ejm_basis(Convention convention = Convention::invariant_first);
/// Unvalidated; use validate_basis to inspect it.
JointBasis custom_basis(std::vector<Ket> kets);

/// Singular values of the 2x2 amplitude matrix, descending.
std::pair<double, double> schmidt_coefficients(const Ket &k);

/// The closed-form EJM Schmidt pair ((sqrt3+1)/(2 sqrt2), (sqrt3-1)/(2 sqrt2)).
std::pair<double, double> ejm_schmidt_pair();

struct PartialBlochPair {
    BlochVector first;   // <sigma (x) 1>
    BlochVector second;  // <1 (x) sigma>
};

/// Reduced Bloch vectors of each basis ket.
std::vector<PartialBlochPair> partial_bloch_pairs(const JointBasis &basis);
/// As partial_bloch_pairs, restricted to EJM bases (UsageError otherwise).
std::vector<PartialBlochPair> ejm_partial_blochs(const JointBasis &basis);

/// For each EJM outcome j, the tetrahedron vertex index (0-based) whose
/// direction the first-qubit partial Bloch vector points along; -1 if none.
std::vector<int> ejm_vertex_assignment(const JointBasis &basis);

/// 1/4 (1 + sqrt3/2 (m.s (x) 1 - 1 (x) m.s) - 3/2 sum m_n m_k s_n (x) s_k
///      + 1/2 s (x) s), the closed-form EJM projector along m.
Operator ejm_projector_expansion(const BlochVector &m);

struct BasisReport {
    double max_orthonormality_deviation = 0.0;
    double completeness_deviation = 0.0;
    std::vector<std::pair<double, double>> schmidt;
    std::vector<double> first_partial_norms;
    std::vector<double> second_partial_norms;
    bool passed = false;
    std::vector<std::string> failures;
};

/// Checks the basis against its contract: orthonormality and completeness;
/// each partial Bloch norm equal to the value its Schmidt pair implies
/// (c1^2 - c2^2); for BSM all Schmidt pairs (1/sqrt2, 1/sqrt2); for EJM the
/// closed-form Schmidt pair and partial directions covering the tetrahedron.
BasisReport validate_basis(const JointBasis &basis);

/// Max |G - 1| over the Gram matrix.
double orthonormality_deviation(std::span<const Ket> kets);

}  // namespace qnet
