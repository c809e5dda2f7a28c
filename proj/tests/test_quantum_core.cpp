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
#include "qnet/quantum_core.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace qnet;

namespace {

double max_abs(const Matrix &m) {
    return m.cwiseAbs().maxCoeff();
}

BlochVector to_bloch(const std::array<double, 3> &v) {
    return {v[0], v[1], v[2]};
}

}  // namespace

TEST(Ket, RejectsUnnormalizedAndOddDimensions) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(Ket{v}, ValidationError);
    Vector three(3);
    three << 1.0, 0.0, 0.0;
    EXPECT_THROW(Ket{three}, ValidationError);
    EXPECT_NEAR(Ket::normalized(v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(Ket, BasisStateIndexing) {
    Ket k = Ket::basis_state(2, 2);  // |10>
    EXPECT_EQ(k.qubits(), 2);
    EXPECT_EQ(k[2], Complex(1.0, 0.0));
    Ket t = tensor(Ket::basis_state(1, 1), Ket::basis_state(1, 0));
    EXPECT_EQ(t[2], Complex(1.0, 0.0));
}

TEST(Pauli, Algebra) {
    const Matrix i2 = Matrix::Identity(2, 2);
    EXPECT_LT(max_abs(pauli_x().matrix() * pauli_x().matrix() - i2), 1e-15);
    EXPECT_LT(max_abs(pauli_x().matrix() * pauli_y().matrix() - Complex(0, 1) * pauli_z().matrix()), 1e-15);
    EXPECT_LT(max_abs(pauli_along({0.6, 0.0, 0.8}).matrix() - oracle::along(0.6, 0.0, 0.8)), 1e-15);
}

TEST(Tensor, MatchesEntrywiseKron) {
    const Operator a(oracle::along(0.3, -0.2, 0.5));
    const Operator b(oracle::sy());
    EXPECT_LT(max_abs(tensor(a, b).matrix() - oracle::kron(a.matrix(), b.matrix())), 1e-15);
}

TEST(Tensor, VariantKindMismatch) {
    QuantumObject k = Ket::basis_state(1, 0);
    QuantumObject o = Operator::identity(1);
    EXPECT_THROW(tensor(k, o), KindMismatchError);
    EXPECT_NO_THROW(tensor(k, k));
}

TEST(Density, WernerState) {
    for (double w : {0.0, 0.3, 1.0}) {
        const Operator rho = werner_state(w);
        EXPECT_TRUE(is_density(rho));
        EXPECT_LT(max_abs(rho.matrix() - oracle::werner(w)), 1e-15);
    }
    EXPECT_THROW(werner_state(1.1), RangeError);
    EXPECT_THROW(werner_state(-0.1), RangeError);
}

TEST(Density, RejectsNonPositive) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_FALSE(is_density(Operator(m)));
    EXPECT_THROW(validate_density(Operator(m)), ValidationError);
}

TEST(PartialTrace, SingletIsMaximallyMixed) {
    const Operator rho = projector(bell_psi_minus());
    for (auto keep : {Subsystem::first, Subsystem::second}) {
        EXPECT_LT(max_abs(partial_trace(rho, keep).matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-15);
    }
}

TEST(PartialTrace, ProductState) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = oracle::random_direction(rng);
        const auto v = oracle::random_direction(rng);
        const Operator rho(oracle::kron(oracle::end_projector(u, 0), oracle::end_projector(v, 0)));
        const BlochVector bu = bloch_vector(partial_trace(rho, Subsystem::first));
        const BlochVector bv = bloch_vector(partial_trace(rho, Subsystem::second));
        EXPECT_LT(distance(bu, to_bloch(u)), 1e-12);
        EXPECT_LT(distance(bv, to_bloch(v)), 1e-12);
    }
}

TEST(KetFromBloch, RoundTripAndPhaseConvention) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const BlochVector m = to_bloch(oracle::random_direction(rng));
        const Ket k = ket_from_bloch(m);
        EXPECT_LT(distance(bloch_vector(projector(k)), m), 1e-12);
        EXPECT_GE(k[0].real(), 0.0);
        EXPECT_NEAR(k[0].imag(), 0.0, 1e-15);
    }
}

TEST(KetFromBloch, LiteralFormFlipsYAndZ) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const BlochVector m = to_bloch(oracle::random_direction(rng));
        const BlochVector got = bloch_vector(projector(ket_from_bloch_paper_literal(m)));
        EXPECT_LT(distance(got, BlochVector{m.x, -m.y, -m.z}), 1e-12);
    }
}

TEST(Antipodal, OrthogonalAndOpposite) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const BlochVector m = to_bloch(oracle::random_direction(rng));
        const Ket k = ket_from_bloch(m);
        const Ket a = antipodal(k);
        EXPECT_NEAR(std::abs(inner(k, a)), 0.0, 1e-14);
        EXPECT_LT(distance(bloch_vector(projector(a)), -m), 1e-12);
        // |m, -m> has overlap i/sqrt2 with the singlet for every m.
        const Complex ov = inner(tensor(k, a), bell_psi_minus());
        EXPECT_NEAR(std::abs(ov - Complex(0.0, 1.0 / std::numbers::sqrt2)), 0.0, 1e-12);
    }
}

TEST(Antipodal, LiteralRuleMatchesAntiunitaryMap) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const BlochVector m = to_bloch(oracle::random_direction(rng));
        const Ket lit = antipodal_paper_literal(m);
        const Ket via_map = antipodal(ket_from_bloch_paper_literal(m));
        EXPECT_LT((lit.amplitudes() - via_map.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(BellStates, Orthonormal) {
    const std::array<Ket, 4> b{bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_NEAR(std::abs(inner(b[i], b[j])), i == j ? 1.0 : 0.0, 1e-15);
        }
    }
    EXPECT_LT((bell_psi_minus().amplitudes() - oracle::singlet()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Born, ProbabilitiesAndValidation) {
    const std::vector<Ket> basis{bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()};
    const auto p = born_probabilities(werner_state(0.6), basis);
    EXPECT_NEAR(p[3], 0.6 + 0.4 / 4, 1e-15);
    EXPECT_NEAR(p[0], 0.1, 1e-15);
    const std::vector<Ket> incomplete{bell_phi_plus(), bell_phi_minus()};
    EXPECT_THROW(born_probabilities(werner_state(0.6), incomplete), ValidationError);
}

TEST(PermuteQubits, MovesProductFactors) {
    std::mt19937_64 rng(17);
    std::array<oracle::M, 3> f;
    for (auto &m : f) {
        m = oracle::end_projector(oracle::random_direction(rng), 0);
    }
    const Operator rho(oracle::kron(oracle::kron(f[0], f[1]), f[2]));
    const std::array<int, 3> order{2, 0, 1};
    const Operator got = permute_qubits(rho, order);
    const oracle::M want = oracle::kron(oracle::kron(f[2], f[0]), f[1]);
    EXPECT_LT(max_abs(got.matrix() - want), 1e-14);
}
