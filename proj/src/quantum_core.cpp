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

#include "qnet/quantum_core.hpp"

#include "qnet/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace qnet {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_power_of_two(Eigen::Index n) {
    return n > 0 && std::has_single_bit(static_cast<std::size_t>(n));
}

int log2_dim(std::size_t n) {
    return std::countr_zero(n);
}

void require_unit(const BlochVector &m, const char *who) {
    if (std::abs(m.norm() - 1.0) > 1e-9) {
        throw ValidationError(std::string(who) + ": Bloch vector must have unit norm, got " +
                              std::to_string(m.norm()));
    }
}

Operator make_pauli(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return Operator(std::move(m));
}

}  // namespace

Ket::Ket(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (!is_power_of_two(amplitudes_.size())) {
        throw ValidationError("Ket: length must be a power of two");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kExactTolerance) {
        throw ValidationError("Ket: amplitudes must have unit norm");
    }
}

Ket Ket::normalized(const Vector &v) {
    double n = v.norm();
    if (n == 0.0) {
        throw ValidationError("Ket::normalized: zero vector");
    }
    return Ket(v / n);
}

Ket Ket::basis_state(int qubits, std::size_t index) {
    std::size_t dim = std::size_t{1} << qubits;
    if (index >= dim) {
        throw RangeError("Ket::basis_state: index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return Ket(std::move(v));
}

int Ket::qubits() const {
    return log2_dim(dim());
}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || !is_power_of_two(entries_.rows())) {
        throw ValidationError("Operator: matrix must be square with power-of-two dimension");
    }
}

Operator Operator::identity(int qubits) {
    auto dim = Eigen::Index{1} << qubits;
    return Operator(Matrix::Identity(dim, dim));
}

int Operator::qubits() const {
    return log2_dim(dim());
}

BlochVector BlochVector::from_cylindrical(double eta, double phi) {
    double r = std::sqrt(std::max(0.0, 1.0 - eta * eta));
    return {r * std::cos(phi), r * std::sin(phi), eta};
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

double BlochVector::phi() const {
    double p = std::atan2(y, x);
    if (p < 0.0) {
        p += 2.0 * std::numbers::pi;
    }
    return p;
}

double distance(const BlochVector &a, const BlochVector &b) {
    return (a - b).norm();
}

const Operator &pauli_x() {
    static const Operator op = make_pauli(0.0, 1.0, 1.0, 0.0);
    return op;
}

const Operator &pauli_y() {
    static const Operator op = make_pauli(0.0, -kI, kI, 0.0);
    return op;
}

const Operator &pauli_z() {
    static const Operator op = make_pauli(1.0, 0.0, 0.0, -1.0);
    return op;
}

Operator pauli_along(const BlochVector &m) {
    return Operator(m.x * pauli_x().matrix() + m.y * pauli_y().matrix() + m.z * pauli_z().matrix());
}

Ket tensor(const Ket &a, const Ket &b) {
    const auto &u = a.amplitudes();
    const auto &v = b.amplitudes();
    Vector out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        out.segment(i * v.size(), v.size()) = u(i) * v;
    }
    return Ket(std::move(out));
}

Operator tensor(const Operator &a, const Operator &b) {
    const auto &A = a.matrix();
    const auto &B = b.matrix();
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return Operator(std::move(out));
}

QuantumObject tensor(const QuantumObject &a, const QuantumObject &b) {
    if (a.index() != b.index()) {
        throw KindMismatchError("tensor: cannot combine a ket with an operator");
    }
    if (const auto *ka = std::get_if<Ket>(&a)) {
        return tensor(*ka, std::get<Ket>(b));
    }
    return tensor(std::get<Operator>(a), std::get<Operator>(b));
}

Operator projector(const Ket &k) {
    return Operator(k.amplitudes() * k.amplitudes().adjoint());
}

Complex inner(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("inner: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double expectation(const Operator &rho, const Operator &obs) {
    if (rho.dim() != obs.dim()) {
        throw ValidationError("expectation: dimension mismatch");
    }
    return (rho.matrix() * obs.matrix()).trace().real();
}

bool is_density(const Operator &rho) {
    const Matrix &m = rho.matrix();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kExactTolerance) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kExactTolerance) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= kEigenvalueFloor;
}

void validate_density(const Operator &rho) {
    if (!is_density(rho)) {
        throw ValidationError("operator is not a valid density matrix");
    }
}

Operator partial_trace(const Operator &rho, Subsystem keep) {
    if (rho.dim() != 4) {
        throw ValidationError("partial_trace: expected a two-qubit operator");
    }
    validate_density(rho);
    const Matrix &m = rho.matrix();
    Matrix out = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int ip = 0; ip < 2; ++ip) {
            for (int j = 0; j < 2; ++j) {
                if (keep == Subsystem::first) {
                    out(i, ip) += m(2 * i + j, 2 * ip + j);
                } else {
                    out(i, ip) += m(2 * j + i, 2 * j + ip);
                }
            }
        }
    }
    return Operator(std::move(out));
}

BlochVector bloch_vector(const Operator &rho) {
    if (rho.dim() != 2) {
        throw ValidationError("bloch_vector: expected a one-qubit operator");
    }
    validate_density(rho);
    return {expectation(rho, pauli_x()), expectation(rho, pauli_y()), expectation(rho, pauli_z())};
}

Ket ket_from_bloch(const BlochVector &m) {
    require_unit(m, "ket_from_bloch");
    double z = std::clamp(m.z / m.norm(), -1.0, 1.0);
    double phi = std::atan2(m.y, m.x);
    Vector v(2);
    v << std::sqrt((1.0 + z) / 2.0), std::polar(std::sqrt((1.0 - z) / 2.0), phi);
    return Ket::normalized(v);
}

Ket ket_from_bloch_paper_literal(double eta, double phi) {
    if (eta < -1.0 - 1e-9 || eta > 1.0 + 1e-9) {
        throw ValidationError("ket_from_bloch_paper_literal: eta must lie in [-1, 1]");
    }
    eta = std::clamp(eta, -1.0, 1.0);
    Vector v(2);
    v << std::polar(std::sqrt((1.0 - eta) / 2.0), phi / 2.0),
        std::polar(std::sqrt((1.0 + eta) / 2.0), -phi / 2.0);
    return Ket::normalized(v);
}

Ket ket_from_bloch_paper_literal(const BlochVector &m) {
    require_unit(m, "ket_from_bloch_paper_literal");
    return ket_from_bloch_paper_literal(m.eta(), m.phi());
}

Ket antipodal_paper_literal(const BlochVector &m) {
    require_unit(m, "antipodal_paper_literal");
    return ket_from_bloch_paper_literal(-m.eta(), m.phi() + std::numbers::pi);
}

Ket antipodal(const Ket &k) {
    if (k.dim() != 2) {
        throw ValidationError("antipodal: expected a one-qubit ket");
    }
    Vector v(2);
    v << kI * std::conj(k[1]), -kI * std::conj(k[0]);
    return Ket(std::move(v));
}

namespace {

Ket bell(Complex a00, Complex a01, Complex a10, Complex a11) {
    Vector v(4);
    v << a00, a01, a10, a11;
    return Ket(v / std::numbers::sqrt2);
}

}  // namespace

Ket bell_phi_plus() { return bell(1, 0, 0, 1); }
Ket bell_phi_minus() { return bell(1, 0, 0, -1); }
Ket bell_psi_plus() { return bell(0, 1, 1, 0); }
Ket bell_psi_minus() { return bell(0, 1, -1, 0); }

Operator werner_state(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw RangeError("werner_state: visibility must lie in [0, 1]");
    }
    Matrix m = visibility * projector(bell_psi_minus()).matrix() +
               ((1.0 - visibility) / 4.0) * Matrix::Identity(4, 4);
    return Operator(std::move(m));
}

std::vector<double> born_probabilities(const Operator &rho, std::span<const Ket> basis) {
    if (basis.size() != rho.dim()) {
        throw ValidationError("born_probabilities: basis must contain dim(rho) kets");
    }
    for (const Ket &k : basis) {
        if (k.dim() != rho.dim()) {
            throw ValidationError("born_probabilities: basis ket dimension mismatch");
        }
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            Complex g = inner(basis[i], basis[j]);
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(g - want) > kRoundTripTolerance) {
                throw ValidationError("born_probabilities: basis is not orthonormal");
            }
        }
    }
    std::vector<double> p;
    p.reserve(basis.size());
    for (const Ket &k : basis) {
        p.push_back(k.amplitudes().dot(rho.matrix() * k.amplitudes()).real());
    }
    return p;
}

Operator permute_qubits(const Operator &rho, std::span<const int> order) {
    const int n = rho.qubits();
    if (static_cast<int>(order.size()) != n) {
        throw WiringError("permute_qubits: order must list every qubit once");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : order) {
        if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)]) {
            throw WiringError("permute_qubits: order is not a permutation");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
    const std::size_t dim = rho.dim();
    std::vector<Eigen::Index> source(dim);
    for (std::size_t out = 0; out < dim; ++out) {
        std::size_t in = 0;
        for (int k = 0; k < n; ++k) {
            std::size_t bit = (out >> (n - 1 - k)) & 1U;
            in |= bit << (n - 1 - order[static_cast<std::size_t>(k)]);
        }
        source[out] = static_cast<Eigen::Index>(in);
    }
    const Matrix &m = rho.matrix();
    Matrix result(m.rows(), m.cols());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            result(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(source[r], source[c]);
        }
    }
    return Operator(std::move(result));
}

}  // namespace qnet
