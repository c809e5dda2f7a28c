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

// Small dense linear algebra over qubit registers.
//
// Ordering convention: in every tensor product the left factor is the most
// significant subsystem, so |q0 q1 ... q(n-1)> lives at index
// q0*2^(n-1) + ... + q(n-1).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace qnet {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kRoundTripTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

/// Unit-norm state vector on n qubits.
class Ket {
  public:
    /// Throws ValidationError unless the length is a power of two and the
    /// norm is 1 within kExactTolerance.
    explicit Ket(Vector amplitudes);

    /// Rescales an arbitrary non-zero vector to unit norm.
    static Ket normalized(const Vector &v);
    static Ket basis_state(int qubits, std::size_t index);

    const Vector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    int qubits() const;

  private:
    Vector amplitudes_;
};

/// Square complex matrix on n qubits.
class Operator {
  public:
    explicit Operator(Matrix entries);

    static Operator identity(int qubits);

    const Matrix &matrix() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    int qubits() const;

  private:
    Matrix entries_;
};

/// Real 3-vector on (or inside) the Bloch sphere.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    /// Builds (sqrt(1-eta^2) cos phi, sqrt(1-eta^2) sin phi, eta).
    static BlochVector from_cylindrical(double eta, double phi);

    double norm() const;
    double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    /// z component.
    double eta() const { return z; }
    /// Azimuth in [0, 2pi).
    double phi() const;

    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector operator+(const BlochVector &o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector &o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
};

double distance(const BlochVector &a, const BlochVector &b);

enum class Subsystem { first, second };

const Operator &pauli_x();
const Operator &pauli_y();
const Operator &pauli_z();
/// m . sigma
Operator pauli_along(const BlochVector &m);

Ket tensor(const Ket &a, const Ket &b);
Operator tensor(const Operator &a, const Operator &b);

using QuantumObject = std::variant<Ket, Operator>;
/// Dynamic form; throws KindMismatchError when the kinds differ.
QuantumObject tensor(const QuantumObject &a, const QuantumObject &b);

Operator projector(const Ket &k);
Complex inner(const Ket &a, const Ket &b);
/// tr(rho * obs), real part.
double expectation(const Operator &rho, const Operator &obs);

bool is_density(const Operator &rho);
/// Throws ValidationError if rho is not Hermitian, unit-trace and PSD.
void validate_density(const Operator &rho);

/// Two-qubit density -> one-qubit density of the kept subsystem.
Operator partial_trace(const Operator &rho, Subsystem keep);

BlochVector bloch_vector(const Operator &rho);

/// +1 eigenstate of m.sigma, |0> amplitude real and nonnegative.
Ket ket_from_bloch(const BlochVector &m);

/// sqrt((1-eta)/2) e^{i phi/2}|0> + sqrt((1+eta)/2) e^{-i phi/2}|1>, taken
/// verbatim; its Bloch vector is (x, -y, -z) of the input.
Ket ket_from_bloch_paper_literal(double eta, double phi);
Ket ket_from_bloch_paper_literal(const BlochVector &m);
/// Same formula with eta -> -eta and phi -> phi + pi (no wrapping of phi).
Ket antipodal_paper_literal(const BlochVector &m);

/// Orthogonal partner (a0, a1) -> (i conj(a1), -i conj(a0)). On the literal
/// parameterization this coincides with eta -> -eta, phi -> phi + pi.
Ket antipodal(const Ket &k);

Ket bell_phi_plus();
Ket bell_phi_minus();
Ket bell_psi_plus();
Ket bell_psi_minus();

/// W |psi-><psi-| + (1 - W) 1/4; throws RangeError outside [0, 1].
Operator werner_state(double visibility);

/// p_k = <k|rho|k>. Throws ValidationError if the basis is incomplete,
/// not orthonormal within kRoundTripTolerance, or the dimensions disagree.
std::vector<double> born_probabilities(const Operator &rho, std::span<const Ket> basis);

/// Reorders qubits: qubit `order[i]` of the input becomes qubit i of the output.
Operator permute_qubits(const Operator &rho, std::span<const int> order);

}  // namespace qnet
