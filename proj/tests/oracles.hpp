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

// Independent reference computations used by the tests. Nothing here calls
// the library's contraction code; matrices are built entry by entry.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M kron(const M &a, const M &b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline V kron(const V &a, const V &b) {
    V out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline M sx() {
    M m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline M sy() {
    M m(2, 2);
    m << 0, C(0, -1), C(0, 1), 0;
    return m;
}

inline M sz() {
    M m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline M eye(int n) {
    return M::Identity(n, n);
}

inline M along(double x, double y, double z) {
    return x * sx() + y * sy() + z * sz();
}

inline V singlet() {
    V v = V::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

inline M werner(double w) {
    const V s = singlet();
    return w * s * s.adjoint() + (1.0 - w) * eye(4) / 4.0;
}

/// (1 + s u.sigma) / 2 with s = +1 for outcome 0.
inline M end_projector(const std::array<double, 3> &u, int outcome) {
    const double s = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (eye(2) + s * along(u[0], u[1], u[2]));
}

inline std::array<double, 3> random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::array<double, 3> v{n(rng), n(rng), n(rng)};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / r, v[1] / r, v[2] / r};
}

/// Regular tetrahedron with vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)
/// over sqrt3.
inline std::array<std::array<double, 3>, 4> tetrahedron() {
    const double r = 1.0 / std::sqrt(3.0);
    return {{{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}}};
}

/// 1/4 [1 + sqrt3/2 (m.s x 1 - 1 x m.s) - 3/2 sum_nk m_n m_k s_n x s_k
///      + 1/2 sum_n s_n x s_n].
inline M ejm_projector(const std::array<double, 3> &m) {
    const std::array<M, 3> s{sx(), sy(), sz()};
    const M ms = along(m[0], m[1], m[2]);
    M out = eye(4);
    out += std::sqrt(3.0) / 2.0 * (kron(ms, eye(2)) - kron(eye(2), ms));
    out -= 1.5 * kron(ms, ms);
    for (int n = 0; n < 3; ++n) {
        out += 0.5 * kron(s[static_cast<std::size_t>(n)], s[static_cast<std::size_t>(n)]);
    }
    return out / 4.0;
}

}  // namespace oracle
