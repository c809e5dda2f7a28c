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

#include "qnet/inequalities.hpp"

#include "qnet/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qnet {

namespace {

constexpr std::array<std::array<int, 2>, 2> kChshPattern{{{1, 1}, {1, -1}}};

int spin(int outcome) {
    return outcome == 0 ? 1 : -1;
}

const Operator &pauli(int k) {
    static const Operator id = Operator::identity(1);
    switch (k) {
    case 1:
        return pauli_x();
    case 2:
        return pauli_y();
    case 3:
        return pauli_z();
    default:
        return id;
    }
}

// Eigenvalue of `obs` on `k`, or 0 if `k` is not an eigenvector.
int eigen_sign(const Ket &k, const Operator &obs) {
    const Vector image = obs.matrix() * k.amplitudes();
    for (int s : {1, -1}) {
        if ((image - static_cast<double>(s) * k.amplitudes()).cwiseAbs().maxCoeff() < kRoundTripTolerance) {
            return s;
        }
    }
    return 0;
}

}  // namespace

std::string_view to_string(InequalityKind kind) {
    return kind == InequalityKind::chsh ? "CHSH" : "bilocality";
}

InequalityResult chsh_value(const CorrelationTable &t, const SignTable &signs, std::string settings_used) {
    if (t.parties() != 2 || t.outcome_alphabets() != std::vector<int>{2, 2} ||
        t.input_alphabets() != std::vector<int>{2, 2}) {
        throw UsageError("chsh_value: expected two parties with binary outcomes and two inputs each");
    }
    double sum = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double e = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int c = 0; c < 2; ++c) {
                    const std::array<int, 2> o{a, c};
                    const std::array<int, 2> in{x, y};
                    e += spin(a) * spin(c) * t.at(o, in);
                }
            }
            sum += kChshPattern[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] *
                   signs[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] * e;
        }
    }
    InequalityResult r;
    r.name = InequalityKind::chsh;
    r.value = std::abs(sum);
    r.bound = 2.0;
    r.violated = r.value > r.bound + kViolationMargin;
    r.settings_used = std::move(settings_used);
    return r;
}

InequalityResult bilocality_value(const CorrelationTable &t, std::span<const OutcomeBits> bits,
                                  std::string settings_used) {
    if (t.parties() != 3 || t.outcome_alphabets()[0] != 2 || t.outcome_alphabets()[2] != 2 ||
        t.input_alphabets() != std::vector<int>{2, 1, 2}) {
        throw UsageError("bilocality_value: expected a two-source chain with binary ends and two inputs each");
    }
    const int middle = t.outcome_alphabets()[1];
    if (bits.size() != static_cast<std::size_t>(middle)) {
        throw UsageError("bilocality_value: a bit decomposition of every middle outcome is required");
    }
    double i_sum = 0.0;
    double j_sum = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const int sign_xy = (x + y) % 2 == 0 ? 1 : -1;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < middle; ++b) {
                    for (int c = 0; c < 2; ++c) {
                        const std::array<int, 3> o{a, b, c};
                        const std::array<int, 3> in{x, 0, y};
                        const double p = t.at(o, in);
                        const double ac = spin(a) * spin(c) * p;
                        i_sum += ac * bits[static_cast<std::size_t>(b)].b0;
                        j_sum += sign_xy * ac * bits[static_cast<std::size_t>(b)].b1;
                    }
                }
            }
        }
    }
    InequalityResult r;
    r.name = InequalityKind::bilocality;
    r.value = std::sqrt(std::abs(i_sum / 4.0)) + std::sqrt(std::abs(j_sum / 4.0));
    r.bound = 1.0;
    r.violated = r.value > r.bound + kViolationMargin;
    r.settings_used = std::move(settings_used);
    return r;
}

std::vector<OutcomeBits> bit_decomposition(const JointBasis &basis) {
    const Operator zz = tensor(pauli_z(), pauli_z());
    const Operator xx = tensor(pauli_x(), pauli_x());
    std::vector<OutcomeBits> out;
    for (const Ket &k : basis.kets) {
        if (k.dim() != 4) {
            throw UsageError("bit_decomposition: expected two-qubit kets");
        }
        const int b0 = eigen_sign(k, zz);
        const int b1 = eigen_sign(k, xx);
        if (b0 == 0 || b1 == 0) {
            throw UsageError("bit_decomposition: basis outcome is not a joint eigenstate of ZZ and XX");
        }
        out.push_back({b0, b1});
    }
    return out;
}

EndSettings chsh_optimal_settings() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}, {{r, 0.0, r}, {-r, 0.0, r}}};
}

EndSettings bilocal_optimal_settings() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{{r, 0.0, r}, {-r, 0.0, r}}, {{r, 0.0, r}, {-r, 0.0, r}}};
}

std::string describe(const EndSettings &settings) {
    std::ostringstream os;
    os.precision(6);
    auto list = [&os](const std::vector<BlochVector> &dirs) {
        os << '[';
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            os << (i ? ", " : "") << '(' << dirs[i].x << ", " << dirs[i].y << ", " << dirs[i].z << ')';
        }
        os << ']';
    };
    os << "x: ";
    list(settings.x);
    os << "; y: ";
    list(settings.y);
    os << "; outcome 0 -> +1, outcome 1 -> -1";
    return os.str();
}

int pauli_relating_to_singlet(const Ket &bell) {
    if (bell.dim() != 4) {
        throw UsageError("pauli_relating_to_singlet: expected a two-qubit ket");
    }
    const Vector singlet = bell_psi_minus().amplitudes();
    for (int k = 0; k < 4; ++k) {
        const Vector v = tensor(pauli(k), Operator::identity(1)).matrix() * singlet;
        if (std::abs(std::abs(bell.amplitudes().dot(v)) - 1.0) < kRoundTripTolerance) {
            return k;
        }
    }
    throw UsageError("pauli_relating_to_singlet: state is not a Pauli image of the singlet");
}

SignTable correction_signs(const Ket &bell, const EndSettings &settings) {
    if (settings.x.size() != 2 || settings.y.size() != 2) {
        throw UsageError("correction_signs: two settings per end party required");
    }
    const Operator &p = pauli(pauli_relating_to_singlet(bell));
    SignTable signs{};
    for (std::size_t x = 0; x < 2; ++x) {
        const BlochVector &a = settings.x[x];
        const Operator conjugated(p.matrix() * pauli_along(a).matrix() * p.matrix());
        const BlochVector image{0.5 * expectation(conjugated, pauli_x()), 0.5 * expectation(conjugated, pauli_y()),
                                0.5 * expectation(conjugated, pauli_z())};
        int s = 0;
        if (distance(image, a) < kRoundTripTolerance) {
            s = 1;
        } else if (distance(image, -a) < kRoundTripTolerance) {
            s = -1;
        } else {
            throw UsageError("correction_signs: Pauli correction does not map Alice's setting onto itself");
        }
        signs[x] = {s, s};
    }
    return signs;
}

ThresholdReport threshold_report(SwapScenario scenario, double w1, double w2) {
    if (!(w1 >= 0.0 && w1 <= 1.0 && w2 >= 0.0 && w2 <= 1.0)) {
        throw RangeError("threshold_report: visibilities must lie in [0, 1]");
    }
    ThresholdReport r;
    r.scenario = scenario;
    r.w1 = w1;
    r.w2 = w2;
    r.product = w1 * w2;
    r.chsh_product_threshold = 1.0 / std::numbers::sqrt2;
    r.bilocal_product_threshold = 0.5;
    r.chsh_symmetric_threshold = std::pow(2.0, -0.25);
    r.bilocal_symmetric_threshold = std::pow(2.0, -0.5);
    r.chsh_violated = r.product > r.chsh_product_threshold;
    r.bilocal_violated = r.product > r.bilocal_product_threshold;
    r.violated = scenario == SwapScenario::chsh_swap ? r.chsh_violated : r.bilocal_violated;
    return r;
}

}  // namespace qnet
