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

#include "qnet/correlation_table.hpp"

#include "qnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qnet {

namespace {

std::size_t product(const std::vector<int> &sizes) {
    std::size_t n = 1;
    for (int s : sizes) {
        n *= static_cast<std::size_t>(s);
    }
    return n;
}

std::size_t mixed_radix_index(std::span<const int> digits, const std::vector<int> &radices, const char *what) {
    if (digits.size() != radices.size()) {
        throw UsageError(std::string("CorrelationTable: wrong number of ") + what);
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= radices[i]) {
            throw UsageError(std::string("CorrelationTable: ") + what + " out of range");
        }
        idx = idx * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(digits[i]);
    }
    return idx;
}

std::vector<int> mixed_radix_digits(std::size_t index, const std::vector<int> &radices) {
    std::vector<int> digits(radices.size());
    for (std::size_t i = radices.size(); i-- > 0;) {
        auto r = static_cast<std::size_t>(radices[i]);
        digits[i] = static_cast<int>(index % r);
        index /= r;
    }
    return digits;
}

void require_same_shape(const CorrelationTable &a, const CorrelationTable &b) {
    if (a.outcome_alphabets() != b.outcome_alphabets() || a.input_alphabets() != b.input_alphabets()) {
        throw UsageError("tables have different shapes");
    }
}

}  // namespace

CorrelationTable::CorrelationTable(std::vector<int> outcome_alphabets, std::vector<int> input_alphabets,
                                   std::vector<double> probabilities)
    : outcome_alphabets_(std::move(outcome_alphabets)),
      input_alphabets_(std::move(input_alphabets)),
      probabilities_(std::move(probabilities)) {
    if (outcome_alphabets_.empty()) {
        throw ValidationError("CorrelationTable: at least one party required");
    }
    if (input_alphabets_.empty()) {
        input_alphabets_.assign(outcome_alphabets_.size(), 1);
    }
    if (input_alphabets_.size() != outcome_alphabets_.size()) {
        throw ValidationError("CorrelationTable: input and outcome alphabets disagree on party count");
    }
    for (std::size_t i = 0; i < outcome_alphabets_.size(); ++i) {
        if (outcome_alphabets_[i] < 1 || input_alphabets_[i] < 1) {
            throw ValidationError("CorrelationTable: alphabet sizes must be positive");
        }
    }
    outcome_tuples_ = product(outcome_alphabets_);
    input_tuples_ = product(input_alphabets_);
    if (probabilities_.size() != outcome_tuples_ * input_tuples_) {
        throw ValidationError("CorrelationTable: probability count does not match the alphabets");
    }
    for (std::size_t s = 0; s < input_tuples_; ++s) {
        double sum = 0.0;
        for (double p : slice(s)) {
            if (!std::isfinite(p) || p < -kNegativeTolerance) {
                throw ValidationError("CorrelationTable: negative or non-finite probability");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kNormalizationTolerance) {
            throw ValidationError("CorrelationTable: slice " + std::to_string(s) + " sums to " + std::to_string(sum));
        }
    }
}

CorrelationTable::CorrelationTable(std::vector<int> outcome_alphabets, std::vector<double> probabilities)
    : CorrelationTable(std::move(outcome_alphabets), {}, std::move(probabilities)) {}

std::span<const double> CorrelationTable::slice(std::size_t input_index) const {
    if (input_index >= input_tuples_) {
        throw UsageError("CorrelationTable: input index out of range");
    }
    return std::span<const double>(probabilities_).subspan(input_index * outcome_tuples_, outcome_tuples_);
}

std::size_t CorrelationTable::outcome_index(std::span<const int> outcomes) const {
    return mixed_radix_index(outcomes, outcome_alphabets_, "outcomes");
}

std::size_t CorrelationTable::input_index(std::span<const int> inputs) const {
    if (inputs.empty()) {
        if (has_inputs()) {
            throw UsageError("CorrelationTable: inputs required");
        }
        return 0;
    }
    return mixed_radix_index(inputs, input_alphabets_, "inputs");
}

std::vector<int> CorrelationTable::outcome_tuple(std::size_t index) const {
    return mixed_radix_digits(index, outcome_alphabets_);
}

std::vector<int> CorrelationTable::input_tuple(std::size_t index) const {
    return mixed_radix_digits(index, input_alphabets_);
}

double CorrelationTable::at(std::span<const int> outcomes, std::span<const int> inputs) const {
    return probabilities_[input_index(inputs) * outcome_tuples_ + outcome_index(outcomes)];
}

double CorrelationTable::operator()(int a, int b, int c) const {
    const std::array<int, 3> o{a, b, c};
    return at(o);
}

CorrelationTable condition_on(const CorrelationTable &t, std::size_t party, int outcome) {
    if (party >= t.parties() || t.parties() < 2) {
        throw UsageError("condition_on: party index out of range");
    }
    if (t.input_alphabets()[party] != 1) {
        throw UsageError("condition_on: conditioned party must not have inputs");
    }
    if (outcome < 0 || outcome >= t.outcome_alphabets()[party]) {
        throw UsageError("condition_on: outcome out of range");
    }
    std::vector<int> outs = t.outcome_alphabets();
    std::vector<int> ins = t.input_alphabets();
    outs.erase(outs.begin() + static_cast<std::ptrdiff_t>(party));
    ins.erase(ins.begin() + static_cast<std::ptrdiff_t>(party));

    std::size_t reduced_outcomes = product(outs);
    std::vector<double> probs(reduced_outcomes * t.input_tuples(), 0.0);
    for (std::size_t s = 0; s < t.input_tuples(); ++s) {
        auto sl = t.slice(s);
        double norm = 0.0;
        for (std::size_t o = 0; o < t.outcome_tuples(); ++o) {
            auto tuple = t.outcome_tuple(o);
            if (tuple[party] != outcome) {
                continue;
            }
            tuple.erase(tuple.begin() + static_cast<std::ptrdiff_t>(party));
            probs[s * reduced_outcomes + mixed_radix_index(tuple, outs, "outcomes")] += sl[o];
            norm += sl[o];
        }
        if (norm <= 0.0) {
            throw UsageError("condition_on: conditioning outcome has zero probability");
        }
        for (std::size_t o = 0; o < reduced_outcomes; ++o) {
            probs[s * reduced_outcomes + o] /= norm;
        }
    }
    return CorrelationTable(std::move(outs), std::move(ins), std::move(probs));
}

CorrelationTable group_outcomes(const CorrelationTable &t, std::span<const int> groups) {
    int new_size = 0;
    for (std::size_t p = 0; p < t.parties(); ++p) {
        if (static_cast<std::size_t>(t.outcome_alphabets()[p]) != groups.size()) {
            throw UsageError("group_outcomes: grouping must cover every outcome of every party");
        }
    }
    for (int g : groups) {
        if (g < 0) {
            throw UsageError("group_outcomes: negative group label");
        }
        new_size = std::max(new_size, g + 1);
    }
    std::vector<int> outs(t.parties(), new_size);
    const std::size_t reduced = product(outs);
    std::vector<double> probs(reduced * t.input_tuples(), 0.0);
    for (std::size_t s = 0; s < t.input_tuples(); ++s) {
        auto sl = t.slice(s);
        for (std::size_t o = 0; o < t.outcome_tuples(); ++o) {
            auto tuple = t.outcome_tuple(o);
            for (int &v : tuple) {
                v = groups[static_cast<std::size_t>(v)];
            }
            probs[s * reduced + mixed_radix_index(tuple, outs, "outcomes")] += sl[o];
        }
    }
    return CorrelationTable(std::move(outs), t.input_alphabets(), std::move(probs));
}

double total_variation(const CorrelationTable &a, const CorrelationTable &b) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.probabilities().size(); ++i) {
        sum += std::abs(a.probabilities()[i] - b.probabilities()[i]);
    }
    return 0.5 * sum;
}

double kl_divergence(const CorrelationTable &target, const CorrelationTable &model) {
    require_same_shape(target, model);
    double sum = 0.0;
    for (std::size_t i = 0; i < target.probabilities().size(); ++i) {
        double t = target.probabilities()[i];
        if (t <= 0.0) {
            continue;
        }
        double m = model.probabilities()[i];
        if (m <= 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        sum += t * std::log(t / m);
    }
    return std::max(0.0, sum);
}

TriangleStats triangle_stats(const CorrelationTable &t) {
    const auto &al = t.outcome_alphabets();
    if (t.parties() != 3 || t.has_inputs() || al[0] != al[1] || al[1] != al[2]) {
        throw UsageError("triangle_stats: expected a three-party input-free table with a common alphabet");
    }
    const int d = al[0];
    const auto n = static_cast<std::size_t>(d);
    TriangleStats s;
    s.marginal_a.assign(n, 0.0);
    s.marginal_b.assign(n, 0.0);
    s.marginal_c.assign(n, 0.0);
    s.p_ab_equal_k.assign(n, 0.0);
    s.p_abc_equal_k.assign(n, 0.0);
    std::vector<double> p_bc_equal_k(n, 0.0);

    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                const double p = t(a, b, c);
                s.marginal_a[static_cast<std::size_t>(a)] += p;
                s.marginal_b[static_cast<std::size_t>(b)] += p;
                s.marginal_c[static_cast<std::size_t>(c)] += p;
                if (a == b) {
                    s.p_a_eq_b += p;
                    s.p_ab_equal_k[static_cast<std::size_t>(a)] += p;
                }
                if (b == c) {
                    s.p_b_eq_c += p;
                    p_bc_equal_k[static_cast<std::size_t>(b)] += p;
                }
                if (a == c) {
                    s.p_a_eq_c += p;
                }
                if (a == b && b == c) {
                    s.p_abc += p;
                    s.p_abc_equal_k[static_cast<std::size_t>(a)] += p;
                }
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        s.p_a_given_b_k.push_back(s.marginal_b[k] > 0.0 ? s.p_ab_equal_k[k] / s.marginal_b[k] : 0.0);
        s.p_a_given_bc_k.push_back(p_bc_equal_k[k] > 0.0 ? s.p_abc_equal_k[k] / p_bc_equal_k[k] : 0.0);
    }
    s.p_abc_given_ab = s.p_a_eq_b > 0.0 ? s.p_abc / s.p_a_eq_b : 0.0;
    return s;
}

}  // namespace qnet
