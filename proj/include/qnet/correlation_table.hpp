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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace qnet {

/// Dense table p(outcomes | inputs) over finite alphabets.
///
/// Storage is input-major: for each input tuple (party 0 most significant)
/// there is one contiguous slice of outcome tuples (party 0 most
/// significant). Outcomes and inputs are 0-based indices here.
class CorrelationTable {
  public:
    static constexpr double kNegativeTolerance = 1e-12;
    static constexpr double kNormalizationTolerance = 1e-9;

    /// Validates shape, nonnegativity and per-slice normalization.
    CorrelationTable(std::vector<int> outcome_alphabets, std::vector<int> input_alphabets,
                     std::vector<double> probabilities);

    /// No-input table.
    CorrelationTable(std::vector<int> outcome_alphabets, std::vector<double> probabilities);

    const std::vector<int> &outcome_alphabets() const { return outcome_alphabets_; }
    const std::vector<int> &input_alphabets() const { return input_alphabets_; }
    const std::vector<double> &probabilities() const { return probabilities_; }

    std::size_t parties() const { return outcome_alphabets_.size(); }
    std::size_t outcome_tuples() const { return outcome_tuples_; }
    std::size_t input_tuples() const { return input_tuples_; }
    bool has_inputs() const { return input_tuples_ > 1; }

    double at(std::span<const int> outcomes, std::span<const int> inputs = {}) const;
    std::span<const double> slice(std::size_t input_index) const;

    std::size_t outcome_index(std::span<const int> outcomes) const;
    std::size_t input_index(std::span<const int> inputs) const;
    std::vector<int> outcome_tuple(std::size_t index) const;
    std::vector<int> input_tuple(std::size_t index) const;

    /// Three-party no-input convenience accessor.
    double operator()(int a, int b, int c) const;

  private:
    std::vector<int> outcome_alphabets_;
    std::vector<int> input_alphabets_;
    std::vector<double> probabilities_;
    std::size_t outcome_tuples_ = 1;
    std::size_t input_tuples_ = 1;
};

/// Removes `party` from the table by conditioning on its outcome. The party
/// must have no inputs; throws UsageError when the outcome has probability 0
/// in some input slice.
CorrelationTable condition_on(const CorrelationTable &t, std::size_t party, int outcome);

/// Merges outcomes through `groups` (groups[k] = new label of outcome k),
/// applied identically to every party.
CorrelationTable group_outcomes(const CorrelationTable &t, std::span<const int> groups);

/// Half the L1 distance; shapes must match.
double total_variation(const CorrelationTable &a, const CorrelationTable &b);
/// KL(target || model), summed over input slices; +inf if unsupported.
double kl_divergence(const CorrelationTable &target, const CorrelationTable &model);

/// Summary statistics of a three-party no-input table with a common
/// outcome alphabet.
struct TriangleStats {
    std::vector<double> marginal_a;
    std::vector<double> marginal_b;
    std::vector<double> marginal_c;
    std::vector<double> p_ab_equal_k;            // p(a=k, b=k)
    std::vector<double> p_a_given_b_k;           // p(a=k | b=k)
    std::vector<double> p_a_given_bc_k;          // p(a=k | b=c=k)
    std::vector<double> p_abc_equal_k;           // p(a=b=c=k)
    double p_a_eq_b = 0.0;
    double p_b_eq_c = 0.0;
    double p_a_eq_c = 0.0;
    double p_abc = 0.0;                           // p(a=b=c)
    double p_abc_given_ab = 0.0;                  // p(a=b=c | a=b)
};

/// Throws UsageError for tables that are not 3-party, input-free, with
/// equal outcome alphabets.
TriangleStats triangle_stats(const CorrelationTable &t);

}  // namespace qnet
