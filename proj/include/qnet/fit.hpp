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

// Heuristic search for 3-local models of a triangle table.
//
// Each restart draws a random model and runs expectation-maximisation
// (multiplicative updates of the sources and response rows, which keep every
// row on its simplex). A small distance is evidence of 3-locality; a
// plateau above zero proves nothing.

#pragma once

#include "qnet/correlation_table.hpp"
#include "qnet/local_models.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace qnet {

enum class DistanceKind { total_variation, kl };

std::string_view to_string(DistanceKind d);
DistanceKind parse_distance(std::string_view s);

struct FitConfig {
    int max_cardinality = 8;
    int restarts = 64;
    int max_iterations = 5000;
    std::uint64_t seed = 0;
    DistanceKind distance = DistanceKind::total_variation;
    double tolerance = 1e-10;
    /// Worker threads for the restarts; 0 uses the hardware concurrency.
    int threads = 1;

    /// Throws ConfigurationError unless every count is positive,
    /// max_cardinality >= 2 and tolerance > 0.
    void validate() const;
};

/// Restart r uses hidden cardinality 2 + r mod (max_cardinality - 1) for all
/// three sources and the generator mt19937_64(seed ^ r).
int restart_cardinality(const FitConfig &cfg, int restart);

struct RestartTrace {
    int restart = 0;
    int cardinality = 0;
    double distance = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct FitResult {
    LocalModel model;
    double distance = 0.0;
    bool converged = false;
    int best_restart = 0;
    /// One entry per restart that was run, in restart order. Restarts after
    /// the first one that reaches the tolerance are skipped.
    std::vector<RestartTrace> trace;
};

/// Distance between two tables of the same shape.
double table_distance(DistanceKind kind, const CorrelationTable &target, const CorrelationTable &model);

/// Target must be a three-party input-free table with a common outcome
/// alphabet (UsageError otherwise). A restart converges when its distance
/// drops to the tolerance or improves by less than the tolerance over 50
/// iterations; hitting max_iterations leaves it unconverged. Never throws on
/// non-convergence. Deterministic for a fixed config, whatever the thread
/// count.
FitResult fit_3local(const CorrelationTable &target, const FitConfig &cfg);

}  // namespace qnet
