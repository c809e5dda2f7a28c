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

#include "qnet/errors.hpp"
#include "qnet/fit.hpp"
#include "qnet/network.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qnet;

TEST(Fit, RecoversRealizableTarget) {
    FitConfig cfg;
    cfg.seed = 1;
    const CorrelationTable target = evaluate_model(asymmetric_model());
    const FitResult r = fit_3local(target, cfg);
    EXPECT_LE(r.distance, 1e-9);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(total_variation(target, evaluate_model(r.model)), r.distance, 1e-15);
}

TEST(Fit, BsmTrianglePositiveControl) {
    FitConfig cfg;
    cfg.seed = 7;
    const FitResult r = fit_3local(bsm_triangle_reference(), cfg);
    EXPECT_LE(r.distance, 1e-2);
    EXPECT_LE(r.model.alphabets[0], cfg.max_cardinality);
}

TEST(Fit, GroupedEjmTriangle) {
    FitConfig cfg;
    cfg.seed = 3;
    const std::array<int, 4> groups{0, 0, 1, 1};
    const CorrelationTable target = group_outcomes(triangle_correlation(ejm_basis(), {1, 1, 1}), groups);
    EXPECT_NEAR(target(0, 0, 0), 14.0 / 64, 1e-12);
    EXPECT_NEAR(target(0, 1, 0), 6.0 / 64, 1e-12);
    EXPECT_LE(fit_3local(target, cfg).distance, 1e-3);
}

TEST(Fit, EjmTriangleReportsDistanceWithoutVerdict) {
    FitConfig cfg;
    cfg.seed = 5;
    cfg.restarts = 8;
    cfg.max_iterations = 500;
    const FitResult r = fit_3local(triangle_correlation(ejm_basis(), {1, 1, 1}), cfg);
    EXPECT_TRUE(std::isfinite(r.distance));
    EXPECT_GE(r.distance, 0.0);
    EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(cfg.restarts));
    RecordProperty("ejm_fit_distance", std::to_string(r.distance));
}

TEST(Fit, DeterministicAcrossRunsAndThreadCounts) {
    FitConfig cfg;
    cfg.seed = 11;
    cfg.restarts = 10;
    cfg.max_iterations = 300;
    const CorrelationTable target = triangle_correlation(ejm_basis(), {0.9, 0.8, 1.0});
    const FitResult a = fit_3local(target, cfg);
    const FitResult b = fit_3local(target, cfg);
    cfg.threads = 3;
    const FitResult c = fit_3local(target, cfg);
    for (const FitResult *r : {&b, &c}) {
        EXPECT_EQ(r->distance, a.distance);
        EXPECT_EQ(r->best_restart, a.best_restart);
        ASSERT_EQ(r->trace.size(), a.trace.size());
        for (std::size_t i = 0; i < a.trace.size(); ++i) {
            EXPECT_EQ(r->trace[i].distance, a.trace[i].distance);
        }
        EXPECT_EQ(r->model.responses, a.model.responses);
    }
}

TEST(Fit, EarlyExitIsIndependentOfThreads) {
    FitConfig cfg;
    cfg.seed = 7;
    const FitResult one = fit_3local(bsm_triangle_reference(), cfg);
    cfg.threads = 4;
    const FitResult four = fit_3local(bsm_triangle_reference(), cfg);
    EXPECT_EQ(one.trace.size(), four.trace.size());
    EXPECT_EQ(one.distance, four.distance);
}

TEST(Fit, IterationCapIsFlaggedNotThrown) {
    FitConfig cfg;
    cfg.restarts = 2;
    cfg.max_iterations = 1;
    const FitResult r = fit_3local(triangle_correlation(ejm_basis(), {1, 1, 1}), cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.distance, 0.0);
}

TEST(Fit, CardinalitySchedule) {
    FitConfig cfg;
    cfg.max_cardinality = 4;
    EXPECT_EQ(restart_cardinality(cfg, 0), 2);
    EXPECT_EQ(restart_cardinality(cfg, 2), 4);
    EXPECT_EQ(restart_cardinality(cfg, 3), 2);
}

TEST(Fit, KlDistance) {
    FitConfig cfg;
    cfg.distance = DistanceKind::kl;
    cfg.restarts = 4;
    const FitResult r = fit_3local(evaluate_model(asymmetric_model()), cfg);
    EXPECT_LE(r.distance, 1e-9);
}

TEST(Fit, RejectsBadInput) {
    FitConfig cfg;
    cfg.tolerance = 0.0;
    EXPECT_THROW(fit_3local(bsm_triangle_reference(), cfg), ConfigurationError);
    cfg = FitConfig{};
    cfg.max_cardinality = 1;
    EXPECT_THROW(fit_3local(bsm_triangle_reference(), cfg), ConfigurationError);
    const std::vector<double> w{1.0, 1.0};
    const CorrelationTable chain = chain_correlation(2, w, EndSettings{{{0, 0, 1}}, {{0, 0, 1}}}, bell_basis());
    EXPECT_THROW(fit_3local(chain, FitConfig{}), UsageError);
    EXPECT_THROW(parse_distance("l2"), UsageError);
}
