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

#include "qnet/fit.hpp"

#include "qnet/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>

namespace qnet {

namespace {

constexpr int kStallWindow = 50;

// Flat parameters of a model whose three sources share cardinality k.
struct Params {
    std::size_t k = 0;
    std::size_t o = 0;
    std::array<std::vector<double>, 3> sources;
    std::array<std::vector<double>, 3> responses;  // same layout as LocalModel

    LocalModel to_model() const {
        LocalModel m;
        const int ki = static_cast<int>(k);
        m.alphabets = {ki, ki, ki};
        m.outcomes = static_cast<int>(o);
        m.sources = sources;
        m.responses = responses;
        return m;
    }
};

void fill_simplex(std::mt19937_64 &rng, double *row, std::size_t n) {
    std::exponential_distribution<double> draw(1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        row[i] = draw(rng) + 1e-12;
        sum += row[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        row[i] /= sum;
    }
}

Params random_params(std::mt19937_64 &rng, std::size_t k, std::size_t o) {
    Params p;
    p.k = k;
    p.o = o;
    for (auto &s : p.sources) {
        s.resize(k);
        fill_simplex(rng, s.data(), k);
    }
    for (auto &r : p.responses) {
        r.resize(k * k * o);
        for (std::size_t row = 0; row < k * k; ++row) {
            fill_simplex(rng, &r[row * o], o);
        }
    }
    return p;
}

void predict(const Params &p, std::vector<double> &out) {
    const std::size_t k = p.k;
    const std::size_t o = p.o;
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t al = 0; al < k; ++al) {
        for (std::size_t be = 0; be < k; ++be) {
            const double *c_row = &p.responses[2][(al * k + be) * o];
            for (std::size_t ga = 0; ga < k; ++ga) {
                const double w = p.sources[0][al] * p.sources[1][be] * p.sources[2][ga];
                const double *a_row = &p.responses[0][(be * k + ga) * o];
                const double *b_row = &p.responses[1][(ga * k + al) * o];
                for (std::size_t a = 0; a < o; ++a) {
                    const double wa = w * a_row[a];
                    for (std::size_t b = 0; b < o; ++b) {
                        const double wab = wa * b_row[b];
                        double *cell = &out[(a * o + b) * o];
                        for (std::size_t c = 0; c < o; ++c) {
                            cell[c] += wab * c_row[c];
                        }
                    }
                }
            }
        }
    }
}

double flat_distance(DistanceKind kind, std::span<const double> target, const std::vector<double> &model) {
    double sum = 0.0;
    if (kind == DistanceKind::total_variation) {
        for (std::size_t i = 0; i < target.size(); ++i) {
            sum += std::abs(target[i] - model[i]);
        }
        return 0.5 * sum;
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] > 0.0) {
            sum += target[i] * std::log(target[i] / std::max(model[i], std::numeric_limits<double>::min()));
        }
    }
    return std::max(0.0, sum);
}

void normalize_rows(std::vector<double> &counts, std::vector<double> &params, std::size_t width) {
    for (std::size_t row = 0; row * width < counts.size(); ++row) {
        double sum = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
            sum += counts[row * width + i];
        }
        if (sum > 0.0) {
            for (std::size_t i = 0; i < width; ++i) {
                params[row * width + i] = counts[row * width + i] / sum;
            }
        }
    }
}

// One EM step: reweight every hidden configuration by target / prediction
// and re-estimate sources and response rows from the expected counts.
void em_step(Params &p, std::span<const double> target, const std::vector<double> &pred) {
    const std::size_t k = p.k;
    const std::size_t o = p.o;
    std::vector<double> ratio(target.size(), 0.0);
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] > 0.0) {
            ratio[i] = target[i] / std::max(pred[i], std::numeric_limits<double>::min());
        }
    }
    std::array<std::vector<double>, 3> ns;
    std::array<std::vector<double>, 3> nr;
    for (std::size_t s = 0; s < 3; ++s) {
        ns[s].assign(k, 0.0);
        nr[s].assign(k * k * o, 0.0);
    }
    std::vector<double> m(o * o);
    std::vector<double> ga(o), gb(o), gc(o);
    for (std::size_t al = 0; al < k; ++al) {
        for (std::size_t be = 0; be < k; ++be) {
            const double *c_row = &p.responses[2][(al * k + be) * o];
            // m(a, b) = sum_c ratio(a, b, c) C(c)
            for (std::size_t ab = 0; ab < o * o; ++ab) {
                double acc = 0.0;
                for (std::size_t c = 0; c < o; ++c) {
                    acc += ratio[ab * o + c] * c_row[c];
                }
                m[ab] = acc;
            }
            for (std::size_t gm = 0; gm < k; ++gm) {
                const double w = p.sources[0][al] * p.sources[1][be] * p.sources[2][gm];
                if (w == 0.0) {
                    continue;
                }
                const double *a_row = &p.responses[0][(be * k + gm) * o];
                const double *b_row = &p.responses[1][(gm * k + al) * o];
                std::fill(gb.begin(), gb.end(), 0.0);
                std::fill(gc.begin(), gc.end(), 0.0);
                double g = 0.0;
                for (std::size_t a = 0; a < o; ++a) {
                    double acc = 0.0;
                    for (std::size_t b = 0; b < o; ++b) {
                        acc += m[a * o + b] * b_row[b];
                        gb[b] += a_row[a] * m[a * o + b];
                        const double ab = a_row[a] * b_row[b];
                        const double *r = &ratio[(a * o + b) * o];
                        for (std::size_t c = 0; c < o; ++c) {
                            gc[c] += ab * r[c];
                        }
                    }
                    ga[a] = acc;
                    g += a_row[a] * acc;
                }
                const double wg = w * g;
                ns[0][al] += wg;
                ns[1][be] += wg;
                ns[2][gm] += wg;
                double *na = &nr[0][(be * k + gm) * o];
                double *nb = &nr[1][(gm * k + al) * o];
                double *nc = &nr[2][(al * k + be) * o];
                for (std::size_t x = 0; x < o; ++x) {
                    na[x] += w * a_row[x] * ga[x];
                    nb[x] += w * b_row[x] * gb[x];
                    nc[x] += w * c_row[x] * gc[x];
                }
            }
        }
    }
    for (std::size_t s = 0; s < 3; ++s) {
        normalize_rows(ns[s], p.sources[s], k);
        normalize_rows(nr[s], p.responses[s], o);
    }
}

struct RestartOutcome {
    RestartTrace trace;
    LocalModel model;
};

RestartOutcome run_restart(const CorrelationTable &target, const FitConfig &cfg, int restart) {
    const auto o = static_cast<std::size_t>(target.outcome_alphabets()[0]);
    const auto k = static_cast<std::size_t>(restart_cardinality(cfg, restart));
    std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(restart));
    Params p = random_params(rng, k, o);
    Params best = p;
    double best_distance = std::numeric_limits<double>::infinity();
    double checkpoint = best_distance;
    std::vector<double> pred(o * o * o);
    const std::span<const double> t = target.probabilities();

    RestartTrace trace;
    trace.restart = restart;
    trace.cardinality = static_cast<int>(k);
    int it = 0;
    for (;; ++it) {
        predict(p, pred);
        const double d = flat_distance(cfg.distance, t, pred);
        if (d < best_distance) {
            best_distance = d;
            best = p;
        }
        if (best_distance <= cfg.tolerance) {
            trace.converged = true;
            break;
        }
        if (it > 0 && it % kStallWindow == 0) {
            if (checkpoint - best_distance < cfg.tolerance) {
                trace.converged = true;
                break;
            }
            checkpoint = best_distance;
        }
        if (it >= cfg.max_iterations) {
            break;
        }
        em_step(p, t, pred);
    }
    trace.iterations = it;
    RestartOutcome out{trace, best.to_model()};
    out.trace.distance = table_distance(cfg.distance, target, evaluate_model(out.model));
    return out;
}

}  // namespace

std::string_view to_string(DistanceKind d) {
    return d == DistanceKind::total_variation ? "total_variation" : "kl";
}

DistanceKind parse_distance(std::string_view s) {
    if (s == "total_variation" || s == "tv") {
        return DistanceKind::total_variation;
    }
    if (s == "kl") {
        return DistanceKind::kl;
    }
    throw UsageError("unknown distance '" + std::string(s) + "'");
}

void FitConfig::validate() const {
    if (max_cardinality < 2 || restarts < 1 || max_iterations < 1 || threads < 0) {
        throw ConfigurationError("FitConfig: counts must be positive and max_cardinality at least 2");
    }
    if (!(tolerance > 0.0)) {
        throw ConfigurationError("FitConfig: tolerance must be positive");
    }
}

int restart_cardinality(const FitConfig &cfg, int restart) {
    return 2 + restart % (cfg.max_cardinality - 1);
}

double table_distance(DistanceKind kind, const CorrelationTable &target, const CorrelationTable &model) {
    return kind == DistanceKind::total_variation ? total_variation(target, model) : kl_divergence(target, model);
}

FitResult fit_3local(const CorrelationTable &target, const FitConfig &cfg) {
    cfg.validate();
    const auto &al = target.outcome_alphabets();
    if (target.parties() != 3 || target.has_inputs() || al[0] != al[1] || al[1] != al[2]) {
        throw UsageError("fit_3local: expected a three-party input-free table with a common alphabet");
    }

    std::vector<std::optional<RestartOutcome>> outcomes(static_cast<std::size_t>(cfg.restarts));
    std::atomic<int> next{0};
    std::atomic<int> cutoff{cfg.restarts};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= cfg.restarts || r > cutoff.load()) {
                return;
            }
            RestartOutcome res = run_restart(target, cfg, r);
            if (res.trace.distance <= cfg.tolerance) {
                int cur = cutoff.load();
                while (r < cur && !cutoff.compare_exchange_weak(cur, r)) {
                }
            }
            outcomes[static_cast<std::size_t>(r)] = std::move(res);
        }
    };
    int threads = cfg.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : cfg.threads;
    threads = std::min(threads, cfg.restarts);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    // Only restarts up to the first one within tolerance count, so the
    // result does not depend on scheduling.
    const int last = std::min(cutoff.load(), cfg.restarts - 1);
    FitResult result;
    for (int r = 0; r <= last; ++r) {
        const RestartOutcome &o = *outcomes[static_cast<std::size_t>(r)];
        result.trace.push_back(o.trace);
        if (r == 0 || o.trace.distance < result.distance) {
            result.distance = o.trace.distance;
            result.best_restart = r;
            result.converged = o.trace.converged;
            result.model = o.model;
        }
    }
    return result;
}

}  // namespace qnet
