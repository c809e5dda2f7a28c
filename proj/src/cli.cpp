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

#include "qnet/cli.hpp"

#include "qnet/errors.hpp"
#include "qnet/fit.hpp"
#include "qnet/inequalities.hpp"
#include "qnet/json_io.hpp"
#include "qnet/local_models.hpp"
#include "qnet/measurements.hpp"
#include "qnet/network.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace qnet {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kExactTolerance = 1e-12;
constexpr double kChainTolerance = 1e-9;

struct Check {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class Report {
  public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    ojson inputs = ojson::object();
    ojson results = ojson::object();

    void check(std::string name, double expected, double actual, double tolerance) {
        const bool pass = std::abs(expected - actual) <= tolerance;
        checks_.push_back({std::move(name), expected, actual, tolerance, pass});
    }

    bool all_passed() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check &c) { return c.pass; });
    }

    const std::vector<Check> &checks() const { return checks_; }

    ojson to_json() const {
        ojson j;
        j["command"] = command_;
        j["inputs"] = inputs;
        j["results"] = results;
        ojson cs = ojson::array();
        for (const auto &c : checks_) {
            ojson e;
            e["name"] = c.name;
            e["expected"] = c.expected;
            e["actual"] = c.actual;
            e["tolerance"] = c.tolerance;
            e["pass"] = c.pass;
            cs.push_back(e);
        }
        j["checks"] = cs;
        j["all_passed"] = all_passed();
        return j;
    }

  private:
    std::string command_;
    std::vector<Check> checks_;
};

struct GlobalOptions {
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    std::string convention = "invariant_first";
};

ojson vec3(const BlochVector &v) {
    return ojson::array({v.x, v.y, v.z});
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string checks_csv(const Report &r) {
    std::ostringstream os;
    os << "name,expected,actual,tolerance,pass\n";
    for (const auto &c : r.checks()) {
        os << c.name << ',' << fmt17(c.expected) << ',' << fmt17(c.actual) << ',' << fmt17(c.tolerance) << ','
           << (c.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

int emit(const GlobalOptions &g, const Report &r, const std::optional<CorrelationTable> &table, std::ostream &out) {
    std::string text;
    if (g.format == "csv") {
        text = table ? table_to_csv(*table) : checks_csv(r);
    } else {
        text = dump_json(r.to_json());
    }
    if (g.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(g.out_path, std::ios::binary);
        if (!f) {
            throw ConfigurationError("cannot write " + g.out_path);
        }
        f << text;
    }
    return r.all_passed() ? kExitOk : kExitCheckFailed;
}

JointBasis basis_by_name(const std::string &name, Convention conv) {
    if (name == "ejm") {
        return ejm_basis(conv);
    }
    return bell_basis();
}

ojson stats_json(const TriangleStats &s) {
    ojson j;
    j["marginal_a"] = s.marginal_a;
    j["marginal_b"] = s.marginal_b;
    j["marginal_c"] = s.marginal_c;
    j["p_a_eq_b"] = s.p_a_eq_b;
    j["p_b_eq_c"] = s.p_b_eq_c;
    j["p_a_eq_c"] = s.p_a_eq_c;
    j["p_ab_equal_k"] = s.p_ab_equal_k;
    j["p_a_given_b_k"] = s.p_a_given_b_k;
    j["p_a_given_bc_k"] = s.p_a_given_bc_k;
    j["p_abc_equal_k"] = s.p_abc_equal_k;
    j["p_abc"] = s.p_abc;
    j["p_abc_given_ab"] = s.p_abc_given_ab;
    return j;
}

// Value among `values` farthest from `expected`.
double worst(const std::vector<double> &values, double expected) {
    double w = expected;
    for (double v : values) {
        if (std::abs(v - expected) > std::abs(w - expected)) {
            w = v;
        }
    }
    return w;
}

// ---------------------------------------------------------------- validate-ejm

int cmd_validate_ejm(const GlobalOptions &g, std::ostream &out) {
    const Convention conv = parse_convention(g.convention);
    Report r("validate-ejm");
    r.inputs["convention"] = std::string(to_string(conv));

    const JointBasis basis = ejm_basis(conv);
    const BasisReport rep = validate_basis(basis);
    const auto pairs = ejm_partial_blochs(basis);
    const auto assignment = ejm_vertex_assignment(basis);
    const Tetrahedron tet = tetrahedron();
    const auto [c1, c2] = ejm_schmidt_pair();
    const double implied_norm = c1 * c1 - c2 * c2;

    double expansion_dev = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const Matrix diff = projector(basis.kets[j]).matrix() - ejm_projector_expansion(tet.vertices[j]).matrix();
        expansion_dev = std::max(expansion_dev, diff.cwiseAbs().maxCoeff());
    }

    r.results["max_orthonormality_deviation"] = rep.max_orthonormality_deviation;
    r.results["completeness_deviation"] = rep.completeness_deviation;
    ojson schmidt = ojson::array();
    for (const auto &[a, b] : rep.schmidt) {
        schmidt.push_back(ojson::array({a, b}));
    }
    r.results["schmidt_coefficients"] = schmidt;
    r.results["schmidt_closed_form"] = ojson::array({c1, c2});
    r.results["partial_norm_from_schmidt"] = implied_norm;
    ojson partial = ojson::array();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        ojson e;
        e["outcome"] = j + 1;
        e["first"] = vec3(pairs[j].first);
        e["second"] = vec3(pairs[j].second);
        e["first_norm"] = pairs[j].first.norm();
        e["second_norm"] = pairs[j].second.norm();
        e["vertex"] = assignment[j] + 1;
        partial.push_back(e);
    }
    r.results["partial_blochs"] = partial;
    r.results["projector_expansion_deviation"] = expansion_dev;
    r.results["validate_basis_failures"] = rep.failures;

    r.check("orthonormality", 0.0, rep.max_orthonormality_deviation, kRoundTripTolerance);
    r.check("completeness", 0.0, rep.completeness_deviation, kExactTolerance);
    for (std::size_t j = 0; j < 4; ++j) {
        const std::string s = std::to_string(j + 1);
        r.check("schmidt_c1_outcome_" + s, c1, rep.schmidt[j].first, kExactTolerance);
        r.check("schmidt_c2_outcome_" + s, c2, rep.schmidt[j].second, kExactTolerance);
        r.check("partial_norm_first_outcome_" + s, implied_norm, pairs[j].first.norm(), kRoundTripTolerance);
        r.check("partial_norm_second_outcome_" + s, implied_norm, pairs[j].second.norm(), kRoundTripTolerance);
        r.check("partial_sum_zero_outcome_" + s, 0.0, (pairs[j].first + pairs[j].second).norm(), kRoundTripTolerance);
    }
    std::vector<int> sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    r.check("tetrahedron_cover", 1.0, sorted == std::vector<int>{0, 1, 2, 3} ? 1.0 : 0.0, 0.0);
    if (conv == Convention::invariant_first) {
        r.check("vertex_order_identity", 1.0, assignment == std::vector<int>{0, 1, 2, 3} ? 1.0 : 0.0, 0.0);
        r.check("projector_expansion", 0.0, expansion_dev, kRoundTripTolerance);
    }
    r.check("validate_basis", 1.0, rep.passed ? 1.0 : 0.0, 0.0);
    return emit(g, r, std::nullopt, out);
}

// -------------------------------------------------------------------- triangle

struct TriangleArgs {
    std::string measurement = "ejm";
    std::vector<double> visibility{1.0, 1.0, 1.0};
    std::string scenario;
};

int cmd_triangle(const GlobalOptions &g, const TriangleArgs &a, std::ostream &out) {
    const Convention conv = parse_convention(g.convention);
    Report r("triangle");
    NetworkScenario sc;
    if (!a.scenario.empty()) {
        sc = load_scenario(a.scenario);
        if (sc.topology != Topology::triangle) {
            throw UsageError("triangle: scenario file does not describe a triangle");
        }
        r.inputs["scenario"] = a.scenario;
    } else {
        if (a.visibility.size() != 3) {
            throw UsageError("triangle: --visibility needs three values");
        }
        sc = make_triangle_scenario(basis_by_name(a.measurement, conv),
                                    {a.visibility[0], a.visibility[1], a.visibility[2]});
    }
    const std::string mname(to_string(sc.measurement.label));
    r.inputs["measurement"] = mname;
    r.inputs["visibilities"] = sc.visibilities;
    if (sc.measurement.convention) {
        r.inputs["convention"] = std::string(to_string(*sc.measurement.convention));
    }

    const CorrelationTable t = evaluate(sc);
    const TriangleStats s = triangle_stats(t);
    r.results["table"] = table_to_json(t);
    r.results["stats"] = stats_json(s);

    const bool noiseless = std::all_of(sc.visibilities.begin(), sc.visibilities.end(), [](double w) { return w == 1.0; });
    const bool depolarised =
        std::all_of(sc.visibilities.begin(), sc.visibilities.end(), [](double w) { return w == 0.0; });
    if (sc.measurement.label == BasisLabel::ejm && noiseless) {
        std::vector<double> same, two_equal, distinct;
        for (int x = 0; x < 4; ++x) {
            for (int y = 0; y < 4; ++y) {
                for (int z = 0; z < 4; ++z) {
                    const double p = t(x, y, z);
                    if (x == y && y == z) {
                        same.push_back(p);
                    } else if (x != y && y != z && x != z) {
                        distinct.push_back(p);
                    } else {
                        two_equal.push_back(p);
                    }
                }
            }
        }
        r.results["cell_counts"] = {{"all_equal", same.size()}, {"two_equal", two_equal.size()},
                                    {"all_distinct", distinct.size()}};
        r.check("p_all_equal_cell", 25.0 / 256, worst(same, 25.0 / 256), kExactTolerance);
        r.check("p_two_equal_cell", 1.0 / 256, worst(two_equal, 1.0 / 256), kExactTolerance);
        r.check("p_all_distinct_cell", 5.0 / 256, worst(distinct, 5.0 / 256), kExactTolerance);
        r.check("p_a_k_b_k", 7.0 / 64, worst(s.p_ab_equal_k, 7.0 / 64), kExactTolerance);
        r.check("p_a_eq_b", 7.0 / 16, s.p_a_eq_b, kExactTolerance);
        r.check("p_a_k_given_b_c_k", 25.0 / 28, worst(s.p_a_given_bc_k, 25.0 / 28), kExactTolerance);
        r.check("p_a_eq_b_eq_c", 25.0 / 64, s.p_abc, kExactTolerance);
    } else if (depolarised) {
        r.check("uniform_cell", 1.0 / 64, worst(t.probabilities(), 1.0 / 64), kExactTolerance);
    }
    return emit(g, r, t, out);
}

// ----------------------------------------------------------------------- chain

struct ChainArgs {
    int n = 2;
    std::vector<double> w;
    std::string inequality = "auto";
    std::string scenario;
};

int cmd_chain(const GlobalOptions &g, const ChainArgs &a, std::ostream &out) {
    Report r("chain");
    std::string inequality = a.inequality;
    NetworkScenario sc;
    const bool from_file = !a.scenario.empty();
    if (from_file) {
        sc = load_scenario(a.scenario);
        if (sc.topology != Topology::chain) {
            throw UsageError("chain: scenario file does not describe a chain");
        }
        r.inputs["scenario"] = a.scenario;
    } else {
        std::vector<double> w = a.w.empty() ? std::vector<double>(static_cast<std::size_t>(std::max(a.n, 0)), 1.0)
                                            : a.w;
        if (w.size() != static_cast<std::size_t>(a.n)) {
            throw UsageError("chain: --w needs one visibility per source");
        }
        if (inequality == "auto") {
            inequality = a.n == 2 ? "bilocal" : "none";
        }
        EndSettings settings = inequality == "chsh" ? chsh_optimal_settings() : bilocal_optimal_settings();
        sc = make_chain_scenario(a.n, w, std::move(settings), bell_basis());
    }
    if (inequality == "auto") {
        inequality = sc.n_sources() == 2 ? "bilocal" : "none";
    }
    const int n = static_cast<int>(sc.n_sources());
    if (inequality != "none" && n != 2) {
        throw UsageError("chain: inequalities are evaluated for two sources only");
    }
    r.inputs["n"] = n;
    r.inputs["visibilities"] = sc.visibilities;
    r.inputs["inequality"] = inequality;
    r.inputs["measurement"] = std::string(to_string(sc.measurement.label));
    r.inputs["end_settings"] = describe(sc.end_settings);

    const CorrelationTable t = evaluate(sc);
    if (n <= 3) {
        r.results["table"] = table_to_json(t);
    } else {
        r.results["table_cells"] = t.probabilities().size();
    }

    if (n == 2) {
        const double w1 = sc.visibilities[0];
        const double w2 = sc.visibilities[1];
        const ThresholdReport th =
            threshold_report(inequality == "chsh" ? SwapScenario::chsh_swap : SwapScenario::bilocal, w1, w2);
        r.results["thresholds"] = {{"product", th.product},
                                   {"chsh_product_threshold", th.chsh_product_threshold},
                                   {"bilocal_product_threshold", th.bilocal_product_threshold},
                                   {"chsh_symmetric_threshold", th.chsh_symmetric_threshold},
                                   {"bilocal_symmetric_threshold", th.bilocal_symmetric_threshold},
                                   {"chsh_violated", th.chsh_violated},
                                   {"bilocal_violated", th.bilocal_violated}};
        if (inequality == "bilocal") {
            const auto bits = bit_decomposition(sc.measurement);
            const InequalityResult res = bilocality_value(t, bits, describe(sc.end_settings));
            r.results["inequality"] = {{"name", std::string(to_string(res.name))},
                                       {"value", res.value},
                                       {"bound", res.bound},
                                       {"violated", res.violated},
                                       {"settings_used", res.settings_used}};
            if (!from_file) {
                r.check("bilocality_value", std::sqrt(2.0 * w1 * w2), res.value, kChainTolerance);
            }
        } else if (inequality == "chsh") {
            if (sc.measurement.label != BasisLabel::bsm) {
                throw UsageError("chain: conditional CHSH needs the Bell-state measurement");
            }
            ojson per_outcome = ojson::array();
            double lowest = std::numeric_limits<double>::infinity();
            bool all_violated = true;
            for (int b = 0; b < 4; ++b) {
                const CorrelationTable cond = condition_on(t, 1, b);
                const SignTable signs = correction_signs(sc.measurement.kets[static_cast<std::size_t>(b)], sc.end_settings);
                const InequalityResult res = chsh_value(cond, signs, describe(sc.end_settings));
                per_outcome.push_back({{"middle_outcome", b + 1},
                                       {"pauli_correction", pauli_relating_to_singlet(sc.measurement.kets[static_cast<std::size_t>(b)])},
                                       {"value", res.value},
                                       {"violated", res.violated}});
                lowest = std::min(lowest, res.value);
                all_violated = all_violated && res.violated;
                if (!from_file) {
                    r.check("conditional_chsh_outcome_" + std::to_string(b + 1), 2.0 * std::numbers::sqrt2 * w1 * w2,
                            res.value, kChainTolerance);
                }
            }
            r.results["inequality"] = {{"name", "CHSH"},
                                       {"value", lowest},
                                       {"bound", 2.0},
                                       {"violated", all_violated},
                                       {"settings_used", describe(sc.end_settings)},
                                       {"per_outcome", per_outcome}};
        }
    }
    return emit(g, r, t, out);
}

// ---------------------------------------------------------------------- models

constexpr std::array<double, 8> kTableAB{7.0 / 16, 1.0, 0.25, 5.0 / 8, 0.25, 5.0 / 8, 0.25, 7.0 / 16};
constexpr std::array<double, 8> kTableABC{13.0 / 64, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 13.0 / 64};

int cmd_q_model(const GlobalOptions &g, std::optional<double> q, std::ostream &out) {
    Report r("models q-model");
    std::vector<double> grid;
    if (q) {
        grid.push_back(*q);
        r.inputs["q"] = *q;
    } else {
        for (int i = 0; i <= 10; ++i) {
            grid.push_back(i / 10.0);
        }
        r.inputs["q"] = "grid";
    }
    ojson sweep = ojson::array();
    for (double v : grid) {
        const double closed = q_model_abc_rate(v);
        const double enumerated = triangle_stats(evaluate_model(symmetric_q_model(v))).p_abc;
        sweep.push_back({{"q", v}, {"closed_form", closed}, {"enumerated", enumerated}});
        r.check("closed_form_vs_enumeration_q_" + short_number(v), closed, enumerated, kExactTolerance);
        if (v == 0.5) {
            r.check("maximum_61_256", 61.0 / 256, enumerated, kExactTolerance);
        }
    }
    r.results["sweep"] = sweep;
    if (!q) {
        // The rate is quadratic in q, so the vertex of the parabola through
        // three enumerated points is its exact maximiser.
        const std::array<double, 3> xs{0.1, 0.4, 0.9};
        std::array<double, 3> ys{};
        for (std::size_t i = 0; i < 3; ++i) {
            ys[i] = triangle_stats(evaluate_model(symmetric_q_model(xs[i]))).p_abc;
        }
        const double num = (xs[1] - xs[0]) * (xs[1] - xs[0]) * (ys[1] - ys[2]) -
                           (xs[1] - xs[2]) * (xs[1] - xs[2]) * (ys[1] - ys[0]);
        const double den = (xs[1] - xs[0]) * (ys[1] - ys[2]) - (xs[1] - xs[2]) * (ys[1] - ys[0]);
        const double argmax = xs[1] - 0.5 * num / den;
        r.results["argmax_q"] = argmax;
        r.results["max_rate"] = q_model_abc_rate(argmax);
        r.check("argmax_q", 0.5, argmax, 1e-9);
        r.check("max_rate", 61.0 / 256, q_model_abc_rate(argmax), 1e-9);

        ojson rows = ojson::array();
        for (int row = 0; row < 8; ++row) {
            const double qa = (row >> 2) & 1;
            const double qb = (row >> 1) & 1;
            const double qc = row & 1;
            const TriangleStats s = triangle_stats(evaluate_model(symmetric_q_model(qa, qb, qc)));
            const std::string bits = std::to_string(row >> 2 & 1) + std::to_string(row >> 1 & 1) + std::to_string(row & 1);
            rows.push_back({{"alpha2_beta2_gamma2", bits}, {"p_a_eq_b", s.p_a_eq_b}, {"p_a_eq_b_eq_c", s.p_abc}});
            r.check("row_" + bits + "_p_a_eq_b", kTableAB[static_cast<std::size_t>(row)], s.p_a_eq_b, kExactTolerance);
            r.check("row_" + bits + "_p_a_eq_b_eq_c", kTableABC[static_cast<std::size_t>(row)], s.p_abc, kExactTolerance);
        }
        r.results["rows"] = rows;
    }
    return emit(g, r, std::nullopt, out);
}

int cmd_asymmetric(const GlobalOptions &g, std::ostream &out) {
    Report r("models asymmetric");
    const LocalModel m = asymmetric_model();
    const CorrelationTable t = evaluate_model(m);
    const TriangleStats s = triangle_stats(t);
    int zeros = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                if (a != b && b != c && a != c && t(a, b, c) == 0.0) {
                    ++zeros;
                }
            }
        }
    }
    r.results["model"] = model_to_json(m);
    r.results["table"] = table_to_json(t);
    r.results["stats"] = stats_json(s);
    r.results["zero_all_distinct_cells"] = zeros;
    r.check("p_a_eq_b_eq_c", 0.5, s.p_abc, kExactTolerance);
    r.check("p_a_eq_b", 0.5, s.p_a_eq_b, kExactTolerance);
    r.check("p_a_eq_b_eq_c_given_a_eq_b", 1.0, s.p_abc_given_ab, kExactTolerance);
    r.check("zero_all_distinct_cells", 20.0, zeros, 0.0);
    return emit(g, r, t, out);
}

struct FitArgs {
    std::string target;
    std::string target_file;
    int restarts = 64;
    int max_cardinality = 8;
    int max_iterations = 5000;
    double tolerance = 1e-10;
    std::string distance = "tv";
    int threads = 1;
    std::string model_out;
};

int cmd_fit(const GlobalOptions &g, const FitArgs &a, std::ostream &out) {
    Report r("models fit");
    const Convention conv = parse_convention(g.convention);
    std::optional<CorrelationTable> target;
    std::optional<double> positive_control;
    if (!a.target_file.empty() && !a.target.empty()) {
        throw UsageError("fit: give either --target or --target-file");
    }
    if (!a.target_file.empty()) {
        target = load_table(a.target_file);
        r.inputs["target_file"] = a.target_file;
    } else if (a.target == "bsm-triangle") {
        target = bsm_triangle_reference();
        positive_control = 1e-2;
    } else if (a.target == "ejm-triangle") {
        target = triangle_correlation(ejm_basis(conv), {1.0, 1.0, 1.0});
    } else if (a.target == "asymmetric-model") {
        target = evaluate_model(asymmetric_model());
        positive_control = 1e-9;
    } else if (a.target == "ejm-grouped") {
        const std::array<int, 4> groups{0, 0, 1, 1};
        target = group_outcomes(triangle_correlation(ejm_basis(conv), {1.0, 1.0, 1.0}), groups);
        positive_control = 1e-3;
    } else {
        throw UsageError("fit: --target or --target-file is required");
    }
    if (!a.target.empty()) {
        r.inputs["target"] = a.target;
    }
    FitConfig cfg;
    cfg.restarts = a.restarts;
    cfg.max_cardinality = a.max_cardinality;
    cfg.max_iterations = a.max_iterations;
    cfg.tolerance = a.tolerance;
    cfg.seed = g.seed;
    cfg.distance = parse_distance(a.distance);
    cfg.threads = a.threads;
    r.inputs["seed"] = g.seed;
    r.inputs["restarts"] = cfg.restarts;
    r.inputs["max_cardinality"] = cfg.max_cardinality;
    r.inputs["max_iterations"] = cfg.max_iterations;
    r.inputs["tolerance"] = cfg.tolerance;
    r.inputs["distance"] = std::string(to_string(cfg.distance));

    const FitResult res = fit_3local(*target, cfg);
    r.results["distance"] = res.distance;
    r.results["converged"] = res.converged;
    r.results["best_restart"] = res.best_restart;
    r.results["best_cardinality"] = res.model.alphabets[0];
    r.results["verdict"] = nullptr;
    ojson trace = ojson::array();
    for (const auto &tr : res.trace) {
        trace.push_back({{"restart", tr.restart},
                         {"cardinality", tr.cardinality},
                         {"distance", tr.distance},
                         {"iterations", tr.iterations},
                         {"converged", tr.converged}});
    }
    r.results["trace"] = trace;
    r.results["model"] = model_to_json(res.model);
    if (!a.model_out.empty()) {
        std::ofstream f(a.model_out, std::ios::binary);
        if (!f) {
            throw ConfigurationError("cannot write " + a.model_out);
        }
        f << dump_json(model_to_json(res.model));
        r.inputs["model_out"] = a.model_out;
    }
    if (positive_control) {
        r.check("fit_distance", 0.0, res.distance, *positive_control);
    }
    return emit(g, r, std::nullopt, out);
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact quantum network correlations and 3-local model search", "qnet"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out_path, "Write the output to this file instead of stdout");
    app.add_option("--seed", g.seed, "Random seed for the fitter");
    app.add_option("--convention", g.convention, "EJM ket convention: invariant_first or paper_literal");

    auto *validate = app.add_subcommand("validate-ejm", "Check the EJM basis");

    TriangleArgs ta;
    auto *triangle = app.add_subcommand("triangle", "Triangle network with three Werner sources");
    triangle->add_option("--measurement", ta.measurement, "ejm or bsm")->check(CLI::IsMember({"ejm", "bsm"}));
    triangle->add_option("--visibility", ta.visibility, "Three visibilities, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    triangle->add_option("--scenario", ta.scenario, "Scenario JSON file");

    ChainArgs ca;
    auto *chain = app.add_subcommand("chain", "Chain of Werner sources with Bell-state measurements in the middle");
    chain->add_option("--n", ca.n, "Number of sources")->check(CLI::Range(2, 10));
    chain->add_option("--w", ca.w, "Visibilities, comma separated")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    chain->add_option("--inequality", ca.inequality, "bilocal, chsh or none (default: bilocal for two sources)")
        ->check(CLI::IsMember({"auto", "bilocal", "chsh", "none"}));
    chain->add_option("--scenario", ca.scenario, "Scenario JSON file");

    auto *models = app.add_subcommand("models", "Classical 3-local models");
    models->require_subcommand(1);
    std::optional<double> q;
    auto *qmodel = models->add_subcommand("q-model", "Symmetric model with bit bias q");
    qmodel->add_option("--q", q, "Bit bias; omit to sweep 11 grid points")->check(CLI::Range(0.0, 1.0));
    auto *asym = models->add_subcommand("asymmetric", "Binary-source deterministic model");
    FitArgs fa;
    auto *fit = models->add_subcommand("fit", "Search for a 3-local model of a target table");
    fit->add_option("--target", fa.target, "Built-in target")
        ->check(CLI::IsMember({"bsm-triangle", "ejm-triangle", "asymmetric-model", "ejm-grouped"}));
    fit->add_option("--target-file", fa.target_file, "Target table JSON file");
    fit->add_option("--restarts", fa.restarts)->check(CLI::PositiveNumber);
    fit->add_option("--max-cardinality", fa.max_cardinality)->check(CLI::Range(2, 64));
    fit->add_option("--max-iterations", fa.max_iterations)->check(CLI::PositiveNumber);
    fit->add_option("--tolerance", fa.tolerance)->check(CLI::PositiveNumber);
    fit->add_option("--distance", fa.distance)->check(CLI::IsMember({"tv", "total_variation", "kl"}));
    fit->add_option("--threads", fa.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    fit->add_option("--model-out", fa.model_out, "Write the best model to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        parse_convention(g.convention);
        if (*validate) {
            return cmd_validate_ejm(g, out);
        }
        if (*triangle) {
            return cmd_triangle(g, ta, out);
        }
        if (*chain) {
            return cmd_chain(g, ca, out);
        }
        if (*qmodel) {
            return cmd_q_model(g, q, out);
        }
        if (*asym) {
            return cmd_asymmetric(g, out);
        }
        if (*fit) {
            return cmd_fit(g, fa, out);
        }
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace qnet
