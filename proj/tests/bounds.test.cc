// Copyright 2026 The clinr Authors
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


#include "clinr/bounds.h"

#include <cmath>

#include "gtest/gtest.h"

#include "clinr/error.h"
#include "clinr/noise.h"
#include "clinr/program.h"
#include "clinr/stabilizer.h"

using namespace clinr;

namespace {

// Second evaluation of the single-level error bound, written independently
// in log space.
double oracle_clinr1_error(double p, double n, double r, double q) {
    double a_p = 3, a_v = 1.5, b_v = 3, a_i = 5;
    double lg = std::log1p(-p);
    double m = a_p * n + r * (a_v * n + b_v);
    double rsp = -std::expm1(a_p * n * lg + std::log1p(-q)) / std::pow(2.0, r);
    double chk = -2 * std::expm1((a_v * n + b_v) * lg);
    return (rsp + chk) * std::exp(-m * lg - std::log1p(-q)) - std::expm1(a_i * n * lg);
}

double oracle_clinr1_gates(double p, double n, double r, double s_hat, double q) {
    double a_p = 3, a_v = 1.5, b_v = 3, a_i = 5;
    double m = a_p * n + r * (a_v * n + b_v);
    return ((m + s_hat) * std::exp(-m * std::log1p(-p)) / (1 - q) + a_i * n) / s_hat;
}

}  // namespace

TEST(bounds, g_values) {
    ASSERT_EQ(g(0.3, 0), 0);
    ASSERT_DOUBLE_EQ(g(0.3, 1), 0.3);
    ASSERT_NEAR(g(1e-3, 1000), 0.6323, 1e-4);
}

TEST(bounds, clinr1_error_trivial_cases) {
    BoundInputs in;
    in.n = 10;
    in.r = 3;
    ASSERT_EQ(clinr1_error_bound(in).value, 0);
    in.p_log_c = 0.2;
    ASSERT_DOUBLE_EQ(clinr1_error_bound(in).value, 0.2 / 8 / 0.8);
    in.p_log_c = 1;
    ASSERT_TRUE(clinr1_error_bound(in).vacuous);
    ASSERT_EQ(clinr1_error_bound(in).value, 1);
    in.p_log_c = 0;
    in.p = 0.1;
    ASSERT_TRUE(clinr1_error_bound(in).vacuous);
    in.p = -1;
    ASSERT_THROW(clinr1_error_bound(in), ClinrError);
}

TEST(bounds, clinr1_matches_oracle) {
    BoundInputs in;
    in.p = 1e-5;
    in.n = 70;
    in.r = 9;
    in.p_log_c = 0.5;
    in.s_hat = 4900;
    double want = oracle_clinr1_error(1e-5, 70, 9, 0.5);
    ASSERT_NEAR(clinr1_error_bound(in).value / want, 1, 1e-12);
    ASSERT_FALSE(clinr1_error_bound(in).vacuous);
    double want_gates = oracle_clinr1_gates(1e-5, 70, 9, 4900, 0.5);
    ASSERT_NEAR(clinr1_gate_bound(in).value / want_gates, 1, 1e-12);
    ASSERT_DOUBLE_EQ(in.m(), 210 + 9 * 108);
}

TEST(bounds, clinr1_gate_trivial_cases) {
    BoundInputs in;
    in.n = 4;
    in.r = 2;
    in.s_hat = 50;
    double m = 12 + 2 * 9;
    ASSERT_DOUBLE_EQ(clinr1_gate_bound(in).value, 1 + m / 50 + 20.0 / 50);
    in.p = 1e-3;
    double prev = 1e300;
    for (double s_hat : {10.0, 100.0, 1000.0, 10000.0}) {
        in.s_hat = s_hat;
        double v = clinr1_gate_bound(in).value;
        ASSERT_LT(v, prev);
        prev = v;
    }
}

TEST(bounds, recursive_reduces_to_clinr1) {
    for (double p : {0.0, 1e-4, 1e-3}) {
        for (uint32_t r : {0u, 2u, 7u}) {
            CliNRTree tree(300);
            tree.add_child(0, 300, r);
            BoundInputs in;
            in.p = p;
            in.n = 6;
            in.r = r;
            in.s_hat = 300;
            in.p_log_c = g(p, 300);
            auto rb = recursive_bounds(tree, p, 6);
            ASSERT_EQ(rb.error.value, clinr1_error_bound(in).value);
            ASSERT_EQ(rb.gate.value, clinr1_gate_bound(in).value);
        }
    }
}

TEST(bounds, recursive_trivial_cases) {
    auto tree = uniform_tree(400, 4, 3, 2);
    ASSERT_EQ(recursive_error_bound(tree, 0, 5).value, 0);
    auto direct = recursive_bounds(CliNRTree(400), 1e-3, 5);
    ASSERT_DOUBLE_EQ(direct.error.value, g(1e-3, 400));
    ASSERT_EQ(direct.gate.value, 1);
    CliNRTree one(200);
    one.add_child(0, 200, 3);
    double m = 3 * 5 + 3 * (1.5 * 5 + 3);
    ASSERT_DOUBLE_EQ(recursive_gate_bound(one, 0, 5).value, (m + 200 + 25) / 200);
}

TEST(bounds, recursive_depth2_matches_oracle) {
    // Four children of 300, each split into three of 100, r = 2 everywhere.
    auto tree = uniform_tree(1200, 4, 3, 2);
    double p = 1e-4, n = 5;
    double leaf = -std::expm1(100 * std::log1p(-p));
    double pb1 = 3 * oracle_clinr1_error(p, n, 2, leaf);
    double want = 4 * oracle_clinr1_error(p, n, 2, pb1);
    ASSERT_NEAR(recursive_error_bound(tree, p, 5).value / want, 1, 1e-12);

    double s1 = 3 * oracle_clinr1_gates(p, n, 2, 100, leaf) * 100;
    double want_gates = 4 * oracle_clinr1_gates(p, n, 2, s1, pb1) * s1 / 1200;
    ASSERT_NEAR(recursive_gate_bound(tree, p, 5).value / want_gates, 1, 1e-12);

    auto rb = recursive_bounds(tree, p, 5);
    ASSERT_EQ(rb.levels.size(), 2);
    ASSERT_EQ(rb.levels[0].t_max, 4);
    ASSERT_EQ(rb.levels[1].t_max, 3);
    ASSERT_NEAR(rb.levels[1].p_block / leaf, 1, 1e-12);
}

TEST(bounds, recursive_uses_level_extremes) {
    CliNRTree tree(600);
    size_t a = tree.add_child(0, 200, 1);
    size_t b = tree.add_child(0, 400, 4);
    tree.add_child(a, 200, 2);
    tree.add_child(b, 150, 3);
    tree.add_child(b, 250, 3);
    auto rb = recursive_bounds(tree, 1e-4, 3);
    ASSERT_EQ(rb.levels[0].r_min, 1);
    ASSERT_EQ(rb.levels[0].r_max, 4);
    ASSERT_EQ(rb.levels[1].t_max, 2);
    ASSERT_DOUBLE_EQ(rb.levels[1].p_block, g(1e-4, 250));
    ASSERT_DOUBLE_EQ(rb.levels[1].s_hat, 250);
}

TEST(bounds, monotone_in_p) {
    auto tree = uniform_tree(2000, 3, 2, 3);
    double prev_e = 0, prev_g = 0;
    for (double p = 1e-6; p < 2e-3; p *= 1.7) {
        auto rb = recursive_bounds(tree, p, 8);
        if (rb.error.vacuous) {
            break;
        }
        ASSERT_GE(rb.error.value, prev_e);
        ASSERT_GE(rb.gate.value, prev_g);
        prev_e = rb.error.value;
        prev_g = rb.gate.value;
    }
}

TEST(bounds, dominate_monte_carlo) {
    const size_t n = 4;
    auto c = random_clifford(n, 120, 3);
    auto noise = NoiseModel::standard(5e-3, false);
    for (const char *preset : {"clinr1:2", "binary2"}) {
        auto tree = preset_tree(preset, 120);
        auto program = compile(c, tree);
        EstimateOptions opts;
        opts.shots = 3000;
        opts.seed = 5;
        auto est = estimate(program, noise, opts);
        auto rb = recursive_bounds(tree, 5e-3, n);
        ASSERT_GE(rb.error.value, est.p_log - 3 * est.p_log_stderr) << preset;
        ASSERT_GE(rb.gate.value, est.omega_time - 3 * est.omega_time_stderr) << preset;
    }
}

TEST(bounds, bounded_error_bound_values) {
    auto b = bounded_error_bound(100000, 1e-5, 10, 1);
    ASSERT_NEAR(b.value, 3.72e-3, 1e-15);
    ASSERT_TRUE(b.precondition_ok);
    double step = 1e-5 * alpha(10);
    for (uint32_t d = 1; d < 5; d++) {
        double ratio = bounded_error_bound(100000, 1e-5, 10, d + 1).value / bounded_error_bound(100000, 1e-5, 10, d).value;
        ASSERT_NEAR(ratio / step, 1, 1e-12);
    }
    ASSERT_FALSE(bounded_error_bound(4900, 1e-3, 70, 4).precondition_ok);
    ASSERT_DOUBLE_EQ(alpha(10), 372);
    ASSERT_DOUBLE_EQ(alpha(10, {}, false), (9 * 12 + 15) / 2.0);
}

TEST(bounds, bounded_gate_bound_values) {
    ASSERT_EQ(bounded_gate_bound(1), 24);
    ASSERT_EQ(bounded_gate_bound(2), 288);
    ASSERT_EQ(bounded_gate_bound(4), 41472);
}

TEST(bounds, theorem_parameters_values) {
    auto t = theorem_parameters(4900, 1e-3, 70);
    ASSERT_EQ(t.depth, 4);
    ASSERT_EQ(t.qubit_cap, 631);
    ASSERT_EQ(t.omega_cap, 13848);
    ASSERT_EQ(theorem_parameters(100, 1e-3, 5).depth, 1);
    ASSERT_EQ(theorem_parameters(1000, 1e-3, 5).depth, 1);
    ASSERT_EQ(theorem_parameters(2000, 1e-3, 5).omega_cap, 384);
    ASSERT_EQ(theorem_parameters(2000, 1e-3, 5).depth, 2);
    ASSERT_THROW(theorem_parameters(10, 0, 5), ClinrError);
}
