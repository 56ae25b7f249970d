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


#include "clinr/markov.h"

#include <cmath>

#include "gtest/gtest.h"

#include "clinr/error.h"
#include "clinr/program.h"
#include "clinr/stabilizer.h"

using namespace clinr;

namespace {

MarkovVector vec(std::vector<double> e) {
    MarkovVector v;
    v.entries = std::move(e);
    return v;
}

void expect_entries(const MarkovVector &v, const std::vector<double> &want, double tol) {
    ASSERT_EQ(v.entries.size(), want.size());
    for (size_t j = 0; j < want.size(); j++) {
        EXPECT_NEAR(v.entries[j], want[j], tol) << j;
    }
}

}  // namespace

TEST(markov, rsp_vector_values) {
    expect_entries(rsp_vector(0, 2), {1, 0, 0, 0}, 0);
    expect_entries(rsp_vector(0.1, 1), {0.9, 0.1, 0}, 1e-15);
    ASSERT_THROW(rsp_vector(1.5, 1), ClinrError);
}

TEST(markov, step_check_values) {
    auto v = step_check(vec({0.9, 0.1, 0}), 0, 0.02, 0.01);
    expect_entries(v, {0.873, 0.059, 0.068}, 1e-12);
    auto same = step_check(vec({0.7, 0, 0.1, 0.2}), 1, 0, 0);
    expect_entries(same, {0.7, 0, 0.1, 0.2}, 0);
    ASSERT_THROW(step_check(v, 1, 0, 0), ClinrError);
    ASSERT_THROW(step_check(v, 0, 0.7, 0.7), ClinrError);
}

TEST(markov, steps_preserve_probability) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 200; t++) {
        uint32_t r = 1 + rng() % 6;
        auto v = rsp_vector(u(rng), r);
        for (uint32_t k = 0; k < r; k++) {
            double de = u(rng) / 2;
            v = step_check(v, k, de, u(rng) / 2);
            ASSERT_NEAR(v.sum(), 1, 1e-12);
        }
        v = step_injection(v, u(rng));
        ASSERT_NEAR(v.sum(), 1, 1e-12);
        double rate = logical_rate(v);
        ASSERT_GE(rate, 0);
        ASSERT_LE(rate, 1);
    }
}

TEST(markov, step_injection_values) {
    expect_entries(step_injection(vec({0.6, 0.3, 0.1}), 0), {0.6, 0.3, 0.1}, 0);
    expect_entries(step_injection(vec({1, 0, 0}), 0.05), {0.95, 0.05, 0}, 1e-15);
}

TEST(markov, logical_rate_values) {
    ASSERT_NEAR(logical_rate(vec({0.873, 0.059, 0.068})), 0.0633, 1e-4);
    ASSERT_EQ(logical_rate(vec({0.5, 0, 0.5})), 0);
    ASSERT_EQ(logical_rate(vec({0, 0.5, 0.5})), 1);
    ASSERT_THROW(logical_rate(vec({0, 0, 1})), ClinrError);
}

TEST(markov, expected_gates_values) {
    ASSERT_EQ(expected_gates(vec({0.9, 0.1, 0, 0}), 100, 10, 20), 140);
    ASSERT_EQ(expected_gates(vec({0.9, 0.1}), 100, 10, 20), 120);
    ASSERT_NEAR(expected_gates(vec({0.873, 0.059, 0.068}), 100, 10, 20), 130 + 100 * (1 / 0.932 - 1), 1e-9);
    ASSERT_NEAR(expected_gates(vec({0.873, 0.059, 0.068}), 100, 10, 20), 137.30, 5e-3);

    auto v = vec({0.5, 0.1, 0.1, 0.2, 0.1});
    double sum = 0;
    for (uint32_t k = 0; k < 3; k++) {
        sum += expected_restarts(v, k);
    }
    ASSERT_NEAR(sum, 1 / 0.6 - 1, 1e-12);
    double m1 = expected_restarts(v, 1), m2 = expected_restarts(v, 2);
    double corrected = expected_gates(v, 50, 7, 9);
    double literal = expected_gates(v, 50, 7, 9, true);
    ASSERT_NEAR(literal - corrected, (50 - 7) * (m1 + 2 * m2), 1e-9);
    ASSERT_GT(corrected, 50 + 3 * 7 + 9);
    ASSERT_THROW(expected_gates(vec({0, 0, 1}), 1, 1, 1), ClinrError);
}

TEST(markov, error_params_noiseless) {
    BlockContext ctx;
    ctx.s_prime = 300;
    ctx.r = 3;
    auto e = error_params(ctx, NoiseModel{}, 10);
    ASSERT_EQ(e.p_p, 0);
    ASSERT_EQ(e.p_de, 0);
    ASSERT_EQ(e.p_ue, 0);
    ASSERT_EQ(e.g_p, 330);
    ASSERT_EQ(e.g_c, 18);
    ASSERT_EQ(e.g_i, 50);
    ctx.leaf = false;
    ctx.p_log_children = 0.125;
    ASSERT_DOUBLE_EQ(error_params(ctx, NoiseModel{}, 10).p_p, 0.125);
}

TEST(markov, error_params_without_idle) {
    BlockContext ctx;
    ctx.s_prime = 400;
    auto noise = NoiseModel::standard(1e-3, false);
    double want = 1 - std::pow(1 - 1e-3, 200 + 8) * std::pow(1 - 1e-4, 200 + 16);
    ASSERT_NEAR(error_params(ctx, noise, 8).p_p, want, 1e-14);
}

TEST(markov, error_params_match_rederivation) {
    double p = 1e-3, n = 70, s = 613;
    uint32_t r = 5;
    auto noise = NoiseModel::standard(p, true);
    BlockContext ctx;
    ctx.s_prime = s;
    ctx.r = r;
    ctx.first_child = false;
    auto e = error_params(ctx, noise, 70);
    double p_p = 1 - std::pow(1 - p, s / 2 + n) * std::pow(1 - p / 10, s / 2 + 2 * n) * std::pow(1 - p / 1000, s * n / 3);
    double p_de = 1 - std::pow(1 - 8 * p / 15, 3 * n / 2) * std::pow(1 - 2 * p / 30, 2) * (1 - p / 10);
    double p_ue = 1 - std::pow(1 - 6 * p / 15, 3 * n / 2);
    ASSERT_NEAR(e.p_p / p_p, 1, 1e-12);
    ASSERT_NEAR(e.p_de / p_de, 1, 1e-12);
    ASSERT_NEAR(e.p_ue / p_ue, 1, 1e-12);

    auto printed = error_params(ctx, noise, 70, {}, CheckExponent::Printed);
    double p_de_printed = 1 - std::pow(1 - 8 * p / 15, 2 * n / 3) * std::pow(1 - 2 * p / 30, 2) * (1 - p / 10);
    double p_ue_printed = 1 - std::pow(1 - 6 * p / 15, 2 * n / 3);
    ASSERT_NEAR(printed.p_de / p_de_printed, 1, 1e-12);
    ASSERT_NEAR(printed.p_ue / p_ue_printed, 1, 1e-12);

    // Vector after the checks, built by hand.
    std::vector<double> P(r + 2, 0);
    P[0] = 1 - p_p;
    P[1] = p_p;
    for (uint32_t k = 0; k < r; k++) {
        double v0 = P[0], v1 = P[1];
        P[0] = v0 * (1 - p_de - p_ue);
        P[1] = v0 * p_ue + v1 / 2;
        P[k + 2] += v0 * p_de + v1 / 2;
    }
    double p_res = 0;
    for (uint32_t k = 0; k < r; k++) {
        p_res += P[k + 2];
    }
    double g_idle = s * n / 3 + r * (4.5 * n * n - 3 * n);
    for (uint32_t k = 0; k < r; k++) {
        g_idle += (s * n / 3 + k * (4.5 * n * n - 3 * n)) * P[k + 2] / p_res * (1 / (1 - p_res) - 1);
    }
    auto block = estimate_block(ctx, noise, 70, 0);
    ASSERT_NEAR(block.params.g_idle / g_idle, 1, 1e-12);
    double p_i = -std::expm1(n * std::log1p(-p) + 4 * n * std::log1p(-p / 10) + g_idle * std::log1p(-p / 1000));
    ASSERT_NEAR(block.params.p_i / p_i, 1, 1e-12);
    double p_log = (P[1] + P[0] * p_i) / (P[0] * (1 - p_i) + P[1] + P[0] * p_i);
    ASSERT_NEAR(block.p_log / p_log, 1, 1e-12);

    ctx.first_child = true;
    double p_i_first = 1 - std::pow(1 - p, n) * std::pow(1 - p / 10, 4 * n);
    ASSERT_NEAR(estimate_block(ctx, noise, 70, 0).params.p_i / p_i_first, 1, 1e-12);
}

TEST(markov, logical_rate_increases_with_p_ue) {
    double prev = -1;
    for (double ue : {0.0, 0.01, 0.02, 0.05}) {
        auto v = step_check(rsp_vector(0.1, 1), 0, 0.02, ue);
        double rate = logical_rate(v);
        ASSERT_GT(rate, prev);
        prev = rate;
    }
}

TEST(markov, tree_noiseless_matches_program_size) {
    Rng rng(2);
    for (int t = 0; t < 20; t++) {
        auto tree = random_tree(200, 3, 3, 4, rng);
        auto c = random_clifford(4, 200, t);
        auto program = compile(c, tree);
        auto est = estimate_tree(tree, 4, NoiseModel{});
        ASSERT_EQ(est.p_log, 0);
        ASSERT_NEAR(est.omega_time, program.nominal_gate_count() / 200.0, 1e-12);
        ASSERT_EQ(est.provenance, Provenance::Markov);
        ASSERT_DOUBLE_EQ(est.omega_space, program.total_qubits / 4.0);
    }
}

TEST(markov, tree_single_block_is_chained_steps) {
    CliNRTree tree(500);
    tree.add_child(0, 500, 2);
    auto noise = NoiseModel::standard(2e-3, true);
    BlockContext ctx;
    ctx.s_prime = 500;
    ctx.r = 2;
    auto e = error_params(ctx, noise, 6);
    auto v = rsp_vector(e.p_p, 2);
    v = step_check(v, 0, e.p_de, e.p_ue);
    v = step_check(v, 1, e.p_de, e.p_ue);
    double p_i = injection_rate(ctx, noise, 6, idle_gates(ctx, 6, v));
    double gates = expected_gates(v, e.g_p, e.g_c, e.g_i);
    v = step_injection(v, p_i);
    auto est = estimate_tree(tree, 6, noise);
    ASSERT_DOUBLE_EQ(est.p_log, logical_rate(v));
    ASSERT_DOUBLE_EQ(est.omega_time, gates / 500);
}

TEST(markov, siblings_accumulate) {
    auto noise = NoiseModel::standard(1e-3, true);
    double one = estimate_tree(uniform_tree(600, 1, 0, 3), 5, noise).p_log;
    double three = estimate_tree(uniform_tree(1800, 3, 0, 3), 5, noise).p_log;
    ASSERT_GT(three, 2.5 * one);
    ASSERT_LT(three, 3.5 * one);
}
