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


#include "clinr/noise.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"

#include "clinr/error.h"
#include "state_vector.h"
#include "test_util.h"

using namespace clinr;
using clinr_test::StateVector;

namespace {

/// Independent first-order oracle for a program made of one PLAIN block:
/// every fault is pushed to the end through the stabilizers of the state at
/// the time it occurs, and faults are assumed never to cancel.
double survival_product_oracle(const CliffordCircuit &c, const NoiseModel &noise) {
    size_t n = c.num_qubits();
    std::vector<PauliOperator> stabs;
    for (size_t q = 0; q < n; q++) {
        stabs.push_back(PauliOperator::single(n, q, 'Z'));
    }
    auto anticommutes_locally = [&](uint32_t a, uint8_t pa, uint32_t b, uint8_t pb) {
        for (const auto &s : stabs) {
            bool parity = ((pa & 1) && s.z(a)) ^ ((pa & 2) && s.x(a));
            if (pb) {
                parity ^= ((pb & 1) && s.z(b)) ^ ((pb & 2) && s.x(b));
            }
            if (parity) {
                return true;
            }
        }
        return false;
    };
    double log_survival = 0;
    size_t tick = 0;
    // Ticks since each qubit was last touched; idle faults are charged against
    // the state current at the touch (exact when idle rates are tiny).
    std::vector<size_t> last(n, 0);
    auto idle = [&](uint32_t q) {
        size_t k = tick - last[q] - 1;
        last[q] = tick;
        if (k == 0 || noise.p_idle == 0) {
            return;
        }
        int bad = 0;
        for (uint8_t e = 1; e < 4; e++) {
            bad += anticommutes_locally(q, e, q, 0);
        }
        log_survival += static_cast<double>(k) * std::log1p(-noise.p_idle * bad / 3.0);
    };
    for (const auto &g : c.gates()) {
        tick++;
        idle(g.q0);
        if (is_two_qubit(g.kind)) {
            idle(g.q1);
        }
        for (auto &s : stabs) {
            conjugate_by_gate(s, g);
        }
        int bad = 0;
        if (is_two_qubit(g.kind)) {
            for (uint8_t e = 1; e < 16; e++) {
                bad += anticommutes_locally(g.q0, e & 3, g.q1, e >> 2);
            }
            log_survival += std::log1p(-noise.p2 * bad / 15.0);
        } else {
            for (uint8_t e = 1; e < 4; e++) {
                bad += anticommutes_locally(g.q0, e, g.q0, 0);
            }
            log_survival += std::log1p(-noise.p1 * bad / 3.0);
        }
    }
    tick++;
    for (uint32_t q = 0; q < n; q++) {
        idle(q);
    }
    return 1 - std::exp(log_survival);
}

}  // namespace

TEST(NoiseModel, standard_ratios) {
    auto m = NoiseModel::standard(1e-3, true);
    ASSERT_DOUBLE_EQ(m.p2, 1e-3);
    ASSERT_DOUBLE_EQ(m.p1, 1e-4);
    ASSERT_DOUBLE_EQ(m.p_meas, 1e-4);
    ASSERT_DOUBLE_EQ(m.p_idle, 1e-6);
    ASSERT_EQ(NoiseModel::standard(1e-3, false).p_idle, 0);
    NoiseModel bad;
    bad.p1 = 1.5;
    ASSERT_THROW(bad.validate(), ClinrError);
}

TEST(sample_fault, zero_rates_never_fault) {
    Rng rng(1);
    NoiseModel zero;
    for (GateKind k : {GateKind::H, GateKind::CX, GateKind::M, GateKind::R}) {
        for (int t = 0; t < 1000; t++) {
            ASSERT_TRUE(sample_fault(Gate{k, 0, 1}, zero, rng).is_none());
        }
    }
}

TEST(sample_fault, single_qubit_frequencies) {
    Rng rng(2);
    NoiseModel m;
    m.p1 = 0.3;
    const int trials = 100000;
    std::map<int, int> counts;
    for (int t = 0; t < trials; t++) {
        counts[sample_fault(Gate{GateKind::S, 0}, m, rng).q0_pauli]++;
    }
    double sigma = std::sqrt(trials * 0.1 * 0.9);
    for (int code = 1; code < 4; code++) {
        ASSERT_LT(std::abs(counts[code] - 0.1 * trials), 3 * sigma) << code;
    }
}

TEST(sample_fault, two_qubit_frequencies) {
    Rng rng(3);
    NoiseModel m;
    m.p2 = 0.75;
    const int trials = 150000;
    std::map<int, int> counts;
    for (int t = 0; t < trials; t++) {
        auto f = sample_fault(Gate{GateKind::CZ, 0, 1}, m, rng);
        counts[f.q0_pauli | (f.q1_pauli << 2)]++;
    }
    ASSERT_EQ(counts.size(), 16);
    double sigma = std::sqrt(trials * 0.05 * 0.95);
    for (int code = 1; code < 16; code++) {
        ASSERT_LT(std::abs(counts[code] - 0.05 * trials), 3 * sigma) << code;
    }
}

TEST(sample_fault, measurement_flips) {
    Rng rng(4);
    NoiseModel m;
    m.p_meas = 0.2;
    m.p1 = 0.9;
    int flips = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; t++) {
        auto f = sample_fault(Gate{GateKind::M, 0}, m, rng);
        ASSERT_EQ(f.q0_pauli, 0);
        flips += f.measurement_flip;
    }
    ASSERT_LT(std::abs(flips - 0.2 * trials), 3 * std::sqrt(trials * 0.16));
}

TEST(judge_logical, simple) {
    auto stabs = output_stabilizers(random_clifford(3, 20, 1));
    ASSERT_FALSE(judge_logical(PauliOperator(3), stabs));
    for (const auto &g : stabs.generators) {
        ASSERT_FALSE(judge_logical(g, stabs));
    }
    ASSERT_THROW(judge_logical(PauliOperator(2), stabs), ClinrError);
}

TEST(judge_logical, matches_state_vector) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto c = random_clifford(2, 12, seed);
        auto stabs = output_stabilizers(c);
        StateVector psi(2);
        psi.apply(c);
        for (const auto &e : clinr_test::all_paulis(2)) {
            StateVector moved = psi;
            moved.apply(e);
            bool trivial = std::abs(std::abs(psi.inner(moved)) - 1) < 1e-9;
            ASSERT_EQ(judge_logical(e, stabs), !trivial) << e.str();
        }
    }
}

TEST(FrameSimulator, noiseless_single_pass) {
    auto c = random_clifford(3, 30, 5);
    Rng rng(6);
    for (int trial = 0; trial < 10; trial++) {
        auto tree = random_tree(30, 3, 3, 3, rng);
        CompileOptions opts;
        opts.fixed_stabilizers = true;
        auto program = compile(c, tree, opts);
        FrameSimulator sim(program, NoiseModel{}, 7);
        auto r = sim.run_shot();
        ASSERT_FALSE(r.logical_error);
        ASSERT_EQ(r.restarts, 0);
        ASSERT_EQ(static_cast<double>(r.executed_gates), program.nominal_gate_count());
        ASSERT_TRUE(r.residual_frame.is_identity());
    }
}

TEST(FrameSimulator, injected_error_detected_at_rate) {
    const size_t n = 3;
    auto c = random_clifford(n, 20, 8);
    for (uint32_t r = 1; r <= 4; r++) {
        auto program = compile(c, preset_tree("clinr1:" + std::to_string(r), 20));
        // A Z error on the unprimed half anticommutes with half the group.
        PauliOperator error(program.total_qubits);
        error.set_z(program.groups[0].rails[0], true);
        FrameSimulator sim(program, NoiseModel{}, 9);
        const int trials = 4000;
        int detected = 0;
        for (int t = 0; t < trials; t++) {
            sim.reset_shot();
            sim.step();
            sim.inject(error);
            bool fired = false;
            while (!fired && program.blocks[sim.position()].kind == BlockKind::CHECK) {
                fired = sim.step();
            }
            detected += fired;
        }
        double expected = 1 - std::pow(2.0, -static_cast<double>(r));
        double sigma = std::sqrt(trials * expected * (1 - expected));
        ASSERT_LT(std::abs(detected - trials * expected), 3 * sigma) << r;
    }
}

TEST(FrameSimulator, restart_cap_aborts) {
    auto c = random_clifford(2, 10, 10);
    auto program = compile(c, preset_tree("clinr1:3", 10));
    NoiseModel heavy;
    heavy.p2 = 0.9;
    heavy.p1 = 0.9;
    SimOptions opts;
    opts.restart_cap = 2;
    FrameSimulator sim(program, heavy, 11, opts);
    int aborted = 0;
    for (int t = 0; t < 50; t++) {
        aborted += sim.run_shot().aborted;
    }
    ASSERT_GT(aborted, 0);
}

TEST(FrameSimulator, direct_program_matches_survival_oracle) {
    const size_t n = 70;
    auto c = random_clifford(n, n * n, 12);
    auto program = compile(c, CliNRTree(n * n));
    auto noise = NoiseModel::standard(1e-3, false);
    double oracle = survival_product_oracle(c, noise);
    EstimateOptions opts;
    opts.shots = 3000;
    opts.seed = 13;
    auto est = estimate(program, noise, opts);
    ASSERT_LT(std::abs(est.p_log - oracle), 3 * est.p_log_stderr) << est.p_log << " vs " << oracle;
    ASSERT_DOUBLE_EQ(est.omega_time, 1.0);
}

TEST(FrameSimulator, idle_noise_matches_survival_oracle) {
    const size_t n = 12;
    auto c = random_clifford(n, 400, 14);
    auto program = compile(c, CliNRTree(400));
    NoiseModel noise;
    noise.p_idle = 2e-4;
    double oracle = survival_product_oracle(c, noise);
    ASSERT_GT(oracle, 0.2);
    EstimateOptions opts;
    opts.shots = 4000;
    opts.seed = 15;
    auto est = estimate(program, noise, opts);
    ASSERT_LT(std::abs(est.p_log - oracle), 3 * est.p_log_stderr) << est.p_log << " vs " << oracle;
}

TEST(estimate, noiseless_and_restart_free) {
    auto c = random_clifford(3, 24, 16);
    auto program = compile(c, preset_tree("binary2", 24));
    EstimateOptions opts;
    opts.shots = 50;
    auto clean = estimate(program, NoiseModel{}, opts);
    ASSERT_EQ(clean.p_log, 0);
    ASSERT_EQ(clean.p_log_stderr, 0);

    auto r0 = compile(c, uniform_tree(24, 2, 2, 0));
    auto noisy = estimate(r0, NoiseModel::standard(1e-2, true), opts);
    ASSERT_DOUBLE_EQ(noisy.omega_time, r0.nominal_gate_count() / 24.0);
    ASSERT_EQ(noisy.omega_time_stderr, 0);
    ASSERT_DOUBLE_EQ(noisy.omega_space, 13.0 / 3.0 * 3.0 / 3.0 * 16.0 / 13.0);
}

TEST(estimate, reproducible_and_thread_independent) {
    auto c = random_clifford(4, 40, 17);
    auto program = compile(c, preset_tree("binary2", 40));
    auto noise = NoiseModel::standard(5e-3, true);
    EstimateOptions a;
    a.shots = 400;
    a.seed = 1;
    a.threads = 1;
    EstimateOptions b = a;
    b.threads = 3;
    auto ra = estimate(program, noise, a);
    auto rb = estimate(program, noise, b);
    ASSERT_EQ(ra.logical_errors, rb.logical_errors);
    ASSERT_EQ(ra.omega_time, rb.omega_time);

    EstimateOptions c2 = a;
    c2.seed = 2;
    auto rc = estimate(program, noise, c2);
    double combined = std::sqrt(ra.p_log_stderr * ra.p_log_stderr + rc.p_log_stderr * rc.p_log_stderr);
    ASSERT_LE(std::abs(ra.p_log - rc.p_log), 3 * combined + 1e-12);
}

TEST(estimate, monotone_in_p) {
    auto c = random_clifford(4, 60, 18);
    auto program = compile(c, uniform_tree(60, 2, 0, 2));
    EstimateOptions opts;
    opts.shots = 3000;
    opts.seed = 19;
    double prev = -1, prev_err = 0;
    for (double p : {2e-3, 8e-3, 3e-2}) {
        auto r = estimate(program, NoiseModel::standard(p, false), opts);
        ASSERT_GE(r.p_log + 3 * r.p_log_stderr, prev - 3 * prev_err);
        prev = r.p_log;
        prev_err = r.p_log_stderr;
    }
}
