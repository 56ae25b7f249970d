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


#ifndef CLINR_MARKOV_H
#define CLINR_MARKOV_H

#include <cstdint>
#include <vector>

#include "clinr/noise.h"
#include "clinr/tree.h"

namespace clinr {

/// Event probabilities of one CliNR1 block with r checks: entry 0 is "no
/// error", entry 1 "undetected error" and entry k + 2 "detection at check k".
struct MarkovVector {
    std::vector<double> entries;

    uint32_t num_checks() const {
        return static_cast<uint32_t>(entries.size() - 2);
    }
    double sum() const;
};

/// State after preparation: [1 - p_p, p_p, 0, ...] with r + 2 entries.
MarkovVector rsp_vector(double p_p, uint32_t r);
/// Propagates through check k: a fresh fault is detected with p_de or left
/// undetected with p_ue, and a prior undetected error is caught with
/// probability 1/2.
MarkovVector step_check(const MarkovVector &v, uint32_t k, double p_de, double p_ue);
/// Propagates through injection, which turns "no error" into "undetected
/// error" with probability p_i.
MarkovVector step_injection(const MarkovVector &v, double p_i);
/// P1 / (P0 + P1). Throws DegenerateRegime when both are 0.
double logical_rate(const MarkovVector &v);
/// Sum of the detection entries.
double restart_probability(const MarkovVector &v);
/// Expected number of restarts triggered at check k. Throws DivergentRestart
/// when every pass restarts.
double expected_restarts(const MarkovVector &v, uint32_t k);

/// g_p + r g_c + g_i + sum_k (g_p + k g_c) m(k). With literal_restart_cost
/// the restart term is (g_p + k g_p) m(k) instead.
double expected_gates(const MarkovVector &v, double g_p, double g_c, double g_i, bool literal_restart_cost = false);

/// Where a CliNR1 block sits in the tree.
/// Exponent of the two-qubit factors in the check error rates.
enum class CheckExponent : uint8_t {
    /// 3n/2: the two-qubit gate count of one check.
    GateCount,
    /// 2n/3 as printed alongside the formula.
    Printed,
};

struct BlockContext {
    /// The protected subcircuit is a leaf of size s_prime; otherwise s_prime
    /// is the expected gate count of the children.
    bool leaf = true;
    double s_prime = 0;
    uint32_t r = 0;
    /// Upper levels only: logical error rate of the children's output.
    double p_log_children = 0;
    /// First child of its parent: injection starts without idling.
    bool first_child = true;
};

struct ErrorParams {
    double p_p = 0;
    double p_de = 0;
    double p_ue = 0;
    double p_i = 0;
    double g_p = 0;
    double g_c = 0;
    double g_i = 0;
    double g_idle = 0;
};

/// Preparation and check rates and the gate counts. p_i and g_idle are left
/// at 0; they depend on the vector after the checks.
ErrorParams error_params(const BlockContext &ctx, const NoiseModel &noise, uint64_t n, const ImplConstants &k = {},
                         CheckExponent exponent = CheckExponent::GateCount);
/// Expected idle locations during one block given the post-check vector.
double idle_gates(const BlockContext &ctx, uint64_t n, const MarkovVector &v);
/// Injection error rate from the gate rates and, unless the block is a first
/// child, the idle count.
double injection_rate(const BlockContext &ctx, const NoiseModel &noise, uint64_t n, double g_idle);

struct BlockEstimate {
    ErrorParams params;
    MarkovVector vector;
    /// Including the error already present on the input rails.
    double p_log = 0;
    double expected_gates = 0;
};

struct MarkovOptions {
    bool literal_restart_cost = false;
    CheckExponent check_exponent = CheckExponent::GateCount;
    ImplConstants constants;
};

/// One CliNR1 block whose input rails carry an error with probability p_in.
BlockEstimate estimate_block(
    const BlockContext &ctx, const NoiseModel &noise, uint64_t n, double p_in, const MarkovOptions &options = {});

/// Depth-first walk over the tree. Siblings run in order, each one's output
/// rate feeding the next one's input, and the last child's rate and the
/// children's summed gate counts feed the parent's preparation. A
/// single-vertex tree is estimated as the unprotected circuit.
EstimateResult estimate_tree(const CliNRTree &tree, uint64_t n, const NoiseModel &noise, const MarkovOptions &options = {});

}  // namespace clinr

#endif
