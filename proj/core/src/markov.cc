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

#include "clinr/error.h"
#include "clinr/program.h"

namespace clinr {

namespace {

// (1 - p)^x.
double survive(double p, double x) {
    if (x < 0) {
        fail(ErrorCode::InvalidArgument, "negative operation count in a survival factor");
    }
    if (x == 0) {
        return 1;
    }
    return std::exp(x * std::log1p(-p));
}

void check_vector(const MarkovVector &v) {
    if (v.entries.size() < 2) {
        fail(ErrorCode::InvalidArgument, "Markov vector needs at least 2 entries");
    }
}

void check_rate(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        fail(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0, 1]");
    }
}

// Idle locations of one check: controlled Paulis over 6n/4 steps while the
// other 3n - 2 rails wait.
double check_idle(uint64_t n) {
    double nd = static_cast<double>(n);
    return 4.5 * nd * nd - 3 * nd;
}

}  // namespace

double MarkovVector::sum() const {
    double s = 0;
    for (double e : entries) {
        s += e;
    }
    return s;
}

MarkovVector rsp_vector(double p_p, uint32_t r) {
    check_rate(p_p, "p_p");
    MarkovVector v;
    v.entries.assign(static_cast<size_t>(r) + 2, 0.0);
    v.entries[0] = 1 - p_p;
    v.entries[1] = p_p;
    return v;
}

MarkovVector step_check(const MarkovVector &v, uint32_t k, double p_de, double p_ue) {
    check_vector(v);
    if (k >= v.num_checks()) {
        fail(ErrorCode::InvalidArgument, "check index out of range");
    }
    check_rate(p_de, "p_de");
    check_rate(p_ue, "p_ue");
    if (p_de + p_ue > 1) {
        fail(ErrorCode::InvalidArgument, "p_de + p_ue exceeds 1");
    }
    MarkovVector out = v;
    double v0 = v.entries[0];
    double v1 = v.entries[1];
    out.entries[0] = v0 * (1 - p_de - p_ue);
    out.entries[1] = v0 * p_ue + v1 / 2;
    out.entries[k + 2] += v0 * p_de + v1 / 2;
    return out;
}

MarkovVector step_injection(const MarkovVector &v, double p_i) {
    check_vector(v);
    check_rate(p_i, "p_i");
    MarkovVector out = v;
    out.entries[0] = v.entries[0] * (1 - p_i);
    out.entries[1] = v.entries[1] + v.entries[0] * p_i;
    return out;
}

double logical_rate(const MarkovVector &v) {
    check_vector(v);
    double mass = v.entries[0] + v.entries[1];
    if (!(mass > 0)) {
        fail(ErrorCode::DegenerateRegime, "no probability mass on completed passes");
    }
    return v.entries[1] / mass;
}

double restart_probability(const MarkovVector &v) {
    check_vector(v);
    double p = 0;
    for (size_t j = 2; j < v.entries.size(); j++) {
        p += v.entries[j];
    }
    return p;
}

double expected_restarts(const MarkovVector &v, uint32_t k) {
    double p_res = restart_probability(v);
    if (p_res == 0) {
        return 0;
    }
    if (p_res >= 1) {
        fail(ErrorCode::DivergentRestart, "every pass restarts");
    }
    return v.entries[k + 2] / p_res * (1 / (1 - p_res) - 1);
}

double expected_gates(const MarkovVector &v, double g_p, double g_c, double g_i, bool literal_restart_cost) {
    uint32_t r = v.num_checks();
    double total = g_p + r * g_c + g_i;
    for (uint32_t k = 0; k < r; k++) {
        double cost = g_p + k * (literal_restart_cost ? g_p : g_c);
        total += cost * expected_restarts(v, k);
    }
    return total;
}

ErrorParams error_params(const BlockContext &ctx, const NoiseModel &noise, uint64_t n, const ImplConstants &k,
                         CheckExponent exponent) {
    noise.validate();
    k.validate();
    check_rate(ctx.p_log_children, "p_log_children");
    double nd = static_cast<double>(n);
    double s = ctx.s_prime;
    ErrorParams e;
    if (ctx.leaf) {
        e.p_p = 1 - survive(noise.p2, s / 2 + nd) * survive(noise.p1, s / 2 + 2 * nd) * survive(noise.p_idle, s * nd / 3);
    } else {
        e.p_p = 1 - (1 - ctx.p_log_children) * survive(noise.p2, nd) * survive(noise.p1, 2 * nd) *
                        survive(noise.p_idle, s);
    }
    // Of the 15 two-qubit faults, 8 flip the ancilla outcome and 6 leave an
    // undetected data error; 2 of 3 single-qubit faults flip the |+> ancilla.
    double two_qubit = exponent == CheckExponent::GateCount ? 3 * nd / 2 : 2 * nd / 3;
    e.p_de = 1 - survive(8 * noise.p2 / 15, two_qubit) * survive(2 * noise.p1 / 3, 2) * survive(noise.p_meas, 1);
    e.p_ue = 1 - survive(6 * noise.p2 / 15, two_qubit);
    e.g_p = k.a_p * nd + s;
    e.g_c = k.a_v * nd + k.b_v;
    e.g_i = k.a_i * nd;
    return e;
}

double idle_gates(const BlockContext &ctx, uint64_t n, const MarkovVector &v) {
    double prep = ctx.s_prime * static_cast<double>(n) / 3;
    double check = check_idle(n);
    double total = prep + ctx.r * check;
    for (uint32_t k = 0; k < v.num_checks(); k++) {
        total += (prep + k * check) * expected_restarts(v, k);
    }
    return total;
}

double injection_rate(const BlockContext &ctx, const NoiseModel &noise, uint64_t n, double g_idle) {
    double nd = static_cast<double>(n);
    // n two-qubit gates; 2n single-qubit operations and 2n measurements.
    double keep = survive(noise.p2, nd) * survive(noise.p1, 2 * nd) * survive(noise.p_meas, 2 * nd);
    if (!ctx.first_child) {
        keep *= survive(noise.p_idle, g_idle);
    }
    return 1 - keep;
}

BlockEstimate estimate_block(
    const BlockContext &ctx, const NoiseModel &noise, uint64_t n, double p_in, const MarkovOptions &options) {
    check_rate(p_in, "p_in");
    BlockEstimate out;
    out.params = error_params(ctx, noise, n, options.constants, options.check_exponent);
    MarkovVector v = rsp_vector(out.params.p_p, ctx.r);
    for (uint32_t k = 0; k < ctx.r; k++) {
        v = step_check(v, k, out.params.p_de, out.params.p_ue);
    }
    out.params.g_idle = idle_gates(ctx, n, v);
    out.params.p_i = injection_rate(ctx, noise, n, out.params.g_idle);
    // Errors already on the input rails pass through injection unchanged.
    double p_i_total = 1 - (1 - out.params.p_i) * (1 - p_in);
    v = step_injection(v, p_i_total);
    out.vector = v;
    out.p_log = logical_rate(v);
    out.expected_gates =
        expected_gates(v, out.params.g_p, out.params.g_c, out.params.g_i, options.literal_restart_cost);
    return out;
}

namespace {

struct WalkResult {
    double p_log = 0;
    double gates = 0;
};

// Runs the children of `id` in order; returns the last output rate and the
// summed expected gate counts.
WalkResult walk_children(
    const CliNRTree &tree, size_t id, uint64_t n, const NoiseModel &noise, const MarkovOptions &options) {
    WalkResult acc;
    const auto &children = tree.vertex(id).children;
    for (size_t j = 0; j < children.size(); j++) {
        const auto &child = tree.vertex(children[j]);
        BlockContext ctx;
        ctx.r = child.r;
        ctx.first_child = j == 0;
        if (child.children.empty()) {
            ctx.leaf = true;
            ctx.s_prime = static_cast<double>(child.s);
        } else {
            WalkResult inner = walk_children(tree, children[j], n, noise, options);
            ctx.leaf = false;
            ctx.s_prime = inner.gates;
            ctx.p_log_children = inner.p_log;
        }
        BlockEstimate b = estimate_block(ctx, noise, n, acc.p_log, options);
        acc.p_log = b.p_log;
        acc.gates += b.expected_gates;
    }
    return acc;
}

}  // namespace

EstimateResult estimate_tree(const CliNRTree &tree, uint64_t n, const NoiseModel &noise, const MarkovOptions &options) {
    tree.require_valid();
    noise.validate();
    if (n == 0) {
        fail(ErrorCode::InvalidArgument, "n must be positive");
    }
    double s = static_cast<double>(tree.vertex(tree.root()).s);
    EstimateResult out;
    out.provenance = Provenance::Markov;
    out.shots = 0;
    out.circuits = 0;
    out.omega_space = static_cast<double>(qubit_count(tree, n)) / static_cast<double>(n);
    if (tree.depth() == 0) {
        double nd = static_cast<double>(n);
        out.p_log = 1 - survive(noise.p2, s / 2) * survive(noise.p1, s / 2) * survive(noise.p_idle, s * nd / 3);
        out.omega_time = 1;
        return out;
    }
    WalkResult top = walk_children(tree, tree.root(), n, noise, options);
    out.p_log = top.p_log;
    out.omega_time = top.gates / s;
    return out;
}

}  // namespace clinr
