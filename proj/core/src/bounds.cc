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

#include <algorithm>
#include <cmath>
#include <limits>

#include "clinr/error.h"

namespace clinr {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        fail(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0, 1]");
    }
}

double check_cost(uint64_t n, const ImplConstants &k) {
    return k.a_v * static_cast<double>(n) + k.b_v;
}

double m_of(uint64_t n, uint32_t r, const ImplConstants &k) {
    return k.a_p * static_cast<double>(n) + r * check_cost(n, k);
}

// exp/log1p keep full relative precision when p * x is small.
double survival(double p, double x) {
    if (x == 0) {
        return 1;
    }
    return std::exp(x * std::log1p(-p));
}

// Error bound of one CliNR1 block, unclamped. NaN marks a non-positive
// denominator.
double clinr1_error_raw(double p, uint64_t n, uint32_t r_min, double m, double p_log_c, const ImplConstants &k) {
    double nd = static_cast<double>(n);
    double den = survival(p, m) * (1 - p_log_c);
    if (!(den > 0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double rsp = (1 - survival(p, k.a_p * nd) * (1 - p_log_c)) * std::exp2(-static_cast<double>(r_min));
    double checks = 2 * g(p, check_cost(n, k));
    return (rsp + checks) / den + g(p, k.a_i * nd);
}

// Expected gate count bound of one CliNR1 block, unnormalized.
double clinr1_gates_raw(double p, uint64_t n, double m, double s_hat, double p_log_c, const ImplConstants &k) {
    double den = survival(p, m) * (1 - p_log_c);
    if (!(den > 0)) {
        return std::numeric_limits<double>::infinity();
    }
    return (m + s_hat) / den + k.a_i * static_cast<double>(n);
}

Bound clamp_error(double raw) {
    Bound b;
    if (std::isnan(raw) || raw >= 1) {
        b.value = 1;
        b.vacuous = true;
    } else {
        b.value = raw;
    }
    return b;
}

Bound clamp_gate(double raw) {
    Bound b;
    b.value = raw;
    b.vacuous = std::isinf(raw) || std::isnan(raw);
    if (b.vacuous) {
        b.value = std::numeric_limits<double>::infinity();
    }
    return b;
}

}  // namespace

double g(double p, double x) {
    if (x == 0 || p == 0) {
        return 0;
    }
    if (p == 1) {
        return 1;
    }
    return -std::expm1(x * std::log1p(-p));
}

double BoundInputs::m() const {
    return m_of(n, r, k);
}

void BoundInputs::validate() const {
    check_probability(p, "p");
    check_probability(p_log_c, "p_log_c");
    if (n == 0) {
        fail(ErrorCode::InvalidArgument, "n must be positive");
    }
    if (!(s_hat > 0)) {
        fail(ErrorCode::InvalidArgument, "s_hat must be positive");
    }
    k.validate();
}

Bound clinr1_error_bound(const BoundInputs &in) {
    in.validate();
    return clamp_error(clinr1_error_raw(in.p, in.n, in.r, in.m(), in.p_log_c, in.k));
}

Bound clinr1_gate_bound(const BoundInputs &in) {
    in.validate();
    return clamp_gate(clinr1_gates_raw(in.p, in.n, in.m(), in.s_hat, in.p_log_c, in.k) / in.s_hat);
}

RecursiveBound recursive_bounds(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k) {
    check_probability(p, "p");
    if (n == 0) {
        fail(ErrorCode::InvalidArgument, "n must be positive");
    }
    k.validate();
    tree.require_valid();
    const auto &root = tree.vertex(tree.root());
    double s = static_cast<double>(root.s);

    RecursiveBound out;
    uint32_t depth = tree.depth();
    if (depth == 0) {
        out.error = clamp_error(g(p, s));
        out.gate = clamp_gate(1.0);
        return out;
    }

    out.levels.resize(depth);
    for (uint32_t l = 1; l <= depth; l++) {
        LevelBound &lb = out.levels[l - 1];
        lb.level = l;
        lb.r_min = std::numeric_limits<uint32_t>::max();
        for (size_t id : tree.level(l)) {
            lb.r_min = std::min(lb.r_min, tree.vertex(id).r);
            lb.r_max = std::max(lb.r_max, tree.vertex(id).r);
        }
        for (size_t id : tree.level(l - 1)) {
            lb.t_max = std::max<uint64_t>(lb.t_max, tree.vertex(id).children.size());
        }
        lb.m_max = m_of(n, lb.r_max, k);
    }

    // Error (a) and expected size (b) of one level-l block protected by
    // CliNR1, using the level-l per-subcircuit quantities.
    auto block_error = [&](const LevelBound &lb) {
        return clinr1_error_raw(p, n, lb.r_min, lb.m_max, lb.p_block, k);
    };
    auto block_gates = [&](const LevelBound &lb) {
        return clinr1_gates_raw(p, n, lb.m_max, lb.s_hat, lb.p_block, k);
    };

    for (uint32_t l = depth; l >= 1; l--) {
        LevelBound &lb = out.levels[l - 1];
        double p_block = 0;
        double s_hat = 0;
        bool has_internal = false;
        for (size_t id : tree.level(l)) {
            const auto &v = tree.vertex(id);
            if (v.children.empty()) {
                p_block = std::max(p_block, g(p, static_cast<double>(v.s)));
                s_hat = std::max(s_hat, static_cast<double>(v.s));
            } else {
                has_internal = true;
            }
        }
        if (has_internal) {
            const LevelBound &below = out.levels[l];
            double t = static_cast<double>(below.t_max);
            double e = block_error(below);
            p_block = std::isnan(e) ? std::numeric_limits<double>::quiet_NaN() : std::max(p_block, t * e);
            s_hat = std::max(s_hat, t * block_gates(below));
        }
        lb.p_block = p_block;
        lb.s_hat = s_hat;
    }

    const LevelBound &top = out.levels[0];
    double t1 = static_cast<double>(top.t_max);
    double e = block_error(top);
    out.error = clamp_error(std::isnan(e) ? e : t1 * e);
    out.gate = clamp_gate(t1 * block_gates(top) / s);
    return out;
}

Bound recursive_error_bound(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k) {
    return recursive_bounds(tree, p, n, k).error;
}

Bound recursive_gate_bound(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k) {
    return recursive_bounds(tree, p, n, k).gate;
}

double alpha(uint64_t n, const ImplConstants &k, bool with_n) {
    k.validate();
    double nd = with_n ? static_cast<double>(n) : 1.0;
    return (9 * (4 * k.a_v * nd + 2 * k.b_v) + 3 * k.a_i * nd) / 2;
}

Bound bounded_error_bound(uint64_t s, double p, uint64_t n, uint32_t depth, const ImplConstants &k) {
    check_probability(p, "p");
    if (n == 0 || depth == 0) {
        fail(ErrorCode::InvalidArgument, "n and depth must be positive");
    }
    Bound b;
    b.value = static_cast<double>(s) * std::pow(p, depth + 1) * std::pow(alpha(n, k), depth);
    double nd = static_cast<double>(n);
    if (p > 0) {
        double r = static_cast<double>(threshold_R(p, n, k));
        double cost = k.a_p * nd + 2 * r * check_cost(n, k) + k.a_i * nd;
        b.precondition_ok = r >= 0 && cost < 1 / (2 * p);
    }
    return b;
}

double bounded_gate_bound(uint32_t depth) {
    return 2 * std::pow(12.0, depth);
}

TheoremParameters theorem_parameters(uint64_t s, double p, uint64_t n) {
    if (s == 0 || n == 0) {
        fail(ErrorCode::InvalidArgument, "s and n must be positive");
    }
    if (!(p > 0 && p < 1)) {
        fail(ErrorCode::InvalidArgument, "p must lie in (0, 1)");
    }
    double sp = static_cast<double>(s) * p;
    TheoremParameters out;
    double d = std::ceil(std::log2(sp) + 1);
    out.depth = d > 1 ? static_cast<uint32_t>(d) : 1;
    out.omega_cap = 24 * std::ceil(std::pow(sp, 4));
    out.qubit_cap = (2 * static_cast<uint64_t>(out.depth) + 1) * n + 1;
    return out;
}

}  // namespace clinr
