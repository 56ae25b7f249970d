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


#ifndef CLINR_BOUNDS_H
#define CLINR_BOUNDS_H

#include <cstdint>
#include <vector>

#include "clinr/tree.h"

namespace clinr {

/// 1 - (1 - p)^x: the probability that at least one of x operations fails.
double g(double p, double x);

/// Inputs of the single-level bounds. m is derived on demand.
struct BoundInputs {
    double p = 0;
    uint64_t n = 1;
    uint32_t r = 0;
    /// Expected gate count of the protected subcircuit.
    double s_hat = 1;
    /// Logical error rate of the protected subcircuit on its own.
    double p_log_c = 0;
    ImplConstants k;

    /// a_p*n + r*(a_v*n + b_v): gates of one preparation + checks pass.
    double m() const;
    void validate() const;
};

/// A bound value with flags. A vacuous error bound is clamped to 1 and a
/// vacuous overhead bound is +inf.
struct Bound {
    double value = 0;
    bool vacuous = false;
    /// False when the hypothesis of the bound does not hold; the value is
    /// still computed.
    bool precondition_ok = true;
};

Bound clinr1_error_bound(const BoundInputs &in);
Bound clinr1_gate_bound(const BoundInputs &in);

/// Per-level quantities of the recursive bounds. For level l >= 1: t_max is
/// the largest child count among level l-1 vertices, r_min/r_max range over
/// level l, p_block is the error bound of one level-l subcircuit and s_hat its
/// expected gate count bound.
struct LevelBound {
    uint32_t level = 0;
    uint64_t t_max = 0;
    uint32_t r_min = 0;
    uint32_t r_max = 0;
    double m_max = 0;
    double p_block = 0;
    double s_hat = 0;
};

struct RecursiveBound {
    Bound error;
    Bound gate;
    /// Index l - 1 holds level l.
    std::vector<LevelBound> levels;
};

/// Level-by-level error and overhead bounds for a CliNR tree. Leaves above
/// the deepest level contribute g(p, s) and their size as if they sat at the
/// bottom. A single-vertex tree is the unprotected circuit: g(p, s) and
/// overhead 1.
RecursiveBound recursive_bounds(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k = {});
Bound recursive_error_bound(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k = {});
Bound recursive_gate_bound(const CliNRTree &tree, double p, uint64_t n, const ImplConstants &k = {});

/// (9(4 a_v n + 2 b_v) + 3 a_i n) / 2, or the same expression with every n
/// replaced by 1 when with_n is false.
double alpha(uint64_t n, const ImplConstants &k = {}, bool with_n = true);

/// s p^(D+1) alpha^D for a uniformly bounded tree. precondition_ok reports
/// a_p n + 2 R (a_v n + b_v) + a_i n < 1 / (2p).
Bound bounded_error_bound(uint64_t s, double p, uint64_t n, uint32_t depth, const ImplConstants &k = {});
/// 2 * 12^D.
double bounded_gate_bound(uint32_t depth);

struct TheoremParameters {
    uint32_t depth = 1;
    double omega_cap = 0;
    uint64_t qubit_cap = 0;
};

/// D = max(1, ceil(log2(sp) + 1)), omega cap 24 ceil((sp)^4), (2D+1)n + 1
/// qubits.
TheoremParameters theorem_parameters(uint64_t s, double p, uint64_t n);

}  // namespace clinr

#endif
