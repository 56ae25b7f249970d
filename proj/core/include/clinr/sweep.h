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


#ifndef CLINR_SWEEP_H
#define CLINR_SWEEP_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clinr/markov.h"
#include "clinr/noise.h"
#include "clinr/tree.h"

namespace clinr {

struct SweepConfig {
    uint64_t n = 70;
    /// Circuit size; 0 means n^2.
    uint64_t s = 0;
    double p = 1e-3;
    bool idle = false;
    std::vector<uint32_t> depths{1, 2};
    uint32_t t1_min = 1;
    uint32_t t1_max = 10;
    uint32_t children_min = 2;
    uint32_t children_max = 10;
    uint32_t r_min = 0;
    uint32_t r_max = 30;
    double omega_cap = 100;
    /// Frontier points with a Markov overhead above this are not confirmed
    /// by simulation; 0 means omega_cap.
    double confirm_omega_max = 0;
    bool confirm_direct = true;
    uint64_t shots = 80;
    uint64_t circuits = 50;
    uint64_t restart_cap = 10000;
    uint64_t seed = 0;
    /// 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;

    uint64_t circuit_size() const {
        return s == 0 ? n * n : s;
    }
    NoiseModel noise() const {
        return NoiseModel::standard(p, idle);
    }
    void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment. Keys not listed in
/// SweepConfig are a usage error. Values override those already in `base`.
SweepConfig parse_config(std::string_view text, SweepConfig base = {});
/// The inverse of parse_config, one line per key in declaration order.
std::string config_text(const SweepConfig &config);

/// A uniform sweep tree: t1 level-1 vertices each with `children` leaves
/// (0 for depth 1), r checks everywhere off the root. Depth 0 is the
/// unprotected circuit.
struct TreeSpec {
    uint32_t depth = 1;
    uint32_t t1 = 1;
    uint32_t children = 0;
    uint32_t r = 0;

    CliNRTree build(uint64_t s) const;
    size_t num_vertices() const;
    std::string str() const;
    bool operator==(const TreeSpec &other) const = default;
};

struct SweepPoint {
    TreeSpec spec;
    EstimateResult markov;
    std::optional<EstimateResult> monte_carlo;
    uint64_t qubits = 0;
    /// Seed of the simulation runs of this point.
    uint64_t seed = 0;
};

/// Markov estimates over the configured grid, ordered by (depth, t1,
/// children, r), with points above omega_cap removed.
std::vector<SweepPoint> grid(const SweepConfig &config);

/// Non-dominated points under (min omega_time, min p_log), sorted by
/// omega_time. Among equal points the smaller tree (fewer vertices, then
/// smaller r) is kept. Uses the Monte Carlo estimates when `monte_carlo` is
/// set; points without one are skipped.
std::vector<SweepPoint> pareto(const std::vector<SweepPoint> &points, bool monte_carlo = false);

/// Frontier of each configured depth, concatenated in depth order.
std::vector<SweepPoint> frontier_by_depth(const std::vector<SweepPoint> &points, bool monte_carlo = false);

/// Simulates each point on config.circuits random circuits of size
/// circuit_size() with config.shots shots each. Circuit k is the same for all
/// points. The attached result holds the mean over circuits with the
/// across-circuit standard deviation as the error bars.
std::vector<SweepPoint> confirm(const std::vector<SweepPoint> &points, const SweepConfig &config);

/// The confirmation procedure for a single arbitrary tree of size
/// circuit_size(), seeded by config.seed.
EstimateResult simulate_tree(const CliNRTree &tree, const SweepConfig &config);

/// Markov estimate and metadata for one tree.
SweepPoint make_point(const TreeSpec &spec, const SweepConfig &config);

/// The frontier points to simulate: frontier_by_depth restricted to
/// confirm_omega_max, preceded by the unprotected circuit if configured.
std::vector<SweepPoint> confirmation_targets(const std::vector<SweepPoint> &points, const SweepConfig &config);

/// Agreement between the Markov and Monte Carlo columns.
struct Concordance {
    size_t points = 0;
    size_t within_factor_2 = 0;
    size_t pairs = 0;
    size_t ordered_pairs = 0;
};
Concordance concordance(const std::vector<SweepPoint> &points);

/// Columns: depth,t1,children,r,omega_markov,plog_markov,omega_mc,plog_mc,
/// plog_mc_stddev,qubits,seed. Missing Monte Carlo fields are empty.
std::string to_csv(const std::vector<SweepPoint> &points);
std::string to_json(const std::vector<SweepPoint> &points);

/// One estimate as a header plus one CSV row, or as a JSON object.
std::string to_csv(const EstimateResult &result);
std::string to_json(const EstimateResult &result);

/// Shortest round-trip decimal form used by every text output.
std::string format_number(double v);

}  // namespace clinr

#endif
