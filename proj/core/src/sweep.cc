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


#include "clinr/sweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "clinr/error.h"
#include "clinr/program.h"
#include "clinr/stabilizer.h"
#include "json.hpp"

namespace clinr {

namespace {

// Runs fn(i) for i in [0, count) on a bounded pool. Callers write results by
// index, so the outcome does not depend on scheduling.
void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)> &fn) {
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<size_t>(workers, count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&]() {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(ErrorCode::Usage, "bad value for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "on" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "off" || text == "no") {
        return false;
    }
    fail(ErrorCode::Usage, "bad boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

std::vector<uint32_t> parse_list(std::string_view key, std::string_view text) {
    std::vector<uint32_t> out;
    while (true) {
        size_t comma = text.find(',');
        out.push_back(parse_value<uint32_t>(key, trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) {
            break;
        }
        text = text.substr(comma + 1);
    }
    return out;
}

std::string join(const std::vector<uint32_t> &v) {
    std::string out;
    for (size_t j = 0; j < v.size(); j++) {
        out += (j ? "," : "") + std::to_string(v[j]);
    }
    return out;
}

// Mean and sample standard deviation.
std::pair<double, double> mean_stddev(const std::vector<double> &xs) {
    if (xs.empty()) {
        return {0, 0};
    }
    double mean = 0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return {mean, 0};
    }
    double var = 0;
    for (double x : xs) {
        var += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(var / static_cast<double>(xs.size() - 1))};
}

const double &omega_of(const SweepPoint &p, bool mc) {
    return mc ? p.monte_carlo->omega_time : p.markov.omega_time;
}

const double &plog_of(const SweepPoint &p, bool mc) {
    return mc ? p.monte_carlo->p_log : p.markov.p_log;
}

}  // namespace

void SweepConfig::validate() const {
    if (n == 0) {
        fail(ErrorCode::InvalidArgument, "n must be positive");
    }
    if (!(p >= 0 && p <= 1)) {
        fail(ErrorCode::InvalidArgument, "p must lie in [0, 1]");
    }
    if (depths.empty()) {
        fail(ErrorCode::InvalidArgument, "depth set is empty");
    }
    for (uint32_t d : depths) {
        if (d < 1 || d > 2) {
            fail(ErrorCode::InvalidArgument, "sweep depths must be 1 or 2");
        }
    }
    if (t1_min < 1 || t1_min > t1_max) {
        fail(ErrorCode::InvalidArgument, "t1 range is empty");
    }
    if (children_min < 1 || children_min > children_max) {
        fail(ErrorCode::InvalidArgument, "children range is empty");
    }
    if (r_min > r_max) {
        fail(ErrorCode::InvalidArgument, "r range is empty");
    }
    if (!(omega_cap > 1)) {
        fail(ErrorCode::InvalidArgument, "omega_cap must exceed 1");
    }
    if (confirm_omega_max < 0) {
        fail(ErrorCode::InvalidArgument, "confirm_omega_max must not be negative");
    }
    if (shots == 0 || circuits == 0) {
        fail(ErrorCode::InvalidArgument, "shots and circuits must be positive");
    }
    if (restart_cap == 0) {
        fail(ErrorCode::InvalidArgument, "restart_cap must be positive");
    }
}

SweepConfig parse_config(std::string_view text, SweepConfig base) {
    SweepConfig c = std::move(base);
    size_t line_no = 0;
    while (!text.empty()) {
        size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorCode::Usage, "config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "n") {
            c.n = parse_value<uint64_t>(key, value);
        } else if (key == "s") {
            c.s = parse_value<uint64_t>(key, value);
        } else if (key == "p") {
            c.p = parse_value<double>(key, value);
        } else if (key == "idle") {
            c.idle = parse_bool(key, value);
        } else if (key == "depths") {
            c.depths = parse_list(key, value);
        } else if (key == "t1_min") {
            c.t1_min = parse_value<uint32_t>(key, value);
        } else if (key == "t1_max") {
            c.t1_max = parse_value<uint32_t>(key, value);
        } else if (key == "children_min") {
            c.children_min = parse_value<uint32_t>(key, value);
        } else if (key == "children_max") {
            c.children_max = parse_value<uint32_t>(key, value);
        } else if (key == "r_min") {
            c.r_min = parse_value<uint32_t>(key, value);
        } else if (key == "r_max") {
            c.r_max = parse_value<uint32_t>(key, value);
        } else if (key == "omega_cap") {
            c.omega_cap = parse_value<double>(key, value);
        } else if (key == "confirm_omega_max") {
            c.confirm_omega_max = parse_value<double>(key, value);
        } else if (key == "confirm_direct") {
            c.confirm_direct = parse_bool(key, value);
        } else if (key == "shots") {
            c.shots = parse_value<uint64_t>(key, value);
        } else if (key == "circuits") {
            c.circuits = parse_value<uint64_t>(key, value);
        } else if (key == "restart_cap") {
            c.restart_cap = parse_value<uint64_t>(key, value);
        } else if (key == "seed") {
            c.seed = parse_value<uint64_t>(key, value);
        } else if (key == "threads") {
            c.threads = parse_value<unsigned>(key, value);
        } else {
            fail(ErrorCode::Usage, "config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    c.validate();
    return c;
}

std::string config_text(const SweepConfig &c) {
    std::ostringstream out;
    out << "n = " << c.n << "\n";
    out << "s = " << c.s << "\n";
    out << "p = " << format_number(c.p) << "\n";
    out << "idle = " << (c.idle ? "true" : "false") << "\n";
    out << "depths = " << join(c.depths) << "\n";
    out << "t1_min = " << c.t1_min << "\n";
    out << "t1_max = " << c.t1_max << "\n";
    out << "children_min = " << c.children_min << "\n";
    out << "children_max = " << c.children_max << "\n";
    out << "r_min = " << c.r_min << "\n";
    out << "r_max = " << c.r_max << "\n";
    out << "omega_cap = " << format_number(c.omega_cap) << "\n";
    out << "confirm_omega_max = " << format_number(c.confirm_omega_max) << "\n";
    out << "confirm_direct = " << (c.confirm_direct ? "true" : "false") << "\n";
    out << "shots = " << c.shots << "\n";
    out << "circuits = " << c.circuits << "\n";
    out << "restart_cap = " << c.restart_cap << "\n";
    out << "seed = " << c.seed << "\n";
    out << "threads = " << c.threads << "\n";
    return out.str();
}

CliNRTree TreeSpec::build(uint64_t s) const {
    if (depth == 0) {
        return CliNRTree(s);
    }
    if ((depth == 1) != (children == 0) || depth > 2) {
        fail(ErrorCode::InvalidArgument, "sweep trees have depth 1 without children or depth 2 with children");
    }
    return uniform_tree(s, t1, children, r);
}

size_t TreeSpec::num_vertices() const {
    if (depth == 0) {
        return 1;
    }
    return 1 + size_t{t1} * (1 + children);
}

std::string TreeSpec::str() const {
    if (depth == 0) {
        return "direct";
    }
    return "depth " + std::to_string(depth) + " t1 " + std::to_string(t1) + " children " + std::to_string(children) +
           " r " + std::to_string(r);
}

SweepPoint make_point(const TreeSpec &spec, const SweepConfig &config) {
    SweepPoint pt;
    pt.spec = spec;
    CliNRTree tree = spec.build(config.circuit_size());
    pt.markov = estimate_tree(tree, config.n, config.noise());
    pt.qubits = qubit_count(tree, config.n);
    pt.seed = derive_seed(config.seed, {spec.depth, spec.t1, spec.children, spec.r});
    return pt;
}

std::vector<SweepPoint> grid(const SweepConfig &config) {
    config.validate();
    std::vector<TreeSpec> specs;
    std::vector<uint32_t> depths = config.depths;
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    for (uint32_t d : depths) {
        for (uint32_t t1 = config.t1_min; t1 <= config.t1_max; t1++) {
            uint32_t c_lo = d == 1 ? 0 : config.children_min;
            uint32_t c_hi = d == 1 ? 0 : config.children_max;
            for (uint32_t c = c_lo; c <= c_hi; c++) {
                for (uint32_t r = config.r_min; r <= config.r_max; r++) {
                    specs.push_back({d, t1, c, r});
                }
            }
        }
    }
    std::vector<SweepPoint> all(specs.size());
    parallel_for(specs.size(), config.threads, [&](size_t i) { all[i] = make_point(specs[i], config); });
    std::vector<SweepPoint> kept;
    for (auto &pt : all) {
        if (pt.markov.omega_time <= config.omega_cap) {
            kept.push_back(std::move(pt));
        }
    }
    return kept;
}

std::vector<SweepPoint> pareto(const std::vector<SweepPoint> &points, bool monte_carlo) {
    std::vector<const SweepPoint *> order;
    for (const auto &p : points) {
        if (!monte_carlo || p.monte_carlo.has_value()) {
            order.push_back(&p);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](const SweepPoint *a, const SweepPoint *b) {
        double oa = omega_of(*a, monte_carlo), ob = omega_of(*b, monte_carlo);
        if (oa != ob) {
            return oa < ob;
        }
        double pa = plog_of(*a, monte_carlo), pb = plog_of(*b, monte_carlo);
        if (pa != pb) {
            return pa < pb;
        }
        if (a->spec.num_vertices() != b->spec.num_vertices()) {
            return a->spec.num_vertices() < b->spec.num_vertices();
        }
        return a->spec.r < b->spec.r;
    });
    std::vector<SweepPoint> out;
    for (const SweepPoint *p : order) {
        if (out.empty() || plog_of(*p, monte_carlo) < plog_of(out.back(), monte_carlo)) {
            out.push_back(*p);
        }
    }
    return out;
}

std::vector<SweepPoint> frontier_by_depth(const std::vector<SweepPoint> &points, bool monte_carlo) {
    std::map<uint32_t, std::vector<SweepPoint>> by_depth;
    for (const auto &p : points) {
        by_depth[p.spec.depth].push_back(p);
    }
    std::vector<SweepPoint> out;
    for (const auto &[depth, group] : by_depth) {
        auto front = pareto(group, monte_carlo);
        out.insert(out.end(), front.begin(), front.end());
    }
    return out;
}

std::vector<SweepPoint> confirmation_targets(const std::vector<SweepPoint> &points, const SweepConfig &config) {
    double limit = config.confirm_omega_max > 0 ? config.confirm_omega_max : config.omega_cap;
    std::vector<SweepPoint> out;
    if (config.confirm_direct) {
        out.push_back(make_point(TreeSpec{0, 0, 0, 0}, config));
    }
    for (auto &p : frontier_by_depth(points)) {
        if (p.markov.omega_time <= limit) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

namespace {

// Simulates every tree on the same config.circuits random circuits and
// aggregates per tree: mean over circuits, across-circuit standard deviation.
std::vector<EstimateResult> simulate_trees(const std::vector<CliNRTree> &trees, const std::vector<uint64_t> &seeds,
                                           const SweepConfig &config) {
    config.validate();
    uint64_t s = config.circuit_size();
    for (const auto &tree : trees) {
        if (tree.vertex(tree.root()).s != s) {
            fail(ErrorCode::Partition, "tree size does not match the circuit size");
        }
    }
    std::vector<CliffordCircuit> circuits(config.circuits);
    parallel_for(circuits.size(), config.threads,
                 [&](size_t k) { circuits[k] = random_clifford(config.n, s, derive_seed(config.seed, {0, k})); });

    size_t per_tree = circuits.size();
    std::vector<EstimateResult> runs(trees.size() * per_tree);
    NoiseModel noise = config.noise();
    parallel_for(runs.size(), config.threads, [&](size_t task) {
        size_t i = task / per_tree;
        uint64_t k = task % per_tree;
        CompileOptions copts;
        copts.seed = derive_seed(seeds[i], {k, 0});
        CliNRProgram program = compile(circuits[k], trees[i], copts);
        EstimateOptions eopts;
        eopts.shots = config.shots;
        eopts.seed = derive_seed(seeds[i], {k, 1});
        eopts.threads = 1;
        eopts.sim.restart_cap = config.restart_cap;
        runs[task] = estimate(program, noise, eopts);
    });

    std::vector<EstimateResult> out(trees.size());
    for (size_t i = 0; i < trees.size(); i++) {
        EstimateResult &agg = out[i];
        agg.provenance = Provenance::MonteCarlo;
        agg.circuits = per_tree;
        std::vector<double> plogs, omegas;
        double restarts = 0;
        for (size_t k = 0; k < per_tree; k++) {
            const EstimateResult &r = runs[i * per_tree + k];
            agg.shots += r.shots;
            agg.aborted += r.aborted;
            agg.logical_errors += r.logical_errors;
            agg.omega_space = r.omega_space;
            if (r.aborted < r.shots) {
                plogs.push_back(r.p_log);
                omegas.push_back(r.omega_time);
                restarts += r.mean_restarts;
            }
        }
        std::tie(agg.p_log, agg.p_log_stderr) = mean_stddev(plogs);
        std::tie(agg.omega_time, agg.omega_time_stderr) = mean_stddev(omegas);
        agg.mean_restarts = plogs.empty() ? 0 : restarts / static_cast<double>(plogs.size());
    }
    return out;
}

}  // namespace

EstimateResult simulate_tree(const CliNRTree &tree, const SweepConfig &config) {
    return simulate_trees({tree}, {config.seed}, config).front();
}

std::vector<SweepPoint> confirm(const std::vector<SweepPoint> &points, const SweepConfig &config) {
    std::vector<CliNRTree> trees;
    std::vector<uint64_t> seeds;
    for (const auto &p : points) {
        trees.push_back(p.spec.build(config.circuit_size()));
        seeds.push_back(p.seed);
    }
    auto results = simulate_trees(trees, seeds, config);
    std::vector<SweepPoint> out = points;
    for (size_t i = 0; i < out.size(); i++) {
        out[i].monte_carlo = results[i];
    }
    return out;
}

Concordance concordance(const std::vector<SweepPoint> &points) {
    Concordance c;
    std::vector<const SweepPoint *> both;
    for (const auto &p : points) {
        if (p.monte_carlo.has_value()) {
            both.push_back(&p);
        }
    }
    c.points = both.size();
    for (const SweepPoint *p : both) {
        double a = p->markov.p_log, b = p->monte_carlo->p_log;
        if (a <= 2 * b && b <= 2 * a) {
            c.within_factor_2++;
        }
    }
    for (size_t i = 0; i < both.size(); i++) {
        for (size_t j = i + 1; j < both.size(); j++) {
            c.pairs++;
            double dm = both[i]->markov.p_log - both[j]->markov.p_log;
            double ds = both[i]->monte_carlo->p_log - both[j]->monte_carlo->p_log;
            if ((dm > 0 && ds > 0) || (dm < 0 && ds < 0) || (dm == 0 && ds == 0)) {
                c.ordered_pairs++;
            }
        }
    }
    return c;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        fail(ErrorCode::InvalidArgument, "number formatting failed");
    }
    return std::string(buf, ptr);
}

std::string to_csv(const std::vector<SweepPoint> &points) {
    std::ostringstream out;
    out << "depth,t1,children,r,omega_markov,plog_markov,omega_mc,plog_mc,plog_mc_stddev,qubits,seed\n";
    for (const auto &p : points) {
        out << p.spec.depth << ',' << p.spec.t1 << ',' << p.spec.children << ',' << p.spec.r << ','
            << format_number(p.markov.omega_time) << ',' << format_number(p.markov.p_log) << ',';
        if (p.monte_carlo.has_value()) {
            out << format_number(p.monte_carlo->omega_time) << ',' << format_number(p.monte_carlo->p_log) << ','
                << format_number(p.monte_carlo->p_log_stderr);
        } else {
            out << ",,";
        }
        out << ',' << p.qubits << ',' << p.seed << '\n';
    }
    return out.str();
}

namespace {

nlohmann::ordered_json result_json(const EstimateResult &r) {
    nlohmann::ordered_json j;
    j["provenance"] = std::string(provenance_name(r.provenance));
    j["p_log"] = r.p_log;
    j["p_log_stddev"] = r.p_log_stderr;
    j["omega_time"] = r.omega_time;
    j["omega_time_stddev"] = r.omega_time_stderr;
    j["omega_space"] = r.omega_space;
    j["circuits"] = r.circuits;
    j["shots"] = r.shots;
    j["aborted"] = r.aborted;
    j["logical_errors"] = r.logical_errors;
    j["mean_restarts"] = r.mean_restarts;
    return j;
}

}  // namespace

std::string to_json(const std::vector<SweepPoint> &points) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &p : points) {
        nlohmann::ordered_json j;
        j["depth"] = p.spec.depth;
        j["t1"] = p.spec.t1;
        j["children"] = p.spec.children;
        j["r"] = p.spec.r;
        j["qubits"] = p.qubits;
        j["seed"] = p.seed;
        j["markov"] = result_json(p.markov);
        if (p.monte_carlo.has_value()) {
            j["monte_carlo"] = result_json(*p.monte_carlo);
        } else {
            j["monte_carlo"] = nullptr;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string to_json(const EstimateResult &result) {
    return result_json(result).dump(2) + "\n";
}

std::string to_csv(const EstimateResult &result) {
    std::ostringstream out;
    out << "provenance,p_log,p_log_stddev,omega_time,omega_time_stddev,omega_space,circuits,shots,aborted,"
           "logical_errors,mean_restarts\n";
    out << provenance_name(result.provenance) << ',' << format_number(result.p_log) << ','
        << format_number(result.p_log_stderr) << ',' << format_number(result.omega_time) << ','
        << format_number(result.omega_time_stderr) << ',' << format_number(result.omega_space) << ','
        << result.circuits << ',' << result.shots << ',' << result.aborted << ',' << result.logical_errors << ','
        << format_number(result.mean_restarts) << '\n';
    return out.str();
}

}  // namespace clinr
