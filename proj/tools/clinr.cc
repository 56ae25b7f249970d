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


// Command-line front end: tree construction, compilation, simulation,
// bounds, Markov estimates and parameter sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clinr/bounds.h"
#include "clinr/error.h"
#include "clinr/markov.h"
#include "clinr/program.h"
#include "clinr/stabilizer.h"
#include "clinr/sweep.h"
#include "clinr/tree.h"
#include "json.hpp"

using namespace clinr;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

struct GlobalOptions {
    uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::string config;
};

// Options shared by the commands that run a noise model on a tree.
struct RunOptions {
    uint64_t n = 0;
    uint64_t s = 0;
    double p = 1e-3;
    bool idle = false;
    std::string tree = "binary2";
    std::string circuit;
    uint64_t shots = 80;
    uint64_t circuits = 50;
    uint64_t restart_cap = 10000;
    unsigned threads = 0;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Usage, "cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const GlobalOptions &g, const std::string &text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out) {
        fail(ErrorCode::Usage, "cannot write '" + g.out + "'");
    }
    out << text;
}

bool json_output(const GlobalOptions &g) {
    return g.format == "json";
}

// A tree argument is a path to a tree file or a preset name.
CliNRTree resolve_tree(const std::string &arg, uint64_t s) {
    if (std::filesystem::is_regular_file(arg)) {
        return tree_from_json(read_file(arg));
    }
    return preset_tree(arg, s);
}

SweepConfig run_config(const GlobalOptions &g, const RunOptions &r) {
    SweepConfig c;
    c.n = r.n;
    c.s = r.s;
    c.p = r.p;
    c.idle = r.idle;
    c.shots = r.shots;
    c.circuits = r.circuits;
    c.restart_cap = r.restart_cap;
    c.threads = r.threads;
    c.seed = g.seed;
    if (!g.config.empty()) {
        c = parse_config(read_file(g.config), c);
    }
    if (c.n == 0) {
        fail(ErrorCode::Usage, "--n is required");
    }
    return c;
}

void add_run_options(CLI::App *cmd, RunOptions &r, bool simulation) {
    cmd->add_option("--n", r.n, "Number of data qubits");
    cmd->add_option("--s", r.s, "Circuit size (default n^2)");
    cmd->add_option("--p", r.p, "Two-qubit error rate; single-qubit rates are p/10, idle p/1000");
    cmd->add_flag("--idle", r.idle, "Enable idle noise");
    cmd->add_option("--tree", r.tree, "Tree file or preset (binary2, clinr1:<r>, direct)");
    if (simulation) {
        cmd->add_option("--circuit", r.circuit, "Circuit file; default is random Clifford circuits");
        cmd->add_option("--shots", r.shots, "Shots per circuit");
        cmd->add_option("--circuits", r.circuits, "Random circuits to average over");
        cmd->add_option("--restart-cap", r.restart_cap, "Restarts per preparation before a shot is aborted");
        cmd->add_option("--threads", r.threads, "Worker threads (0 = all cores)");
    }
}

std::string kv_output(const GlobalOptions &g, const nlohmann::ordered_json &obj) {
    if (json_output(g)) {
        return obj.dump(2) + "\n";
    }
    std::string out = "quantity,value\n";
    for (const auto &[key, value] : obj.items()) {
        std::string v;
        if (value.is_number_float()) {
            v = format_number(value.get<double>());
        } else if (value.is_string()) {
            v = value.get<std::string>();
        } else {
            v = value.dump();
        }
        out += key + "," + v + "\n";
    }
    return out;
}

int cmd_tree_build(const GlobalOptions &g, const std::string &preset, uint64_t s, double p, uint64_t n,
                   uint32_t bounded_depth, const std::vector<uint32_t> &uniform, uint32_t random_depth,
                   uint32_t max_children, uint32_t max_r) {
    if (s == 0) {
        fail(ErrorCode::Usage, "--s is required");
    }
    CliNRTree tree;
    if (bounded_depth > 0) {
        tree = bounded_tree(s, p, n, bounded_depth);
    } else if (!uniform.empty()) {
        if (uniform.size() != 3) {
            fail(ErrorCode::Usage, "--uniform takes t1 children r");
        }
        tree = uniform_tree(s, uniform[0], uniform[1], uniform[2]);
    } else if (random_depth > 0) {
        Rng rng(g.seed);
        tree = random_tree(s, random_depth, max_children, max_r, rng);
    } else {
        tree = preset_tree(preset, s);
    }
    emit(g, to_json(tree));
    return 0;
}

int cmd_tree_validate(const GlobalOptions &g, const std::string &path) {
    CliNRTree tree = tree_from_json(read_file(path));
    auto issues = tree.validate();
    std::string text;
    for (const auto &issue : issues) {
        text += issue + "\n";
    }
    if (issues.empty()) {
        emit(g, "valid\n");
        return 0;
    }
    emit(g, text);
    std::cerr << "clinr: partition error: tree is invalid\n";
    return kExitError;
}

int cmd_compile(const GlobalOptions &g, const RunOptions &r, bool dump_program) {
    CliffordCircuit circuit;
    if (!r.circuit.empty()) {
        circuit = parse_circuit(read_file(r.circuit));
    } else {
        if (r.n == 0) {
            fail(ErrorCode::Usage, "--n or --circuit is required");
        }
        circuit = random_clifford(r.n, r.s ? r.s : r.n * r.n, derive_seed(g.seed, {0, 0}));
    }
    CliNRTree tree = resolve_tree(r.tree, circuit.size());
    CompileOptions opts;
    opts.seed = g.seed;
    CliNRProgram program = compile(circuit, tree, opts);
    if (dump_program) {
        emit(g, dump(program));
        return 0;
    }
    nlohmann::ordered_json j;
    j["n"] = program.n;
    j["s"] = program.circuit_size;
    j["depth"] = program.depth;
    j["qubits"] = program.total_qubits;
    j["blocks"] = program.blocks.size();
    j["nominal_gates"] = program.nominal_gate_count();
    j["omega_space"] = static_cast<double>(program.total_qubits) / static_cast<double>(program.n);
    emit(g, kv_output(g, j));
    return 0;
}

int cmd_simulate(const GlobalOptions &g, const RunOptions &r) {
    EstimateResult result;
    if (!r.circuit.empty()) {
        CliffordCircuit circuit = parse_circuit(read_file(r.circuit));
        SweepConfig c = run_config(g, [&] {
            RunOptions copy = r;
            copy.n = circuit.num_qubits();
            copy.s = circuit.size();
            return copy;
        }());
        CompileOptions copts;
        copts.seed = derive_seed(c.seed, {0});
        CliNRProgram program = compile(circuit, resolve_tree(r.tree, circuit.size()), copts);
        EstimateOptions eopts;
        eopts.shots = c.shots;
        eopts.seed = derive_seed(c.seed, {1});
        eopts.threads = c.threads;
        eopts.sim.restart_cap = c.restart_cap;
        result = estimate(program, c.noise(), eopts);
    } else {
        SweepConfig c = run_config(g, r);
        result = simulate_tree(resolve_tree(r.tree, c.circuit_size()), c);
    }
    emit(g, json_output(g) ? to_json(result) : to_csv(result));
    return 0;
}

int cmd_markov(const GlobalOptions &g, const RunOptions &r, bool literal_cost, bool printed_exponent) {
    SweepConfig c = run_config(g, r);
    MarkovOptions opts;
    opts.literal_restart_cost = literal_cost;
    opts.check_exponent = printed_exponent ? CheckExponent::Printed : CheckExponent::GateCount;
    EstimateResult result = estimate_tree(resolve_tree(r.tree, c.circuit_size()), c.n, c.noise(), opts);
    emit(g, json_output(g) ? to_json(result) : to_csv(result));
    return 0;
}

int cmd_bound(const GlobalOptions &g, uint64_t s, double p, uint64_t n, uint32_t depth, const std::string &tree_arg) {
    if (s == 0 || n == 0) {
        fail(ErrorCode::Usage, "--s and --n are required");
    }
    TheoremParameters t = theorem_parameters(s, p, n);
    uint32_t d = depth ? depth : t.depth;
    Bound err = bounded_error_bound(s, p, n, d);
    nlohmann::ordered_json j;
    j["depth"] = t.depth;
    j["qubits"] = t.qubit_cap;
    j["omega_cap"] = t.omega_cap;
    j["bounded_depth"] = d;
    j["bounded_error_bound"] = err.value;
    j["bounded_precondition"] = err.precondition_ok ? "holds" : "violated";
    j["bounded_gate_bound"] = bounded_gate_bound(d);
    j["alpha"] = alpha(n);
    j["alpha_without_n"] = alpha(n, {}, false);
    if (!tree_arg.empty()) {
        RecursiveBound rb = recursive_bounds(resolve_tree(tree_arg, s), p, n);
        j["recursive_error_bound"] = rb.error.value;
        j["recursive_error_vacuous"] = rb.error.vacuous ? "yes" : "no";
        j["recursive_gate_bound"] = rb.gate.value;
        j["recursive_gate_vacuous"] = rb.gate.vacuous ? "yes" : "no";
    }
    emit(g, kv_output(g, j));
    return 0;
}

std::string points_output(const GlobalOptions &g, const std::vector<SweepPoint> &points) {
    return json_output(g) ? to_json(points) : to_csv(points);
}

std::vector<TreeSpec> parse_specs(const std::string &text) {
    std::vector<TreeSpec> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        TreeSpec spec;
        char c1 = 0, c2 = 0, c3 = 0;
        std::stringstream is(item);
        if (!(is >> spec.depth >> c1 >> spec.t1 >> c2 >> spec.children >> c3 >> spec.r) || c1 != ':' || c2 != ':' ||
            c3 != ':' || !is.eof()) {
            fail(ErrorCode::Usage, "bad tree spec '" + item + "'; expected depth:t1:children:r");
        }
        out.push_back(spec);
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"clinr: recursive Clifford noise reduction toolkit"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--config", g.config, "key = value file; its values override flags");

    auto *tree_cmd = app.add_subcommand("tree", "Build, validate or show a CliNR tree");
    tree_cmd->require_subcommand(1);
    auto *build = tree_cmd->add_subcommand("build", "Print a tree file");
    std::string preset = "binary2";
    uint64_t tree_s = 0, tree_n = 1;
    double tree_p = 1e-3;
    uint32_t bounded_depth = 0, random_depth = 0, max_children = 3, max_r = 3;
    std::vector<uint32_t> uniform;
    build->add_option("--s", tree_s, "Circuit size")->required();
    build->add_option("--preset", preset, "binary2, clinr1:<r> or direct");
    build->add_option("--bounded", bounded_depth, "Uniformly bounded tree of this depth (uses --p, --n)");
    build->add_option("--p", tree_p, "Error rate for --bounded");
    build->add_option("--n", tree_n, "Qubits for --bounded");
    build->add_option("--uniform", uniform, "t1 children r")->expected(3);
    build->add_option("--random", random_depth, "Random tree with at most this depth (uses --seed)");
    build->add_option("--max-children", max_children, "Children bound for --random");
    build->add_option("--max-r", max_r, "Check-count bound for --random");
    auto *validate = tree_cmd->add_subcommand("validate", "Check a tree file");
    std::string tree_path;
    validate->add_option("file", tree_path, "Tree file")->required();
    auto *show = tree_cmd->add_subcommand("show", "Print a tree file as an indented outline");
    show->add_option("file", tree_path, "Tree file")->required();

    RunOptions run;
    bool dump_program = false;
    auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit and report its resources");
    add_run_options(compile_cmd, run, false);
    compile_cmd->add_option("--circuit", run.circuit, "Circuit file; default is a random Clifford circuit");
    compile_cmd->add_flag("--dump", dump_program, "Print the full program");

    auto *simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate for one tree");
    add_run_options(simulate_cmd, run, true);

    bool literal_cost = false, printed_exponent = false;
    auto *markov_cmd = app.add_subcommand("markov", "Markov-model estimate for one tree");
    add_run_options(markov_cmd, run, false);
    markov_cmd->add_flag("--literal-restart-cost", literal_cost, "Charge g_P per completed check on restart");
    markov_cmd->add_flag("--printed-check-exponent", printed_exponent, "Use 2n/3 in the check error rates");

    uint64_t bound_s = 0, bound_n = 0;
    double bound_p = 1e-3;
    uint32_t bound_depth = 0;
    std::string bound_tree;
    auto *bound_cmd = app.add_subcommand("bound", "Analytic bounds and parameter choices");
    bound_cmd->add_option("--s", bound_s, "Circuit size")->required();
    bound_cmd->add_option("--p", bound_p, "Error rate");
    bound_cmd->add_option("--n", bound_n, "Number of qubits")->required();
    bound_cmd->add_option("--depth", bound_depth, "Depth for the uniformly bounded bounds (default: chosen)");
    bound_cmd->add_option("--tree", bound_tree, "Also evaluate the recursive bounds for this tree");

    SweepConfig sweep_flags;
    bool all_points = false;
    std::string specs;
    auto add_sweep_options = [&](CLI::App *cmd) {
        cmd->add_option("--n", sweep_flags.n, "Number of data qubits")->capture_default_str();
        cmd->add_option("--s", sweep_flags.s, "Circuit size (default n^2)");
        cmd->add_option("--p", sweep_flags.p, "Two-qubit error rate")->capture_default_str();
        cmd->add_flag("--idle", sweep_flags.idle, "Enable idle noise");
        cmd->add_option("--omega-cap", sweep_flags.omega_cap, "Drop points above this overhead")->capture_default_str();
        cmd->add_option("--threads", sweep_flags.threads, "Worker threads (0 = all cores)");
    };
    auto add_confirm_options = [&](CLI::App *cmd) {
        add_sweep_options(cmd);
        cmd->add_option("--confirm-omega-max", sweep_flags.confirm_omega_max, "Simulate frontier points up to this overhead");
        cmd->add_option("--shots", sweep_flags.shots, "Shots per circuit")->capture_default_str();
        cmd->add_option("--circuits", sweep_flags.circuits, "Circuits per point")->capture_default_str();
    };
    auto *sweep_cmd = app.add_subcommand("sweep", "Markov grid search; prints the frontier of each depth");
    add_sweep_options(sweep_cmd);
    sweep_cmd->add_flag("--all", all_points, "Print every grid point instead of the frontiers");
    auto *confirm_cmd = app.add_subcommand("confirm", "Sweep, then simulate the frontier points");
    add_confirm_options(confirm_cmd);
    auto *compare_cmd = app.add_subcommand("compare", "Markov and Monte Carlo side by side with agreement statistics");
    add_confirm_options(compare_cmd);
    compare_cmd->add_option("--specs", specs, "Trees to compare as depth:t1:children:r,...; default: sweep frontier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*tree_cmd) {
            if (*build) {
                return cmd_tree_build(g, preset, tree_s, tree_p, tree_n, bounded_depth, uniform, random_depth,
                                      max_children, max_r);
            }
            if (*validate) {
                return cmd_tree_validate(g, tree_path);
            }
            emit(g, describe(tree_from_json(read_file(tree_path))));
            return 0;
        }
        if (*compile_cmd) {
            return cmd_compile(g, run, dump_program);
        }
        if (*simulate_cmd) {
            return cmd_simulate(g, run);
        }
        if (*markov_cmd) {
            return cmd_markov(g, run, literal_cost, printed_exponent);
        }
        if (*bound_cmd) {
            return cmd_bound(g, bound_s, bound_p, bound_n, bound_depth, bound_tree);
        }
        sweep_flags.seed = g.seed;
        SweepConfig config = g.config.empty() ? sweep_flags : parse_config(read_file(g.config), sweep_flags);
        config.validate();
        if (*sweep_cmd) {
            auto points = grid(config);
            emit(g, points_output(g, all_points ? points : frontier_by_depth(points)));
            return 0;
        }
        std::vector<SweepPoint> targets;
        if (*compare_cmd && !specs.empty()) {
            for (const auto &spec : parse_specs(specs)) {
                targets.push_back(make_point(spec, config));
            }
        } else {
            targets = confirmation_targets(grid(config), config);
        }
        auto confirmed = confirm(targets, config);
        emit(g, points_output(g, confirmed));
        if (*compare_cmd) {
            Concordance c = concordance(confirmed);
            std::cerr << "within factor 2: " << c.within_factor_2 << "/" << c.points << "\n";
            std::cerr << "ordered pairs: " << c.ordered_pairs << "/" << c.pairs << "\n";
        }
        return 0;
    } catch (const ClinrError &e) {
        std::cerr << "clinr: " << e.what() << "\n";
        return e.code() == ErrorCode::Usage ? kExitUsage : kExitError;
    } catch (const std::exception &e) {
        std::cerr << "clinr: " << e.what() << "\n";
        return kExitError;
    }
}
