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


#include "clinr/program.h"

#include <algorithm>

#include "clinr/error.h"
#include "clinr/random.h"
#include "clinr/tableau_simulator.h"

namespace clinr {

std::string_view block_kind_name(BlockKind kind) {
    switch (kind) {
        case BlockKind::RSP:
            return "RSP";
        case BlockKind::CHECK:
            return "CHECK";
        case BlockKind::RSI:
            return "RSI";
        case BlockKind::PLAIN:
            return "PLAIN";
    }
    return "?";
}

double CliNRProgram::nominal_gate_count() const {
    double total = 0;
    for (const auto &b : blocks) {
        switch (b.kind) {
            case BlockKind::CHECK:
                if (b.fixed_stabilizer.has_value()) {
                    total += static_cast<double>(b.gates.size());
                } else {
                    total += 1.5 * static_cast<double>(n) + 3;
                }
                break;
            case BlockKind::RSI:
                total += static_cast<double>(injection_counted_ops(b.injection));
                break;
            default:
                total += static_cast<double>(b.gates.size());
        }
    }
    return total;
}

std::vector<CliffordCircuit> partition(const CliffordCircuit &circuit, const CliNRTree &tree) {
    const auto &root = tree.vertex(tree.root());
    if (circuit.size() != root.s) {
        fail(ErrorCode::Partition, "circuit has " + std::to_string(circuit.size()) + " gates but s(root) = " +
                                       std::to_string(root.s));
    }
    if (!circuit.is_unitary_only()) {
        fail(ErrorCode::UnsupportedGate, "input circuit must be unitary");
    }
    tree.require_valid();
    std::vector<CliffordCircuit> parts(tree.num_vertices());
    parts[tree.root()] = circuit;
    // Every level is a contiguous split of the parent ranges.
    std::vector<std::pair<size_t, size_t>> range(tree.num_vertices());
    range[tree.root()] = {0, circuit.gates().size()};
    for (size_t id : tree.level_order()) {
        size_t pos = range[id].first;
        for (size_t c : tree.vertex(id).children) {
            uint64_t sz = tree.vertex(c).s;
            range[c] = {pos, pos + sz};
            pos += sz;
            parts[c] = circuit.slice(range[c].first, range[c].second);
        }
    }
    return parts;
}

std::vector<Gate> check_gadget_gates(const PauliOperator &stabilizer, std::span<const uint32_t> rails,
                                     uint32_t ancilla) {
    if (rails.size() != stabilizer.num_qubits()) {
        fail(ErrorCode::Layout, "rail map does not match the stabilizer width");
    }
    std::vector<Gate> gates;
    gates.reserve(stabilizer.weight() + 3);
    gates.push_back({GateKind::RX, ancilla});
    for (size_t q = 0; q < stabilizer.num_qubits(); q++) {
        bool x = stabilizer.x(q), z = stabilizer.z(q);
        if (!x && !z) {
            continue;
        }
        if (rails[q] == ancilla) {
            fail(ErrorCode::Layout, "stabilizer support overlaps the check ancilla");
        }
        GateKind k = x && z ? GateKind::CY : (x ? GateKind::CX : GateKind::CZ);
        gates.push_back({k, ancilla, rails[q]});
    }
    gates.push_back({GateKind::H, ancilla});
    gates.push_back({GateKind::M, ancilla});
    return gates;
}

std::vector<Gate> build_check_gadget(const PauliOperator &stabilizer, std::span<const uint32_t> rails,
                                     uint32_t ancilla) {
    if (stabilizer.is_identity()) {
        fail(ErrorCode::InvalidArgument, "cannot measure the identity");
    }
    return check_gadget_gates(stabilizer, rails, ancilla);
}

std::vector<Gate> build_check_gadget(const PauliOperator &stabilizer, uint32_t ancilla) {
    std::vector<uint32_t> rails(stabilizer.num_qubits());
    for (size_t q = 0; q < rails.size(); q++) {
        rails[q] = static_cast<uint32_t>(q);
    }
    return build_check_gadget(stabilizer, rails, ancilla);
}

InjectionGadget build_injection_gadget(std::span<const uint32_t> input_rails, std::span<const uint32_t> resource_rails,
                                       std::span<const uint32_t> output_rails, const CliffordImages &images) {
    size_t n = input_rails.size();
    if (resource_rails.size() != n || output_rails.size() != n || images.x_images.size() != n) {
        fail(ErrorCode::Layout, "injection rails must all have length n");
    }
    std::vector<uint32_t> all(input_rails.begin(), input_rails.end());
    all.insert(all.end(), resource_rails.begin(), resource_rails.end());
    all.insert(all.end(), output_rails.begin(), output_rails.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        fail(ErrorCode::Layout, "injection rails must be disjoint");
    }
    InjectionGadget out;
    out.output_rails.assign(output_rails.begin(), output_rails.end());
    for (size_t i = 0; i < n; i++) {
        out.gates.push_back({GateKind::CX, input_rails[i], resource_rails[i]});
        out.gates.push_back({GateKind::H, input_rails[i]});
        out.gates.push_back({GateKind::M, input_rails[i]});
        out.gates.push_back({GateKind::M, resource_rails[i]});
    }
    out.x_corrections = images.x_images;
    out.z_corrections = images.z_images;
    return out;
}

size_t injection_counted_ops(const InjectionGadget &gadget) {
    return gadget.gates.size() + gadget.output_rails.size();
}

size_t qubit_count(const CliNRTree &tree, size_t n) {
    return (2 * size_t{tree.depth()} + 1) * n + 1;
}

namespace {

class Compiler {
   public:
    Compiler(const CliffordCircuit &circuit, const CliNRTree &tree, const CompileOptions &options)
        : parts_(partition(circuit, tree)), tree_(tree), options_(options) {
        n_ = circuit.num_qubits();
        rail_limit_ = (2 * size_t{tree.depth()} + 1) * n_;
        used_.assign(rail_limit_, false);
    }

    CliNRProgram run(const CliffordCircuit &circuit) {
        program_.n = n_;
        program_.total_qubits = rail_limit_ + 1;
        program_.depth = tree_.depth();
        program_.circuit_size = circuit.size();
        program_.tree = tree_;
        program_.check_ancilla = static_cast<uint32_t>(rail_limit_);
        program_.ideal_output = output_stabilizers(circuit);
        program_.options = options_;
        program_.input_rails = alloc();
        if (tree_.vertex(tree_.root()).children.empty()) {
            Block plain;
            plain.kind = BlockKind::PLAIN;
            for (const auto &g : circuit.gates()) {
                plain.gates.push_back(remap(g, program_.input_rails));
            }
            program_.blocks.push_back(std::move(plain));
            program_.output_rails = program_.input_rails;
        } else {
            program_.output_rails = emit_children(tree_.root(), program_.input_rails);
        }
        return std::move(program_);
    }

   private:
    std::vector<uint32_t> alloc() {
        std::vector<uint32_t> rails;
        for (size_t q = 0; q < rail_limit_ && rails.size() < n_; q++) {
            if (!used_[q]) {
                used_[q] = true;
                rails.push_back(static_cast<uint32_t>(q));
            }
        }
        if (rails.size() != n_) {
            fail(ErrorCode::Layout, "ran out of rails");
        }
        return rails;
    }

    void release(const std::vector<uint32_t> &rails) {
        for (uint32_t q : rails) {
            used_[q] = false;
        }
    }

    static Gate remap(const Gate &g, const std::vector<uint32_t> &rails) {
        return Gate{g.kind, rails[g.q0], is_two_qubit(g.kind) ? rails[g.q1] : 0};
    }

    std::vector<uint32_t> emit_children(size_t id, std::vector<uint32_t> data) {
        for (size_t c : tree_.vertex(id).children) {
            data = emit_clinr1(c, data);
        }
        return data;
    }

    std::vector<uint32_t> emit_clinr1(size_t id, const std::vector<uint32_t> &data) {
        const auto &v = tree_.vertex(id);
        auto a = alloc();
        auto b = alloc();

        size_t rsp_index = program_.blocks.size();
        Block rsp;
        rsp.kind = BlockKind::RSP;
        rsp.vertex = v.address;
        for (size_t i = 0; i < n_; i++) {
            rsp.gates.push_back({GateKind::RX, a[i]});
            rsp.gates.push_back({GateKind::R, b[i]});
            rsp.gates.push_back({GateKind::CX, a[i], b[i]});
        }
        bool leaf = v.children.empty();
        if (leaf) {
            for (const auto &g : parts_[id].gates()) {
                rsp.gates.push_back(remap(g, b));
            }
        }
        program_.blocks.push_back(std::move(rsp));
        std::vector<uint32_t> out = leaf ? b : emit_children(id, b);

        CliffordImages images = clifford_images(parts_[id]);
        ResourceGroup group;
        group.vertex = v.address;
        group.rails = a;
        group.rails.insert(group.rails.end(), out.begin(), out.end());
        group.group = resource_stabilizers(images);
        size_t group_index = program_.groups.size();
        program_.groups.push_back(std::move(group));

        for (uint32_t k = 0; k < v.r; k++) {
            Block check;
            check.kind = BlockKind::CHECK;
            check.vertex = v.address;
            check.restart_target = rsp_index;
            check.check_index = k;
            check.group = group_index;
            if (options_.fixed_stabilizers) {
                const auto &g = program_.groups[group_index];
                PauliOperator stab = random_group_element(g.group, derive_seed(options_.seed, {group_index, k}));
                check.gates = check_gadget_gates(stab, g.rails, program_.check_ancilla);
                check.fixed_stabilizer = std::move(stab);
            }
            program_.blocks.push_back(std::move(check));
        }

        Block rsi;
        rsi.kind = BlockKind::RSI;
        rsi.vertex = v.address;
        rsi.injection = build_injection_gadget(data, a, out, images);
        rsi.gates = rsi.injection.gates;
        program_.blocks.push_back(std::move(rsi));

        release(data);
        release(a);
        return out;
    }

    std::vector<CliffordCircuit> parts_;
    const CliNRTree &tree_;
    CompileOptions options_;
    size_t n_ = 0;
    size_t rail_limit_ = 0;
    std::vector<bool> used_;
    CliNRProgram program_;
};

std::string rails_str(const std::vector<uint32_t> &rails) {
    std::string out;
    for (size_t k = 0; k < rails.size(); k++) {
        out += (k ? " " : "") + std::to_string(rails[k]);
    }
    return out;
}

}  // namespace

CliNRProgram compile(const CliffordCircuit &circuit, const CliNRTree &tree, const CompileOptions &options) {
    if (circuit.num_qubits() == 0) {
        fail(ErrorCode::InvalidArgument, "circuit has no qubits");
    }
    Compiler compiler(circuit, tree, options);
    return compiler.run(circuit);
}

std::string dump(const CliNRProgram &program) {
    std::string out;
    out += "program n=" + std::to_string(program.n) + " qubits=" + std::to_string(program.total_qubits) +
           " depth=" + std::to_string(program.depth) + " s=" + std::to_string(program.circuit_size) +
           " blocks=" + std::to_string(program.blocks.size()) + " seed=" + std::to_string(program.options.seed) +
           " stabilizers=" + (program.options.fixed_stabilizers ? "fixed" : "fresh") + "\n";
    out += "input_rails " + rails_str(program.input_rails) + "\n";
    out += "output_rails " + rails_str(program.output_rails) + "\n";
    out += "check_ancilla " + std::to_string(program.check_ancilla) + "\n";
    for (size_t k = 0; k < program.groups.size(); k++) {
        const auto &g = program.groups[k];
        out += "group " + std::to_string(k) + " vertex=" + g.vertex.str() + " rails " + rails_str(g.rails) + "\n";
        for (const auto &gen : g.group.generators) {
            out += "  " + gen.str() + "\n";
        }
    }
    for (size_t k = 0; k < program.blocks.size(); k++) {
        const auto &b = program.blocks[k];
        out += "block " + std::to_string(k) + " " + std::string(block_kind_name(b.kind)) + " vertex=" + b.vertex.str();
        if (b.kind == BlockKind::CHECK) {
            out += " k=" + std::to_string(b.check_index) + " restart=" + std::to_string(b.restart_target) +
                   " group=" + std::to_string(b.group);
            if (b.fixed_stabilizer.has_value()) {
                out += " stabilizer=" + b.fixed_stabilizer->str();
            }
        }
        out += " gates=" + std::to_string(b.gates.size()) + "\n";
        for (const auto &g : b.gates) {
            out += "  " + std::string(gate_name(g.kind)) + " " + std::to_string(g.q0);
            if (is_two_qubit(g.kind)) {
                out += " " + std::to_string(g.q1);
            }
            out += "\n";
        }
        if (b.kind == BlockKind::RSI) {
            out += "  output_rails " + rails_str(b.injection.output_rails) + "\n";
            for (size_t i = 0; i < b.injection.x_corrections.size(); i++) {
                out += "  correct " + std::to_string(i) + " x->" + b.injection.x_corrections[i].str() +
                       " z->" + b.injection.z_corrections[i].str() + "\n";
            }
        }
    }
    return out;
}

NoiselessRun run_noiseless(const CliNRProgram &program, uint64_t seed) {
    TableauSimulator sim(program.total_qubits, derive_seed(seed, {0}));
    Rng draw_rng(derive_seed(seed, {1}));
    NoiselessRun result;
    for (const auto &b : program.blocks) {
        switch (b.kind) {
            case BlockKind::RSP:
            case BlockKind::PLAIN:
                for (const auto &g : b.gates) {
                    sim.apply(g);
                }
                break;
            case BlockKind::CHECK: {
                const auto &grp = program.groups[b.group];
                PauliOperator stab(2 * program.n);
                std::vector<Gate> gadget;
                if (b.fixed_stabilizer.has_value()) {
                    stab = *b.fixed_stabilizer;
                    gadget = b.gates;
                } else {
                    stab = random_group_element(grp.group, draw_rng);
                    gadget = check_gadget_gates(stab, grp.rails, program.check_ancilla);
                }
                bool outcome = false;
                for (const auto &g : gadget) {
                    if (g.kind == GateKind::M) {
                        outcome = sim.measure(g.q0);
                    } else {
                        sim.apply(g);
                    }
                }
                result.detections += outcome != stab.sign();
                break;
            }
            case BlockKind::RSI: {
                std::vector<bool> record;
                for (const auto &g : b.gates) {
                    if (g.kind == GateKind::M) {
                        record.push_back(sim.measure(g.q0));
                    } else {
                        sim.apply(g);
                    }
                }
                const auto &inj = b.injection;
                for (size_t i = 0; i < inj.output_rails.size(); i++) {
                    if (record[2 * i + 1]) {
                        sim.apply_pauli(inj.x_corrections[i].embedded(program.total_qubits, inj.output_rails));
                    }
                    if (record[2 * i]) {
                        sim.apply_pauli(inj.z_corrections[i].embedded(program.total_qubits, inj.output_rails));
                    }
                }
                break;
            }
        }
    }
    result.output = supported_subgroup(sim.stabilizers(), program.output_rails);
    return result;
}

}  // namespace clinr
