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


#ifndef CLINR_PROGRAM_H
#define CLINR_PROGRAM_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clinr/circuit.h"
#include "clinr/pauli.h"
#include "clinr/stabilizer.h"
#include "clinr/tree.h"

namespace clinr {

enum class BlockKind : uint8_t {
    RSP,
    CHECK,
    RSI,
    PLAIN,
};
std::string_view block_kind_name(BlockKind kind);

/// The stabilizer group of one resource state. Local qubit i < n is the
/// unprimed half of Bell pair i, local n + i the primed half carrying the
/// vertex circuit; `rails` maps local qubits to physical qubits.
struct ResourceGroup {
    VertexAddress vertex;
    std::vector<uint32_t> rails;
    StabilizerGroupView group;
};

/// Teleportation-style injection. Measurement record layout per pair i:
/// entry 2i is M(input_i) (after H), entry 2i+1 is M(resource_i). A 1 in
/// entry 2i+1 calls for x_corrections[i], a 1 in entry 2i for
/// z_corrections[i]; both live on `output_rails`.
struct InjectionGadget {
    std::vector<Gate> gates;
    std::vector<uint32_t> output_rails;
    std::vector<PauliOperator> x_corrections;
    std::vector<PauliOperator> z_corrections;
};

struct Block {
    BlockKind kind = BlockKind::PLAIN;
    VertexAddress vertex;
    /// Physical gates. For CHECK blocks this is the gadget of the fixed
    /// stabilizer, or empty when stabilizers are drawn at run time.
    std::vector<Gate> gates;
    /// CHECK only.
    size_t restart_target = 0;
    uint32_t check_index = 0;
    size_t group = 0;
    std::optional<PauliOperator> fixed_stabilizer;
    /// RSI only.
    InjectionGadget injection;
};

struct CompileOptions {
    uint64_t seed = 0;
    /// Draw each check's stabilizer once at compile time instead of afresh on
    /// every execution.
    bool fixed_stabilizers = false;
};

/// A compiled noise-reduced implementation: a flat block list in execution
/// order where each CHECK names the RSP block to restart from on detection.
struct CliNRProgram {
    size_t n = 0;
    size_t total_qubits = 0;
    uint32_t depth = 0;
    uint64_t circuit_size = 0;
    CliNRTree tree;
    std::vector<Block> blocks;
    std::vector<ResourceGroup> groups;
    std::vector<uint32_t> input_rails;
    std::vector<uint32_t> output_rails;
    uint32_t check_ancilla = 0;
    /// Stabilizers of C|0...0>; output rail i is qubit i.
    StabilizerGroupView ideal_output;
    CompileOptions options;

    /// Counted operations of one pass without restarts, using the actual
    /// gadget size for fixed checks and the expected weight (3/4 of 2n) plus
    /// 3 for fresh checks.
    double nominal_gate_count() const;
};

/// Splits C into per-vertex contiguous subcircuits, indexed by vertex id.
std::vector<CliffordCircuit> partition(const CliffordCircuit &circuit, const CliNRTree &tree);

/// RX(anc), controlled-P from the ancilla onto each support qubit, H(anc),
/// M(anc). Local qubit q of the stabilizer acts on rails[q].
std::vector<Gate> build_check_gadget(const PauliOperator &stabilizer, std::span<const uint32_t> rails,
                                     uint32_t ancilla);
/// Same with the identity rail map.
std::vector<Gate> build_check_gadget(const PauliOperator &stabilizer, uint32_t ancilla);
/// Like build_check_gadget but accepts the identity, which yields the trivial
/// gadget RX, H, M. Uniform draws from a resource group include the identity.
std::vector<Gate> check_gadget_gates(const PauliOperator &stabilizer, std::span<const uint32_t> rails,
                                     uint32_t ancilla);

/// Bell measurements of input_i with resource_i, and the corrections that
/// move the outcome onto output_rails as images of the vertex circuit.
InjectionGadget build_injection_gadget(std::span<const uint32_t> input_rails, std::span<const uint32_t> resource_rails,
                                       std::span<const uint32_t> output_rails, const CliffordImages &images);

/// Counted operations of an injection: the physical gates plus one classical
/// correction per pair.
size_t injection_counted_ops(const InjectionGadget &gadget);

CliNRProgram compile(const CliffordCircuit &circuit, const CliNRTree &tree, const CompileOptions &options = {});

/// (2D + 1) n + 1.
size_t qubit_count(const CliNRTree &tree, size_t n);

/// Block-structured text listing the layout, blocks and restart edges.
std::string dump(const CliNRProgram &program);

struct NoiselessRun {
    /// Stabilizers of the final state restricted to the output rails.
    StabilizerGroupView output;
    /// Checks that fired (zero for a correct compilation).
    size_t detections = 0;
};
/// Exact tableau execution with random measurement outcomes and real Pauli
/// corrections.
NoiselessRun run_noiseless(const CliNRProgram &program, uint64_t seed);

}  // namespace clinr

#endif
