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

#ifndef CLINR_CIRCUIT_H
#define CLINR_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clinr/pauli.h"

namespace clinr {

/// The operations a program may contain.
///
/// M is a destructive Z-basis measurement. R prepares |0>, RX prepares |+>.
/// CY is the controlled Y (equal to S_t CX S_t^dagger) and counts as a single
/// two-qubit gate.
enum class GateKind : uint8_t {
    H,
    S,
    S_DAG,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
    M,
    R,
    RX,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

constexpr bool is_two_qubit(GateKind kind) {
    return kind == GateKind::CX || kind == GateKind::CY || kind == GateKind::CZ;
}
constexpr bool is_unitary(GateKind kind) {
    return kind != GateKind::M && kind != GateKind::R && kind != GateKind::RX;
}
constexpr bool is_reset(GateKind kind) {
    return kind == GateKind::R || kind == GateKind::RX;
}

struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;

    bool operator==(const Gate &other) const {
        return kind == other.kind && q0 == other.q0 && (!is_two_qubit(kind) || q1 == other.q1);
    }
};

/// An ordered gate list over `num_qubits()` qubits.
class CliffordCircuit {
   public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(size_t num_qubits) : num_qubits_(num_qubits) {
    }

    size_t num_qubits() const {
        return num_qubits_;
    }
    /// Number of unitary gates; measurements and resets are not counted.
    size_t size() const;
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    /// Appends a validated gate (targets in range, distinct for two-qubit kinds).
    void append(GateKind kind, uint32_t q0, uint32_t q1 = 0);
    void append(const Gate &gate) {
        append(gate.kind, gate.q0, gate.q1);
    }
    void append(const CliffordCircuit &other);
    /// Keeps the first `count` gates.
    void truncate(size_t count);
    /// The gates [begin, end) as a circuit on the same qubits.
    CliffordCircuit slice(size_t begin, size_t end) const;
    bool is_unitary_only() const;

    bool operator==(const CliffordCircuit &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

void validate_gate(const Gate &gate, size_t num_qubits);

/// Text form: a `qubits N` header then one `GATE q0 [q1]` per line; `#` starts
/// a comment. `to_text` output parses back to an identical circuit and
/// reprints byte-for-byte.
std::string to_text(const CliffordCircuit &circuit);
CliffordCircuit parse_circuit(std::string_view text);

/// p <- g p g^dagger for one unitary gate, tracking the sign exactly.
void conjugate_by_gate(PauliOperator &p, const Gate &gate);
/// p <- g^dagger p g, i.e. conjugation by the inverse gate.
void conjugate_by_inverse_gate(PauliOperator &p, const Gate &gate);

/// U P U^dagger for the unitary U implemented by the circuit.
PauliOperator conjugate_pauli(const CliffordCircuit &circuit, const PauliOperator &p);

}  // namespace clinr

#endif
