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

#include "clinr/circuit.h"

#include <algorithm>
#include <array>
#include <charconv>

#include "clinr/error.h"

namespace clinr {

namespace {

constexpr std::array<std::string_view, 12> kGateNames = {
    "H", "S", "S_DAG", "X", "Y", "Z", "CX", "CY", "CZ", "M", "R", "RX",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t k = 0;
    while (k < s.size()) {
        while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) {
            k++;
        }
        size_t start = k;
        while (k < s.size() && s[k] != ' ' && s[k] != '\t') {
            k++;
        }
        if (k > start) {
            out.push_back(s.substr(start, k - start));
        }
    }
    return out;
}

uint32_t parse_u32(std::string_view s, size_t line_no) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
    }
    return v;
}

// Single-qubit conjugation rules on (x, z, sign) with Hermitian Y.
inline void conj_h(PauliOperator &p, uint32_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        p.flip_sign();
    }
    p.set(q, z, x);
}

inline void conj_s(PauliOperator &p, uint32_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        p.flip_sign();
    }
    p.set_z(q, z ^ x);
}

inline void conj_s_dag(PauliOperator &p, uint32_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && !z) {
        p.flip_sign();
    }
    p.set_z(q, z ^ x);
}

inline void conj_cx(PauliOperator &p, uint32_t c, uint32_t t) {
    bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
    if (xc && zt && !(xt ^ zc)) {
        p.flip_sign();
    }
    p.set_x(t, xt ^ xc);
    p.set_z(c, zc ^ zt);
}

inline void conj_cz(PauliOperator &p, uint32_t a, uint32_t b) {
    bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
    if (xa && xb && (za ^ zb)) {
        p.flip_sign();
    }
    p.set_z(a, za ^ xb);
    p.set_z(b, zb ^ xa);
}

}  // namespace

std::string_view gate_name(GateKind kind) {
    return kGateNames[static_cast<size_t>(kind)];
}

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (size_t k = 0; k < kGateNames.size(); k++) {
        if (kGateNames[k] == name) {
            return static_cast<GateKind>(k);
        }
    }
    return std::nullopt;
}

void validate_gate(const Gate &gate, size_t num_qubits) {
    if (gate.q0 >= num_qubits || (is_two_qubit(gate.kind) && gate.q1 >= num_qubits)) {
        fail(ErrorCode::Dimension, std::string(gate_name(gate.kind)) + " target out of range for " +
                                       std::to_string(num_qubits) + " qubits");
    }
    if (is_two_qubit(gate.kind) && gate.q0 == gate.q1) {
        fail(ErrorCode::InvalidArgument, std::string(gate_name(gate.kind)) + " needs two distinct targets");
    }
}

size_t CliffordCircuit::size() const {
    return std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) {
        return is_unitary(g.kind);
    });
}

void CliffordCircuit::append(GateKind kind, uint32_t q0, uint32_t q1) {
    Gate g{kind, q0, is_two_qubit(kind) ? q1 : 0};
    validate_gate(g, num_qubits_);
    gates_.push_back(g);
}

void CliffordCircuit::append(const CliffordCircuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        fail(ErrorCode::Dimension, "cannot concatenate circuits of different widths");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void CliffordCircuit::truncate(size_t count) {
    if (count < gates_.size()) {
        gates_.resize(count);
    }
}

CliffordCircuit CliffordCircuit::slice(size_t begin, size_t end) const {
    if (begin > end || end > gates_.size()) {
        fail(ErrorCode::InvalidArgument, "slice out of range");
    }
    CliffordCircuit out(num_qubits_);
    out.gates_.assign(gates_.begin() + begin, gates_.begin() + end);
    return out;
}

bool CliffordCircuit::is_unitary_only() const {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate &g) {
        return is_unitary(g.kind);
    });
}

std::string to_text(const CliffordCircuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    for (const auto &g : circuit.gates()) {
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (is_two_qubit(g.kind)) {
            out += ' ';
            out += std::to_string(g.q1);
        }
        out += '\n';
    }
    return out;
}

CliffordCircuit parse_circuit(std::string_view text) {
    std::optional<CliffordCircuit> circuit;
    size_t line_no = 0;
    while (!text.empty()) {
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto words = split_ws(line);
        if (!circuit.has_value()) {
            if (words.size() != 2 || words[0] != "qubits") {
                fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'qubits N' header");
            }
            circuit.emplace(parse_u32(words[1], line_no));
            continue;
        }
        auto kind = gate_from_name(words[0]);
        if (!kind.has_value()) {
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unknown gate '" + std::string(words[0]) + "'");
        }
        size_t arity = is_two_qubit(*kind) ? 2 : 1;
        if (words.size() != arity + 1) {
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + std::string(words[0]) + " takes " +
                                       std::to_string(arity) + " target(s)");
        }
        uint32_t q0 = parse_u32(words[1], line_no);
        uint32_t q1 = arity == 2 ? parse_u32(words[2], line_no) : 0;
        circuit->append(*kind, q0, q1);
    }
    if (!circuit.has_value()) {
        fail(ErrorCode::Parse, "missing 'qubits N' header");
    }
    return std::move(*circuit);
}

void conjugate_by_gate(PauliOperator &p, const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            conj_h(p, g.q0);
            break;
        case GateKind::S:
            conj_s(p, g.q0);
            break;
        case GateKind::S_DAG:
            conj_s_dag(p, g.q0);
            break;
        case GateKind::X:
            if (p.z(g.q0)) {
                p.flip_sign();
            }
            break;
        case GateKind::Y:
            if (p.x(g.q0) ^ p.z(g.q0)) {
                p.flip_sign();
            }
            break;
        case GateKind::Z:
            if (p.x(g.q0)) {
                p.flip_sign();
            }
            break;
        case GateKind::CX:
            conj_cx(p, g.q0, g.q1);
            break;
        case GateKind::CY:
            // CY = S_t CX S_t^dagger; apply the rightmost factor first.
            conj_s_dag(p, g.q1);
            conj_cx(p, g.q0, g.q1);
            conj_s(p, g.q1);
            break;
        case GateKind::CZ:
            conj_cz(p, g.q0, g.q1);
            break;
        case GateKind::M:
        case GateKind::R:
        case GateKind::RX:
            fail(ErrorCode::UnsupportedGate, std::string(gate_name(g.kind)) + " is not unitary");
    }
}

void conjugate_by_inverse_gate(PauliOperator &p, const Gate &g) {
    switch (g.kind) {
        case GateKind::S:
            conj_s_dag(p, g.q0);
            break;
        case GateKind::S_DAG:
            conj_s(p, g.q0);
            break;
        case GateKind::CY:
            conj_s_dag(p, g.q1);
            conj_cx(p, g.q0, g.q1);
            conj_s(p, g.q1);
            break;
        default:
            // Every other gate in the set is self-inverse.
            conjugate_by_gate(p, g);
    }
}

PauliOperator conjugate_pauli(const CliffordCircuit &circuit, const PauliOperator &p) {
    if (p.num_qubits() != circuit.num_qubits()) {
        fail(ErrorCode::Dimension, "Pauli has " + std::to_string(p.num_qubits()) + " qubits but circuit has " +
                                       std::to_string(circuit.num_qubits()));
    }
    PauliOperator out = p;
    for (const auto &g : circuit.gates()) {
        conjugate_by_gate(out, g);
    }
    return out;
}

}  // namespace clinr
