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

#include "clinr/stabilizer.h"

#include <algorithm>
#include <optional>

#include "clinr/error.h"

namespace clinr {

namespace {

// Column c of the interleaved (x0, z0, x1, z1, ...) bit matrix.
bool column_bit(const PauliOperator &p, size_t c) {
    return (c & 1) ? p.z(c >> 1) : p.x(c >> 1);
}

void multiply_commuting(PauliOperator &target, const PauliOperator &rhs) {
    uint8_t log_i = target.multiply_inplace(rhs);
    if (log_i & 1) {
        fail(ErrorCode::InvalidArgument, "stabilizer generators do not commute");
    }
}

// Eliminates over the given columns in order. Returns the rows used as pivots
// (row index per pivot) and leaves `rows` partially reduced.
std::vector<size_t> eliminate(std::vector<PauliOperator> &rows, std::span<const size_t> columns, bool full) {
    std::vector<size_t> pivots;
    std::vector<bool> used(rows.size(), false);
    for (size_t c : columns) {
        std::optional<size_t> pivot;
        for (size_t r = 0; r < rows.size(); r++) {
            if (!used[r] && column_bit(rows[r], c)) {
                pivot = r;
                break;
            }
        }
        if (!pivot.has_value()) {
            continue;
        }
        used[*pivot] = true;
        pivots.push_back(*pivot);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != *pivot && (full || !used[r]) && column_bit(rows[r], c)) {
                multiply_commuting(rows[r], rows[*pivot]);
            }
        }
    }
    return pivots;
}

std::vector<size_t> all_columns(size_t num_qubits) {
    std::vector<size_t> cols(2 * num_qubits);
    for (size_t c = 0; c < cols.size(); c++) {
        cols[c] = c;
    }
    return cols;
}

void randomize_on(PauliOperator &p, size_t begin, size_t end, Rng &rng) {
    for (size_t q = begin; q < end; q++) {
        uint64_t r = rng();
        p.set(q, r & 1, (r >> 1) & 1);
    }
}

// Appends gates that map (p1, p2) -> (+-X_k, +-Z_k), acting on qubits >= k.
void reduce_pair(PauliOperator &p1, PauliOperator &p2, uint32_t k, CliffordCircuit &out) {
    uint32_t n = static_cast<uint32_t>(p1.num_qubits());
    auto apply = [&](GateKind kind, uint32_t a, uint32_t b = 0) {
        Gate g{kind, a, b};
        out.append(g);
        conjugate_by_gate(p1, g);
        conjugate_by_gate(p2, g);
    };
    auto clear_z = [&](const PauliOperator &p) {
        for (uint32_t j = k; j < n; j++) {
            if (p.z(j)) {
                apply(p.x(j) ? GateKind::S : GateKind::H, j);
            }
        }
    };

    clear_z(p1);
    std::vector<uint32_t> support;
    for (uint32_t j = k; j < n; j++) {
        if (p1.x(j)) {
            support.push_back(j);
        }
    }
    uint32_t pivot = std::find(support.begin(), support.end(), k) != support.end() ? k : support.front();
    for (uint32_t j : support) {
        if (j != pivot) {
            apply(GateKind::CX, pivot, j);
        }
    }
    if (pivot != k) {
        apply(GateKind::CX, pivot, k);
        apply(GateKind::CX, k, pivot);
        apply(GateKind::CX, pivot, k);
    }

    // p1 is now +-X_k and p2 anticommutes with it. Rotate to Z_k so that the
    // remaining reductions (diagonal on k, CX controlled by k) leave p1 alone.
    apply(GateKind::H, k);
    clear_z(p2);
    for (uint32_t j = k + 1; j < n; j++) {
        if (p2.x(j)) {
            apply(GateKind::CX, k, j);
        }
    }
    apply(GateKind::H, k);
}

}  // namespace

bool StabilizerGroupView::mutually_commuting() const {
    for (size_t a = 0; a < generators.size(); a++) {
        for (size_t b = a + 1; b < generators.size(); b++) {
            if (!generators[a].commutes(generators[b])) {
                return false;
            }
        }
    }
    return true;
}

size_t StabilizerGroupView::rank() const {
    std::vector<PauliOperator> rows = generators;
    for (auto &r : rows) {
        r.set_sign(false);
    }
    // Bit-only elimination: phases are irrelevant for rank, so use XOR.
    size_t rank = 0;
    size_t nq = num_qubits();
    std::vector<bool> used(rows.size(), false);
    for (size_t c = 0; c < 2 * nq; c++) {
        for (size_t r = 0; r < rows.size(); r++) {
            if (!used[r] && column_bit(rows[r], c)) {
                used[r] = true;
                rank++;
                for (size_t o = 0; o < rows.size(); o++) {
                    if (o != r && column_bit(rows[o], c)) {
                        rows[o].xor_bits(rows[r]);
                    }
                }
                break;
            }
        }
    }
    return rank;
}

StabilizerGroupView StabilizerGroupView::canonical() const {
    std::vector<PauliOperator> rows = generators;
    auto cols = all_columns(num_qubits());
    auto pivots = eliminate(rows, cols, true);
    StabilizerGroupView out;
    for (size_t r : pivots) {
        out.generators.push_back(rows[r]);
    }
    for (size_t r = 0; r < rows.size(); r++) {
        if (std::find(pivots.begin(), pivots.end(), r) == pivots.end() && rows[r].sign()) {
            fail(ErrorCode::InvalidArgument, "generators imply -I is in the group");
        }
    }
    return out;
}

bool StabilizerGroupView::contains(const PauliOperator &p) const {
    if (p.num_qubits() != num_qubits() && !generators.empty()) {
        fail(ErrorCode::Dimension, "Pauli does not match the group's qubit count");
    }
    StabilizerGroupView canon = canonical();
    PauliOperator residue = p;
    for (const auto &row : canon.generators) {
        size_t c = 0;
        while (!column_bit(row, c)) {
            c++;
        }
        if (column_bit(residue, c)) {
            multiply_commuting(residue, row);
        }
    }
    return residue.is_identity() && !residue.sign();
}

CliffordImages clifford_images(const CliffordCircuit &circuit) {
    size_t n = circuit.num_qubits();
    CliffordImages images;
    images.x_images.reserve(n);
    images.z_images.reserve(n);
    for (size_t i = 0; i < n; i++) {
        images.x_images.push_back(PauliOperator::single(n, i, 'X'));
        images.z_images.push_back(PauliOperator::single(n, i, 'Z'));
    }
    for (const auto &g : circuit.gates()) {
        if (!is_unitary(g.kind)) {
            fail(ErrorCode::UnsupportedGate, std::string(gate_name(g.kind)) + " is not unitary");
        }
        for (size_t i = 0; i < n; i++) {
            conjugate_by_gate(images.x_images[i], g);
            conjugate_by_gate(images.z_images[i], g);
        }
    }
    return images;
}

StabilizerGroupView output_stabilizers(const CliffordCircuit &circuit) {
    size_t n = circuit.num_qubits();
    StabilizerGroupView out;
    for (size_t i = 0; i < n; i++) {
        out.generators.push_back(conjugate_pauli(circuit, PauliOperator::single(n, i, 'Z')));
    }
    return out;
}

StabilizerGroupView resource_stabilizers(const CliffordImages &images) {
    size_t n = images.x_images.size();
    StabilizerGroupView out;
    std::vector<uint32_t> primed(n);
    for (size_t i = 0; i < n; i++) {
        primed[i] = static_cast<uint32_t>(n + i);
    }
    for (size_t i = 0; i < n; i++) {
        for (const PauliOperator *img : {&images.x_images[i], &images.z_images[i]}) {
            PauliOperator g = img->embedded(2 * n, primed);
            bool is_x = img == &images.x_images[i];
            g.set(i, is_x, !is_x);
            out.generators.push_back(std::move(g));
        }
    }
    return out;
}

StabilizerGroupView resource_stabilizers(const CliffordCircuit &circuit) {
    return resource_stabilizers(clifford_images(circuit));
}

PauliOperator random_group_element(const StabilizerGroupView &group, Rng &rng) {
    if (group.generators.empty()) {
        fail(ErrorCode::InvalidArgument, "cannot sample from an empty generator list");
    }
    PauliOperator out(group.num_qubits());
    uint64_t bits = 0;
    for (size_t k = 0; k < group.generators.size(); k++) {
        if ((k & 63) == 0) {
            bits = rng();
        }
        if ((bits >> (k & 63)) & 1) {
            multiply_commuting(out, group.generators[k]);
        }
    }
    return out;
}

PauliOperator random_group_element(const StabilizerGroupView &group, uint64_t seed) {
    Rng rng(seed);
    return random_group_element(group, rng);
}

StabilizerGroupView supported_subgroup(const StabilizerGroupView &group, std::span<const uint32_t> keep) {
    size_t nq = group.num_qubits();
    std::vector<bool> kept(nq, false);
    for (uint32_t q : keep) {
        if (q >= nq) {
            fail(ErrorCode::Dimension, "kept qubit out of range");
        }
        kept[q] = true;
    }
    std::vector<size_t> cols;
    for (size_t q = 0; q < nq; q++) {
        if (!kept[q]) {
            cols.push_back(2 * q);
            cols.push_back(2 * q + 1);
        }
    }
    std::vector<PauliOperator> rows = group.generators;
    auto pivots = eliminate(rows, cols, true);
    StabilizerGroupView out;
    for (size_t r = 0; r < rows.size(); r++) {
        if (std::find(pivots.begin(), pivots.end(), r) == pivots.end() && !rows[r].is_identity()) {
            out.generators.push_back(rows[r].restricted(keep));
        }
    }
    return out;
}

CliffordCircuit random_clifford(size_t num_qubits, size_t target_size, uint64_t seed) {
    if (num_qubits == 0) {
        fail(ErrorCode::InvalidArgument, "random_clifford needs at least one qubit");
    }
    Rng rng(seed);
    CliffordCircuit out(num_qubits);
    for (uint32_t k = 0; k < num_qubits; k++) {
        // Uniform non-identity p1 and uniform p2 anticommuting with it; the
        // reduction circuits compose to a uniformly random Clifford.
        PauliOperator p1(num_qubits);
        PauliOperator p2(num_qubits);
        do {
            randomize_on(p1, k, num_qubits, rng);
        } while (p1.is_identity());
        do {
            randomize_on(p2, k, num_qubits, rng);
        } while (p2.commutes(p1));
        reduce_pair(p1, p2, k, out);
        switch (rng() & 3) {
            case 1:
                out.append(GateKind::X, k);
                break;
            case 2:
                out.append(GateKind::Z, k);
                break;
            case 3:
                out.append(GateKind::X, k);
                out.append(GateKind::Z, k);
                break;
            default:
                break;
        }
    }

    if (out.size() >= target_size) {
        out.truncate(target_size);
        return out;
    }
    size_t missing = target_size - out.size();
    uint32_t q = 0;
    auto next_qubit = [&]() {
        uint32_t r = q;
        q = static_cast<uint32_t>((q + 1) % num_qubits);
        return r;
    };
    if (missing % 2 == 1) {
        uint32_t t = next_qubit();
        if (missing >= 3) {
            // S S Z is the identity.
            out.append(GateKind::S, t);
            out.append(GateKind::S, t);
            out.append(GateKind::Z, t);
            missing -= 3;
        } else {
            // A lone Pauli only shifts signs; the sampled Clifford stays uniform.
            out.append(GateKind::Z, t);
            missing -= 1;
        }
    }
    while (missing > 0) {
        uint32_t t = next_qubit();
        out.append(GateKind::X, t);
        out.append(GateKind::X, t);
        missing -= 2;
    }
    return out;
}

}  // namespace clinr
