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


#include "clinr/tableau_simulator.h"

#include "clinr/error.h"

namespace clinr {

TableauSimulator::TableauSimulator(size_t num_qubits, uint64_t seed) : n_(num_qubits), rng_(seed) {
    for (size_t q = 0; q < n_; q++) {
        destab_.push_back(PauliOperator::single(n_, q, 'X'));
        stab_.push_back(PauliOperator::single(n_, q, 'Z'));
    }
}

void TableauSimulator::apply(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::M:
            measure(gate.q0);
            return;
        case GateKind::R:
            reset(gate.q0);
            return;
        case GateKind::RX:
            reset_x(gate.q0);
            return;
        default:
            break;
    }
    validate_gate(gate, n_);
    for (size_t k = 0; k < n_; k++) {
        conjugate_by_gate(destab_[k], gate);
        conjugate_by_gate(stab_[k], gate);
    }
}

void TableauSimulator::apply(const CliffordCircuit &circuit) {
    for (const auto &g : circuit.gates()) {
        apply(g);
    }
}

void TableauSimulator::apply_pauli(const PauliOperator &p) {
    if (p.num_qubits() != n_) {
        fail(ErrorCode::Dimension, "Pauli width does not match simulator");
    }
    for (size_t k = 0; k < n_; k++) {
        if (!stab_[k].commutes(p)) {
            stab_[k].flip_sign();
        }
        if (!destab_[k].commutes(p)) {
            destab_[k].flip_sign();
        }
    }
}

bool TableauSimulator::measure(uint32_t q) {
    if (q >= n_) {
        fail(ErrorCode::Dimension, "measured qubit out of range");
    }
    size_t pivot = n_;
    for (size_t k = 0; k < n_; k++) {
        if (stab_[k].x(q)) {
            pivot = k;
            break;
        }
    }
    if (pivot == n_) {
        return peek_expectation(PauliOperator::single(n_, q, 'Z')) == 1;
    }
    for (size_t k = 0; k < n_; k++) {
        if (k != pivot && stab_[k].x(q)) {
            stab_[k].multiply_inplace(stab_[pivot]);
        }
        if (destab_[k].x(q) && k != pivot) {
            // Destabilizer signs are irrelevant; only the bits matter.
            destab_[k].multiply_inplace(stab_[pivot]);
        }
    }
    bool outcome = rng_() & 1;
    destab_[pivot] = stab_[pivot];
    stab_[pivot] = PauliOperator::single(n_, q, 'Z');
    stab_[pivot].set_sign(outcome);
    return outcome;
}

int TableauSimulator::peek_expectation(const PauliOperator &p) const {
    for (size_t k = 0; k < n_; k++) {
        if (!stab_[k].commutes(p)) {
            return -1;
        }
    }
    // p commutes with every stabilizer, so it is +-(product of the stabilizers
    // whose destabilizer partners anticommute with it).
    PauliOperator acc(n_);
    for (size_t k = 0; k < n_; k++) {
        if (!destab_[k].commutes(p)) {
            acc.multiply_inplace(stab_[k]);
        }
    }
    return (acc.sign() ^ p.sign()) ? 1 : 0;
}

void TableauSimulator::reset(uint32_t q) {
    if (measure(q)) {
        apply_pauli(PauliOperator::single(n_, q, 'X'));
    }
}

void TableauSimulator::reset_x(uint32_t q) {
    reset(q);
    apply(Gate{GateKind::H, q});
}

StabilizerGroupView TableauSimulator::stabilizers() const {
    return StabilizerGroupView{stab_};
}

}  // namespace clinr
