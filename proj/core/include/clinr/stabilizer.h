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

#ifndef CLINR_STABILIZER_H
#define CLINR_STABILIZER_H

#include <cstdint>
#include <span>
#include <vector>

#include "clinr/circuit.h"
#include "clinr/pauli.h"
#include "clinr/random.h"

namespace clinr {

/// A list of commuting, independent Pauli generators.
struct StabilizerGroupView {
    std::vector<PauliOperator> generators;

    size_t num_qubits() const {
        return generators.empty() ? 0 : generators.front().num_qubits();
    }
    bool mutually_commuting() const;
    /// Rank of the generators' bit patterns over GF(2).
    size_t rank() const;

    /// Reduced row-echelon generating set; two views describe the same signed
    /// group iff their canonical forms are equal.
    StabilizerGroupView canonical() const;
    /// Whether p (including its sign) is an element of the group.
    bool contains(const PauliOperator &p) const;
};

/// Images U X_i U^dagger and U Z_i U^dagger of a unitary circuit.
struct CliffordImages {
    std::vector<PauliOperator> x_images;
    std::vector<PauliOperator> z_images;
};
CliffordImages clifford_images(const CliffordCircuit &circuit);

/// The n generators U Z_i U^dagger stabilizing U|0...0>.
StabilizerGroupView output_stabilizers(const CliffordCircuit &circuit);

/// The 2n generators of (I (x) C)|Bell>^n. Qubit i is the unprimed half of
/// pair i and qubit n+i the primed half that C acts on.
StabilizerGroupView resource_stabilizers(const CliffordCircuit &circuit);
/// Same, computed from precomputed images of C.
StabilizerGroupView resource_stabilizers(const CliffordImages &images);

/// Product of a uniformly random subset of the generators (uniform over the
/// 2^k group elements, signs included).
PauliOperator random_group_element(const StabilizerGroupView &group, Rng &rng);
PauliOperator random_group_element(const StabilizerGroupView &group, uint64_t seed);

/// Generators of the subgroup whose elements act trivially outside `keep`,
/// restricted to (and reindexed by) `keep`.
StabilizerGroupView supported_subgroup(const StabilizerGroupView &group, std::span<const uint32_t> keep);

/// Uniformly random n-qubit Clifford synthesized into {H, S, X, Z, CX}, then
/// padded with self-cancelling gates or truncated so that size() ==
/// target_size. Deterministic in the seed.
CliffordCircuit random_clifford(size_t num_qubits, size_t target_size, uint64_t seed);

}  // namespace clinr

#endif
