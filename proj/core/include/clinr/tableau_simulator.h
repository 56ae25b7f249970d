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


#ifndef CLINR_TABLEAU_SIMULATOR_H
#define CLINR_TABLEAU_SIMULATOR_H

#include <cstdint>
#include <vector>

#include "clinr/circuit.h"
#include "clinr/pauli.h"
#include "clinr/random.h"
#include "clinr/stabilizer.h"

namespace clinr {

/// Stabilizer-tableau simulator over destabilizer/stabilizer rows, starting
/// from |0...0>. Exact but O(n) per gate, so it serves as an oracle for
/// small programs rather than as the Monte Carlo engine.
class TableauSimulator {
   public:
    TableauSimulator(size_t num_qubits, uint64_t seed);

    size_t num_qubits() const {
        return n_;
    }

    void apply(const Gate &gate);
    void apply(const CliffordCircuit &circuit);
    /// Applies a Pauli operator as a gate (flips stabilizer signs).
    void apply_pauli(const PauliOperator &p);
    /// Z-basis measurement; random outcomes come from the seeded rng.
    bool measure(uint32_t q);
    /// Outcome bit (0 for +1, 1 for -1) of measuring p when it is determined,
    /// or -1 when p anticommutes with some stabilizer.
    int peek_expectation(const PauliOperator &p) const;
    void reset(uint32_t q);
    void reset_x(uint32_t q);

    StabilizerGroupView stabilizers() const;

   private:
    size_t n_;
    std::vector<PauliOperator> destab_;
    std::vector<PauliOperator> stab_;
    Rng rng_;
};

}  // namespace clinr

#endif
