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


#ifndef CLINR_TESTS_TEST_UTIL_H
#define CLINR_TESTS_TEST_UTIL_H

#include <vector>

#include "clinr/pauli.h"
#include "clinr/random.h"

namespace clinr_test {

inline clinr::PauliOperator random_pauli(size_t n, clinr::Rng &rng, bool random_sign = true) {
    clinr::PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        uint64_t r = rng();
        p.set(q, r & 1, r & 2);
    }
    if (random_sign) {
        p.set_sign(rng() & 1);
    }
    return p;
}

/// All 4^n unsigned Paulis on n qubits.
inline std::vector<clinr::PauliOperator> all_paulis(size_t n) {
    std::vector<clinr::PauliOperator> out;
    for (size_t code = 0; code < (size_t{1} << (2 * n)); code++) {
        clinr::PauliOperator p(n);
        for (size_t q = 0; q < n; q++) {
            p.set(q, (code >> (2 * q)) & 1, (code >> (2 * q + 1)) & 1);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace clinr_test

#endif
