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

#ifndef CLINR_PAULI_H
#define CLINR_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clinr {

/// A Hermitian n-qubit Pauli operator with a +1/-1 sign.
///
/// Qubit q holds the pair (x, z): (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Y is the
/// Hermitian Y (so X*Z = -iY is never stored directly); the operator
/// represented is (-1)^sign times the tensor product of the per-qubit Paulis.
/// Bits are packed 64 per word so commutation and products run a word at a
/// time.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits);

    /// Parses text like "+XZ_Y" or "-X_Z" (leading sign optional, '_' or 'I'
    /// for identity).
    static PauliOperator from_string(std::string_view text);
    /// The single-qubit Pauli `p` ('X', 'Y' or 'Z') on qubit q.
    static PauliOperator single(size_t num_qubits, size_t q, char p);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_words() const {
        return xs_.size();
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    void set(size_t q, bool xv, bool zv) {
        set_x(q, xv);
        set_z(q, zv);
    }
    /// 'I', 'X', 'Y' or 'Z' at qubit q.
    char at(size_t q) const;

    bool sign() const {
        return sign_;
    }
    void set_sign(bool negative) {
        sign_ = negative;
    }
    void flip_sign() {
        sign_ = !sign_;
    }

    std::span<uint64_t> xs() {
        return xs_;
    }
    std::span<uint64_t> zs() {
        return zs_;
    }
    std::span<const uint64_t> xs() const {
        return xs_;
    }
    std::span<const uint64_t> zs() const {
        return zs_;
    }

    /// True when every qubit carries I (the sign is ignored).
    bool is_identity() const;
    size_t weight() const;

    /// Symplectic-form parity. Throws a dimension error on size mismatch.
    bool commutes(const PauliOperator &other) const;

    /// Replaces *this with (*this) * rhs. Returns k in 0..3 such that the
    /// product equals i^(k & 1) times the stored result; bit 1 of k records
    /// whether the stored sign was flipped. k is odd exactly when the factors
    /// anticommute.
    uint8_t multiply_inplace(const PauliOperator &rhs);
    /// XOR of the bit patterns, ignoring phases; what a Pauli frame needs.
    void xor_bits(const PauliOperator &rhs);

    /// The Pauli restricted to (and reindexed by) the given qubits.
    PauliOperator restricted(std::span<const uint32_t> qubits) const;
    /// Embeds a Pauli on k qubits into a larger register, qubit i -> targets[i].
    PauliOperator embedded(size_t total_qubits, std::span<const uint32_t> targets) const;

    std::string str() const;

    bool operator==(const PauliOperator &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    bool sign_ = false;
};

}  // namespace clinr

#endif
