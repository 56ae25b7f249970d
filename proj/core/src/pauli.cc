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

#include "clinr/pauli.h"

#include <bit>

#include "clinr/error.h"

namespace clinr {

namespace {

size_t words_for(size_t num_qubits) {
    return (num_qubits + 63) >> 6;
}

void check_same_size(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_qubits() != b.num_qubits()) {
        fail(ErrorCode::Dimension,
             "Pauli operators act on " + std::to_string(a.num_qubits()) + " and " + std::to_string(b.num_qubits()) +
                 " qubits");
    }
}

}  // namespace

PauliOperator::PauliOperator(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    PauliOperator result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case '_':
            case 'I':
                break;
            case 'X':
                result.set_x(q, true);
                break;
            case 'Y':
                result.set(q, true, true);
                break;
            case 'Z':
                result.set_z(q, true);
                break;
            default:
                fail(ErrorCode::Parse, "bad Pauli character '" + std::string(1, text[q]) + "'");
        }
    }
    result.sign_ = negative;
    return result;
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t q, char p) {
    if (q >= num_qubits) {
        fail(ErrorCode::Dimension, "qubit " + std::to_string(q) + " out of range");
    }
    PauliOperator result(num_qubits);
    result.set(q, p == 'X' || p == 'Y', p == 'Z' || p == 'Y');
    return result;
}

void PauliOperator::set_x(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        xs_[q >> 6] |= mask;
    } else {
        xs_[q >> 6] &= ~mask;
    }
}

void PauliOperator::set_z(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        zs_[q >> 6] |= mask;
    } else {
        zs_[q >> 6] &= ~mask;
    }
}

char PauliOperator::at(size_t q) const {
    static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
    return kChars[x(q) | (z(q) << 1)];
}

bool PauliOperator::is_identity() const {
    for (size_t k = 0; k < xs_.size(); k++) {
        if (xs_[k] | zs_[k]) {
            return false;
        }
    }
    return true;
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

bool PauliOperator::commutes(const PauliOperator &other) const {
    check_same_size(*this, other);
    uint64_t acc = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        acc ^= (xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k]);
    }
    return (std::popcount(acc) & 1) == 0;
}

uint8_t PauliOperator::multiply_inplace(const PauliOperator &rhs) {
    check_same_size(*this, rhs);
    // Two-bit counters per bit lane tally the +-i factors picked up at each
    // qubit; the lanes are summed mod 4 at the end.
    uint64_t cnt1 = 0;
    uint64_t cnt2 = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        uint64_t x2 = rhs.xs_[k];
        uint64_t z2 = rhs.zs_[k];
        uint64_t old_x1 = xs_[k];
        uint64_t old_z1 = zs_[k];
        xs_[k] ^= x2;
        zs_[k] ^= z2;
        uint64_t x1z2 = old_x1 & z2;
        uint64_t anti = (x2 & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ xs_[k] ^ zs_[k] ^ x1z2) & anti;
        cnt1 ^= anti;
    }
    uint8_t s = static_cast<uint8_t>(std::popcount(cnt1));
    s ^= static_cast<uint8_t>(std::popcount(cnt2) << 1);
    s ^= static_cast<uint8_t>(rhs.sign_) << 1;
    s &= 3;
    if (s & 2) {
        sign_ = !sign_;
    }
    return s;
}

void PauliOperator::xor_bits(const PauliOperator &rhs) {
    check_same_size(*this, rhs);
    for (size_t k = 0; k < xs_.size(); k++) {
        xs_[k] ^= rhs.xs_[k];
        zs_[k] ^= rhs.zs_[k];
    }
}

PauliOperator PauliOperator::restricted(std::span<const uint32_t> qubits) const {
    PauliOperator result(qubits.size());
    for (size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] >= num_qubits_) {
            fail(ErrorCode::Dimension, "restriction qubit out of range");
        }
        result.set(i, x(qubits[i]), z(qubits[i]));
    }
    result.sign_ = sign_;
    return result;
}

PauliOperator PauliOperator::embedded(size_t total_qubits, std::span<const uint32_t> targets) const {
    if (targets.size() != num_qubits_) {
        fail(ErrorCode::Dimension, "embedding needs one target per qubit");
    }
    PauliOperator result(total_qubits);
    for (size_t i = 0; i < targets.size(); i++) {
        if (targets[i] >= total_qubits) {
            fail(ErrorCode::Dimension, "embedding target out of range");
        }
        result.set(targets[i], x(i), z(i));
    }
    result.sign_ = sign_;
    return result;
}

std::string PauliOperator::str() const {
    std::string out;
    out.reserve(num_qubits_ + 1);
    out.push_back(sign_ ? '-' : '+');
    for (size_t q = 0; q < num_qubits_; q++) {
        char c = at(q);
        out.push_back(c == 'I' ? '_' : c);
    }
    return out;
}

}  // namespace clinr
