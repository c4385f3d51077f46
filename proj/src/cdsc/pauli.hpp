// Copyright 2026 The cdsc Authors
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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdsc {

/// Single-qubit Pauli letter. The numeric value is (x bit) | (z bit << 1).
enum class Letter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr Letter letter_from_bits(bool x, bool z) {
    return static_cast<Letter>(static_cast<uint8_t>(x) | (static_cast<uint8_t>(z) << 1));
}
constexpr bool x_bit(Letter l) { return (static_cast<uint8_t>(l) & 1) != 0; }
constexpr bool z_bit(Letter l) { return (static_cast<uint8_t>(l) & 2) != 0; }

char letter_char(Letter l);
Letter letter_from_char(char c);

/// Position of a letter in the textual order I < X < Y < Z.
constexpr int text_rank(Letter l) {
    switch (l) {
        case Letter::I: return 0;
        case Letter::X: return 1;
        case Letter::Y: return 2;
        case Letter::Z: return 3;
    }
    return 0;
}

/// n-qubit Pauli operator in binary symplectic form. Phases are not tracked.
/// Qubit q lives in bit (q % 64) of word (q / 64).
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(size_t num_qubits);

    /// Parses one letter per qubit from {I, X, Y, Z} (also accepts '_').
    static PauliOp from_string(std::string_view text);
    /// Builds an operator with the given letter on every listed qubit.
    static PauliOp on_qubits(size_t num_qubits, std::span<const size_t> qubits, Letter l);

    std::string str() const;

    size_t size() const { return n_; }
    size_t num_words() const { return x_.size(); }

    Letter get(size_t q) const;
    void set(size_t q, Letter l);

    std::span<const uint64_t> xs() const { return x_; }
    std::span<const uint64_t> zs() const { return z_; }
    std::span<uint64_t> xs_mut() { return x_; }
    std::span<uint64_t> zs_mut() { return z_; }

    bool is_identity() const;
    size_t weight() const;

    PauliOp& operator*=(const PauliOp& other);
    friend PauliOp operator*(PauliOp a, const PauliOp& b) { return a *= b; }
    bool operator==(const PauliOp& other) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
};

/// True iff the symplectic inner product of p and q is even.
bool commutes(const PauliOp& p, const PauliOp& q);

/// Product up to phase (bitwise XOR of both halves).
PauliOp multiply(const PauliOp& p, const PauliOp& q);

struct WeightCounts {
    size_t x = 0;
    size_t y = 0;
    size_t z = 0;
    size_t total() const { return x + y + z; }
    bool operator==(const WeightCounts&) const = default;
};

WeightCounts weight_decomposition(const PauliOp& p);

/// Lexicographic comparison of the textual encodings ("IXYZ" order).
bool text_less(const PauliOp& a, const PauliOp& b);

/// Single-qubit Clifford deformation, acting on letters by conjugation.
///   Id     -> identity
///   SwapXZ -> H,          X <-> Z, Y fixed
///   SwapYZ -> H sqrt(Z) H, Y <-> Z, X fixed
enum class Deformation : uint8_t { Id = 0, SwapXZ = 1, SwapYZ = 2 };

Letter apply(Deformation d, Letter l);
char deformation_char(Deformation d);
Deformation deformation_from_char(char c);

/// Per-qubit deformation assignment. Text form uses 'I', 'H', 'Y'.
class DeformationPattern {
   public:
    DeformationPattern() = default;
    explicit DeformationPattern(size_t num_qubits, Deformation fill = Deformation::Id);
    explicit DeformationPattern(std::vector<Deformation> per_qubit);

    static DeformationPattern from_string(std::string_view text);
    std::string str() const;

    size_t size() const { return per_qubit_.size(); }
    Deformation operator[](size_t q) const { return per_qubit_[q]; }
    void set(size_t q, Deformation d);

    const std::vector<Deformation>& per_qubit() const { return per_qubit_; }
    std::array<size_t, 3> counts() const;
    bool has(Deformation d) const;

    /// Qubit masks, word-packed like PauliOp.
    std::span<const uint64_t> swap_xz_mask() const { return xz_mask_; }
    std::span<const uint64_t> swap_yz_mask() const { return yz_mask_; }

    bool operator==(const DeformationPattern& other) const { return per_qubit_ == other.per_qubit_; }

   private:
    void rebuild_masks();
    std::vector<Deformation> per_qubit_;
    std::vector<uint64_t> xz_mask_;
    std::vector<uint64_t> yz_mask_;
};

/// Applies the per-qubit letter permutation. Involutive.
PauliOp permute_pauli(const DeformationPattern& pattern, const PauliOp& p);

/// Word-level form of permute_pauli for hot loops: permutes (x, z) in place.
inline void permute_words(uint64_t xz_mask, uint64_t yz_mask, uint64_t& x, uint64_t& z) {
    uint64_t swap = (x ^ z) & xz_mask;
    x ^= swap;
    z ^= swap;
    x ^= z & yz_mask;
}

}  // namespace cdsc
