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

#include "cdsc/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace cdsc {

namespace {

size_t words_for(size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliOp& p, const PauliOp& q, const char* what) {
    if (p.size() != q.size()) {
        throw std::invalid_argument(std::string(what) + ": qubit count mismatch (" +
                                    std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
    }
}

}  // namespace

char letter_char(Letter l) {
    switch (l) {
        case Letter::I: return 'I';
        case Letter::X: return 'X';
        case Letter::Y: return 'Y';
        case Letter::Z: return 'Z';
    }
    return '?';
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'I': case 'i': case '_': return Letter::I;
        case 'X': case 'x': return Letter::X;
        case 'Y': case 'y': return Letter::Y;
        case 'Z': case 'z': return Letter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliOp::PauliOp(size_t num_qubits)
    : n_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0) {}

PauliOp PauliOp::from_string(std::string_view text) {
    PauliOp p(text.size());
    for (size_t q = 0; q < text.size(); ++q) {
        p.set(q, letter_from_char(text[q]));
    }
    return p;
}

PauliOp PauliOp::on_qubits(size_t num_qubits, std::span<const size_t> qubits, Letter l) {
    PauliOp p(num_qubits);
    for (size_t q : qubits) {
        p.set(q, l);
    }
    return p;
}

std::string PauliOp::str() const {
    std::string out(n_, 'I');
    for (size_t q = 0; q < n_; ++q) {
        out[q] = letter_char(get(q));
    }
    return out;
}

Letter PauliOp::get(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << (q % 64);
    return letter_from_bits((x_[q / 64] & bit) != 0, (z_[q / 64] & bit) != 0);
}

void PauliOp::set(size_t q, Letter l) {
    if (q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << (q % 64);
    x_[q / 64] = x_bit(l) ? (x_[q / 64] | bit) : (x_[q / 64] & ~bit);
    z_[q / 64] = z_bit(l) ? (z_[q / 64] | bit) : (z_[q / 64] & ~bit);
}

bool PauliOp::is_identity() const {
    for (size_t w = 0; w < x_.size(); ++w) {
        if (x_[w] != 0 || z_[w] != 0) {
            return false;
        }
    }
    return true;
}

size_t PauliOp::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < x_.size(); ++w) {
        total += std::popcount(x_[w] | z_[w]);
    }
    return total;
}

PauliOp& PauliOp::operator*=(const PauliOp& other) {
    require_same_size(*this, other, "multiply");
    for (size_t w = 0; w < x_.size(); ++w) {
        x_[w] ^= other.x_[w];
        z_[w] ^= other.z_[w];
    }
    return *this;
}

bool commutes(const PauliOp& p, const PauliOp& q) {
    require_same_size(p, q, "commutes");
    auto px = p.xs(), pz = p.zs(), qx = q.xs(), qz = q.zs();
    int parity = 0;
    for (size_t w = 0; w < px.size(); ++w) {
        parity ^= std::popcount((px[w] & qz[w]) ^ (pz[w] & qx[w])) & 1;
    }
    return parity == 0;
}

PauliOp multiply(const PauliOp& p, const PauliOp& q) { return p * q; }

WeightCounts weight_decomposition(const PauliOp& p) {
    WeightCounts c;
    auto xs = p.xs(), zs = p.zs();
    for (size_t w = 0; w < xs.size(); ++w) {
        c.x += std::popcount(xs[w] & ~zs[w]);
        c.y += std::popcount(xs[w] & zs[w]);
        c.z += std::popcount(zs[w] & ~xs[w]);
    }
    return c;
}

bool text_less(const PauliOp& a, const PauliOp& b) {
    require_same_size(a, b, "text_less");
    auto ax = a.xs(), az = a.zs(), bx = b.xs(), bz = b.zs();
    for (size_t w = 0; w < ax.size(); ++w) {
        uint64_t diff = (ax[w] ^ bx[w]) | (az[w] ^ bz[w]);
        if (diff != 0) {
            size_t q = w * 64 + std::countr_zero(diff);
            return text_rank(a.get(q)) < text_rank(b.get(q));
        }
    }
    return false;
}

Letter apply(Deformation d, Letter l) {
    switch (d) {
        case Deformation::Id:
            return l;
        case Deformation::SwapXZ:
            if (l == Letter::X) return Letter::Z;
            if (l == Letter::Z) return Letter::X;
            return l;
        case Deformation::SwapYZ:
            if (l == Letter::Y) return Letter::Z;
            if (l == Letter::Z) return Letter::Y;
            return l;
    }
    return l;
}

char deformation_char(Deformation d) {
    switch (d) {
        case Deformation::Id: return 'I';
        case Deformation::SwapXZ: return 'H';
        case Deformation::SwapYZ: return 'Y';
    }
    return '?';
}

Deformation deformation_from_char(char c) {
    switch (c) {
        case 'I': case 'i': return Deformation::Id;
        case 'H': case 'h': return Deformation::SwapXZ;
        case 'Y': case 'y': return Deformation::SwapYZ;
        default:
            throw std::invalid_argument(std::string("not a deformation letter (expected I, H or Y): '") + c + "'");
    }
}

DeformationPattern::DeformationPattern(size_t num_qubits, Deformation fill)
    : per_qubit_(num_qubits, fill) {
    rebuild_masks();
}

DeformationPattern::DeformationPattern(std::vector<Deformation> per_qubit)
    : per_qubit_(std::move(per_qubit)) {
    rebuild_masks();
}

DeformationPattern DeformationPattern::from_string(std::string_view text) {
    std::vector<Deformation> d;
    d.reserve(text.size());
    for (char c : text) {
        d.push_back(deformation_from_char(c));
    }
    return DeformationPattern(std::move(d));
}

std::string DeformationPattern::str() const {
    std::string out;
    out.reserve(per_qubit_.size());
    for (Deformation d : per_qubit_) {
        out.push_back(deformation_char(d));
    }
    return out;
}

void DeformationPattern::set(size_t q, Deformation d) {
    per_qubit_.at(q) = d;
    rebuild_masks();
}

std::array<size_t, 3> DeformationPattern::counts() const {
    std::array<size_t, 3> c{0, 0, 0};
    for (Deformation d : per_qubit_) {
        ++c[static_cast<size_t>(d)];
    }
    return c;
}

bool DeformationPattern::has(Deformation d) const {
    for (Deformation e : per_qubit_) {
        if (e == d) return true;
    }
    return false;
}

void DeformationPattern::rebuild_masks() {
    xz_mask_.assign(words_for(per_qubit_.size()), 0);
    yz_mask_.assign(words_for(per_qubit_.size()), 0);
    for (size_t q = 0; q < per_qubit_.size(); ++q) {
        uint64_t bit = uint64_t{1} << (q % 64);
        if (per_qubit_[q] == Deformation::SwapXZ) xz_mask_[q / 64] |= bit;
        if (per_qubit_[q] == Deformation::SwapYZ) yz_mask_[q / 64] |= bit;
    }
}

PauliOp permute_pauli(const DeformationPattern& pattern, const PauliOp& p) {
    if (pattern.size() != p.size()) {
        throw std::invalid_argument("permute_pauli: pattern length " + std::to_string(pattern.size()) +
                                    " does not match qubit count " + std::to_string(p.size()));
    }
    PauliOp out = p;
    auto xs = out.xs_mut();
    auto zs = out.zs_mut();
    auto xzm = pattern.swap_xz_mask();
    auto yzm = pattern.swap_yz_mask();
    for (size_t w = 0; w < xs.size(); ++w) {
        permute_words(xzm[w], yzm[w], xs[w], zs[w]);
    }
    return out;
}

}  // namespace cdsc
