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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdsc/pauli.hpp"

namespace cdsc {

/// Pauli operator on at most 64 qubits packed in one word per half.
struct SmallPauli {
    uint64_t x = 0;
    uint64_t z = 0;
};

inline SmallPauli to_small(const PauliOp& p) {
    if (p.size() > 64) throw std::invalid_argument("to_small: more than 64 qubits");
    if (p.size() == 0) return {};
    return {p.xs()[0], p.zs()[0]};
}

inline PauliOp from_small(SmallPauli s, size_t n) {
    PauliOp p(n);
    if (n > 0) {
        p.xs_mut()[0] = s.x;
        p.zs_mut()[0] = s.z;
    }
    return p;
}

/// Visits every product of a subset of `gens` (2^|gens| elements, identity
/// first) in Gray-code order, so consecutive elements differ by one generator.
template <typename F>
void for_each_group_element(std::span<const SmallPauli> gens, F&& f) {
    SmallPauli cur{};
    f(cur);
    const uint64_t count = uint64_t{1} << gens.size();
    for (uint64_t k = 1; k < count; ++k) {
        const SmallPauli& g = gens[static_cast<size_t>(std::countr_zero(k))];
        cur.x ^= g.x;
        cur.z ^= g.z;
        f(cur);
    }
}

/// Stabilizer-group enumeration split into a precomputed table of the
/// products of the first `low_bits` generators and a Gray-coded walk over the
/// rest. The visitor sees one outer element and the whole inner table at a
/// time, which keeps the hot loop free of data-dependent branches.
class BlockEnumerator {
   public:
    explicit BlockEnumerator(std::span<const SmallPauli> gens, size_t low_bits = 10)
        : gens_(gens.begin(), gens.end()) {
        low_ = std::min(low_bits, gens_.size());
        const size_t count = size_t{1} << low_;
        lx_.assign(count, 0);
        lz_.assign(count, 0);
        for (size_t i = 1; i < count; ++i) {
            auto b = static_cast<size_t>(std::countr_zero(i));
            lx_[i] = lx_[i ^ (size_t{1} << b)] ^ gens_[b].x;
            lz_[i] = lz_[i ^ (size_t{1} << b)] ^ gens_[b].z;
        }
    }

    size_t inner_size() const { return lx_.size(); }
    const uint64_t* inner_x() const { return lx_.data(); }
    const uint64_t* inner_z() const { return lz_.data(); }
    uint64_t outer_count() const { return uint64_t{1} << (gens_.size() - low_); }

    /// Calls f(outer) for every element of the group spanned by the
    /// generators beyond the low block; the full group is outer x inner.
    template <typename F>
    void for_each_outer(F&& f) const {
        SmallPauli cur{};
        f(cur);
        const uint64_t count = outer_count();
        for (uint64_t k = 1; k < count; ++k) {
            const SmallPauli& g = gens_[low_ + static_cast<size_t>(std::countr_zero(k))];
            cur.x ^= g.x;
            cur.z ^= g.z;
            f(cur);
        }
    }

    /// Element number (outer_index, inner_index) in the order visited.
    SmallPauli element(uint64_t outer_index, size_t inner_index) const {
        uint64_t gray = outer_index ^ (outer_index >> 1);
        SmallPauli s{lx_[inner_index], lz_[inner_index]};
        for (size_t b = 0; b + low_ < gens_.size(); ++b) {
            if ((gray >> b) & 1) {
                s.x ^= gens_[low_ + b].x;
                s.z ^= gens_[low_ + b].z;
            }
        }
        return s;
    }

   private:
    std::vector<SmallPauli> gens_;
    size_t low_ = 0;
    std::vector<uint64_t> lx_;
    std::vector<uint64_t> lz_;
};

}  // namespace cdsc
