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

#include <cstdint>
#include <random>

namespace cdsc {

/// Generator used for every stochastic operation. Pinned so that a
/// (seed, inputs) pair reproduces results bit-for-bit.
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64+splitmix64";

/// splitmix64 finalizer; the pinned seed-mixing function.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for item `index` of stream `stream` under `master`.
constexpr uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ index);
}

inline Rng make_rng(uint64_t master, uint64_t stream, uint64_t index) {
    return Rng(derive_seed(master, stream, index));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace cdsc
