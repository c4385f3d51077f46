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

#include "cdsc/harness/small_code.hpp"

#include <algorithm>
#include <cmath>

#include "cdsc/decode.hpp"
#include "cdsc/error.hpp"
#include "cdsc/parallel.hpp"

namespace cdsc {

double exact_failure_probability(const DeformedCode& code, const NoiseField& field) {
    const size_t k = code.num_generators();
    if (code.num_qubits() > kMaxEnumerationQubits) {
        throw UnsupportedError("exact_failure_probability: too many qubits for exhaustive decoding");
    }
    double success = 0.0;
    Syndrome s(k);
    for (uint64_t m = 0; m < (uint64_t{1} << k); ++m) {
        for (size_t g = 0; g < k; ++g) s[g] = (m >> g) & 1;
        DecodeOutcome out = exact_ml_decode(code, field, s);
        double top = *std::max_element(out.cosets.log_weight.begin(), out.cosets.log_weight.end());
        if (std::isfinite(top)) success += std::exp(top);
    }
    return 1.0 - success;
}

SmallCodeSweep::SmallCodeSweep() {
    DeformedCode css(3, preset_pattern(Preset::CSS, 3));
    const size_t total = size_t{1} << (2 * kQubits);
    coset_.resize(total);
    PauliOp e(kQubits);
    for (size_t i = 0; i < total; ++i) {
        for (size_t q = 0; q < kQubits; ++q) e.set(q, static_cast<Letter>((i >> (2 * q)) & 3));
        Syndrome s = css.syndrome(e);
        uint32_t sbits = 0;
        for (size_t g = 0; g < s.size(); ++g) sbits |= static_cast<uint32_t>(s[g]) << g;
        auto cls = css.logical_class(e * pure_error(css, s));
        if (!cls) throw std::logic_error("SmallCodeSweep: pure error does not cancel the syndrome");
        coset_[i] = static_cast<uint16_t>(sbits * 4 + static_cast<uint32_t>(*cls));
    }
}

DeformationPattern SmallCodeSweep::pattern_at(uint32_t index) {
    if (index >= kPatterns) throw std::out_of_range("SmallCodeSweep::pattern_at: index out of range");
    std::vector<Deformation> d(kQubits);
    for (size_t q = 0; q < kQubits; ++q) {
        d[q] = static_cast<Deformation>(index % 3);
        index /= 3;
    }
    return DeformationPattern(std::move(d));
}

double SmallCodeSweep::failure_probability(const DeformationPattern& pattern, const QubitChannel& physical) const {
    if (pattern.size() != kQubits) throw std::invalid_argument("SmallCodeSweep: pattern must have 9 qubits");
    // Three-qubit blocks: table[b][letters of qubits 3b..3b+2].
    double table[3][64];
    for (size_t b = 0; b < 3; ++b) {
        QubitChannel ch[3];
        for (size_t k = 0; k < 3; ++k) ch[k] = permute_channel(physical, pattern[3 * b + k]);
        for (size_t idx = 0; idx < 64; ++idx) {
            table[b][idx] = ch[0][static_cast<Letter>(idx & 3)] * ch[1][static_cast<Letter>((idx >> 2) & 3)] *
                            ch[2][static_cast<Letter>(idx >> 4)];
        }
    }
    std::vector<double> acc(256 * 4, 0.0);
    const size_t total = coset_.size();
    for (size_t i = 0; i < total; ++i) {
        acc[coset_[i]] += table[0][i & 63] * table[1][(i >> 6) & 63] * table[2][i >> 12];
    }
    double success = 0.0;
    for (size_t s = 0; s < 256; ++s) success += *std::max_element(acc.begin() + 4 * s, acc.begin() + 4 * s + 4);
    return 1.0 - success;
}

std::vector<double> sweep_all_patterns(const QubitChannel& physical, unsigned threads) {
    static const SmallCodeSweep sweep;
    std::vector<double> out(SmallCodeSweep::kPatterns);
    parallel_for(out.size(), threads, [&](size_t i) {
        out[i] = sweep.failure_probability(SmallCodeSweep::pattern_at(static_cast<uint32_t>(i)), physical);
    });
    return out;
}

}  // namespace cdsc
