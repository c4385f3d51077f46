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
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/noise.hpp"

namespace cdsc {

/// Failure probability of the maximum-likelihood decoder,
/// 1 - sum over syndromes of the largest coset probability, by running the
/// exact decoder on every syndrome. Needs n <= 25; practical for L = 3.
double exact_failure_probability(const DeformedCode& code, const NoiseField& field);

/// Exact ML failure probabilities of 3x3 codes, with the CSS-frame coset of
/// every one of the 4^9 errors tabulated once. A deformed code under iid
/// noise equals the CSS code under the per-qubit permuted noise.
class SmallCodeSweep {
   public:
    static constexpr size_t kQubits = 9;
    static constexpr uint32_t kPatterns = 19683;  // 3^9

    SmallCodeSweep();
    double failure_probability(const DeformationPattern& pattern, const QubitChannel& physical) const;
    /// Pattern with base-3 digit q of `index` giving qubit q's deformation.
    static DeformationPattern pattern_at(uint32_t index);

   private:
    std::vector<uint16_t> coset_;  // error index -> syndrome * 4 + class
};

/// failure_probability for every 3x3 pattern, in pattern_at order.
std::vector<double> sweep_all_patterns(const QubitChannel& physical, unsigned threads);

}  // namespace cdsc
