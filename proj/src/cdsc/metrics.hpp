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

#include <optional>
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/decode.hpp"
#include "cdsc/noise.hpp"
#include "cdsc/random.hpp"

namespace cdsc {

/// log(p_Z / (1 - p)); the log-probability cost of one Z relative to one I.
/// Rejects p outside (0,1) and infinite bias.
double normalizer_N(double p, double eta);

struct MostLikelyOperator {
    PauliOp op;
    LogicalClass cls = LogicalClass::I;
    double log_prob = 0.0;
};

/// Most probable operator implementing a nontrivial logical. Equal
/// probabilities are resolved by the textual encoding (I < X < Y < Z at the
/// first differing qubit). Enumerates the stabilizer group, so L <= 5.
MostLikelyOperator most_likely_logical(const DeformedCode& code, const NoiseField& field);

/// Most probable operator on which the exact decoder fails. L = 3 only.
MostLikelyOperator most_likely_noncorrectable(const DeformedCode& code, const NoiseField& field);

struct EffectiveDistanceReport {
    double d_prime = 0.0;
    std::optional<double> t_prime;
    double log_p_log = 0.0;
    std::optional<double> log_p_cor;
    double normalizer = 0.0;
    MostLikelyOperator logical_witness;
    std::optional<MostLikelyOperator> noncorrectable_witness;
};

/// d' and (for L = 3) t' under IID noise with the given parameters.
EffectiveDistanceReport effective_distance(const DeformedCode& code, const BiasedNoiseParams& noise);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    size_t samples = 0;
};

/// Mean and standard error of d'(5) - d'(3), where each sample draws
/// independent L = 3 and L = 5 patterns from the family. Sample i uses the
/// streams derive_seed(seed, 3, i) and derive_seed(seed, 5, i), so results do
/// not depend on the thread count.
MeanEstimate delta_dprime(const FamilyParams& family, const BiasedNoiseParams& noise, size_t samples, uint64_t seed,
                          unsigned threads = 1);

}  // namespace cdsc
