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

#include "cdsc/decode.hpp"
#include "cdsc/harness/config.hpp"
#include "cdsc/noise.hpp"

namespace cdsc {

/// Jackknife standard error of the sample mean (leave-one-out). NaN for fewer
/// than two values.
double jackknife_std_error(const std::vector<double>& values);

struct RateEstimate {
    double p_logical = 0.0;
    double std_error = 0.0;  // jackknife
    size_t trials = 0;
    size_t failures = 0;
    double converged_fraction = 1.0;
};

/// One decoded trial, for optional trace output.
struct DecodeTrace {
    Syndrome syndrome;
    CosetProbabilities cosets;
    LogicalClass chosen = LogicalClass::I;
    bool converged = true;
    bool failed = false;
};

struct RateRequest {
    CodeSpec code;
    int L = 3;
    BiasedNoiseParams noise;
    DecoderSpec decoder;
    size_t trials = 0;
    uint64_t seed = 1;
    /// Separates independent estimates made from one master seed.
    uint64_t stream = 0;
    unsigned threads = 1;
    /// When set, resized to `trials` and filled in trial order.
    std::vector<DecodeTrace>* trace = nullptr;
};

/// Trial t draws everything from make_rng(seed, stream, t): first the pattern
/// (family codes only), then the error. The decoder sees the physical noise.
/// Output does not depend on the thread count. Decoder errors are rethrown
/// with the trial index prepended.
RateEstimate estimate_logical_rate(const RateRequest& request);

}  // namespace cdsc
