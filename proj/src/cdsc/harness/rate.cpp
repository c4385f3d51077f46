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

#include "cdsc/harness/rate.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "cdsc/error.hpp"
#include "cdsc/parallel.hpp"

namespace cdsc {

namespace {

constexpr size_t kChunk = 64;

template <typename E>
[[noreturn]] void rethrow_with_trial(const E& e, size_t trial) {
    throw E("trial " + std::to_string(trial) + ": " + e.what());
}

}  // namespace

double jackknife_std_error(const std::vector<double>& values) {
    const size_t t = values.size();
    if (t < 2) return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (double v : values) sum += v;
    // Leave-one-out means theta_i = (sum - v_i) / (t - 1).
    const double n1 = static_cast<double>(t - 1);
    double mean_theta = 0.0;
    for (double v : values) mean_theta += (sum - v) / n1;
    mean_theta /= static_cast<double>(t);
    double ss = 0.0;
    for (double v : values) {
        double d = (sum - v) / n1 - mean_theta;
        ss += d * d;
    }
    return std::sqrt(n1 / static_cast<double>(t) * ss);
}

RateEstimate estimate_logical_rate(const RateRequest& req) {
    if (req.trials == 0) throw std::invalid_argument("estimate_logical_rate: trials must be positive");
    req.noise.validate();
    if (req.L < 3 || req.L % 2 == 0) throw std::invalid_argument("estimate_logical_rate: L must be odd and >= 3");
    if (req.code.is_family()) req.code.family.validate();

    const auto layout = std::make_shared<const SurfaceCodeLayout>(req.L);
    const size_t n = layout->num_qubits();
    const NoiseField field = NoiseField::uniform(rates_from(req.noise), n);
    std::optional<DeformedCode> fixed;
    if (!req.code.is_family()) fixed.emplace(layout, req.code.fixed_pattern(req.L));

    std::vector<uint8_t> failed(req.trials, 0), converged(req.trials, 1);
    if (req.trace) req.trace->assign(req.trials, DecodeTrace{});
    const size_t chunks = (req.trials + kChunk - 1) / kChunk;
    parallel_for(chunks, req.threads, [&](size_t chunk) {
        const size_t end = std::min(req.trials, (chunk + 1) * kChunk);
        for (size_t t = chunk * kChunk; t < end; ++t) {
            try {
                Rng rng = make_rng(req.seed, req.stream, t);
                std::optional<DeformedCode> sampled;
                if (!fixed) sampled.emplace(layout, sample_pattern(req.code.family, n, rng));
                const DeformedCode& code = fixed ? *fixed : *sampled;
                PauliOp e = sample_error(field, rng);
                Syndrome s = code.syndrome(e);
                DecodeOutcome out = decode(code, field, s, req.decoder);
                auto cls = code.logical_class(e * out.correction);
                if (!cls) throw std::logic_error("correction does not match the syndrome");
                failed[t] = *cls != LogicalClass::I;
                converged[t] = out.converged;
                if (req.trace) (*req.trace)[t] = {std::move(s), out.cosets, out.chosen, out.converged, failed[t] != 0};
            } catch (const UnsupportedError& e) {
                rethrow_with_trial(e, t);
            } catch (const NumericError& e) {
                rethrow_with_trial(e, t);
            } catch (const std::invalid_argument& e) {
                rethrow_with_trial(e, t);
            }
        }
    });

    RateEstimate est;
    est.trials = req.trials;
    size_t conv = 0;
    std::vector<double> values(req.trials);
    for (size_t t = 0; t < req.trials; ++t) {
        est.failures += failed[t];
        conv += converged[t];
        values[t] = failed[t];
    }
    est.p_logical = static_cast<double>(est.failures) / static_cast<double>(req.trials);
    est.std_error = req.trials > 1 ? jackknife_std_error(values) : 0.0;
    est.converged_fraction = static_cast<double>(conv) / static_cast<double>(req.trials);
    return est;
}

}  // namespace cdsc
