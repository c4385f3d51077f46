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

#include "cdsc/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdsc {

LogicalClass CosetProbabilities::argmax() const {
    // Values within a relative 1e-9 of the maximum count as ties, so that
    // decoders differing only by rounding resolve them identically. Class
    // values already follow the tie-break order.
    double top = *std::max_element(prob.begin(), prob.end());
    size_t best = 0;
    while (prob[best] < top * (1.0 - kTieTolerance)) ++best;
    return static_cast<LogicalClass>(best);
}

bool CosetProbabilities::normalize() {
    double top = -std::numeric_limits<double>::infinity();
    for (double v : log_weight) top = std::max(top, v);
    if (!std::isfinite(top)) {
        prob.fill(0.0);
        return false;
    }
    double total = 0.0;
    for (size_t c = 0; c < 4; ++c) {
        prob[c] = std::exp(log_weight[c] - top);
        total += prob[c];
    }
    for (double& v : prob) v /= total;
    return true;
}

DecoderKind decoder_from_string(std::string_view name) {
    if (name == "exact") return DecoderKind::Exact;
    if (name == "tn") return DecoderKind::TensorNetwork;
    throw std::invalid_argument("unknown decoder '" + std::string(name) + "' (expected exact or tn)");
}

std::string decoder_name(DecoderKind k) { return k == DecoderKind::Exact ? "exact" : "tn"; }

PauliOp pure_error(const DeformedCode& code, const Syndrome& s) {
    const SurfaceCodeLayout& layout = code.layout();
    if (s.size() != layout.num_generators()) {
        throw std::invalid_argument("pure_error: syndrome has " + std::to_string(s.size()) + " bits, code has " +
                                    std::to_string(layout.num_generators()) + " generators");
    }
    PauliOp css(layout.num_qubits());
    auto xs = css.xs_mut();
    auto zs = css.zs_mut();
    for (size_t g = 0; g < s.size(); ++g) {
        if (!s[g]) continue;
        auto& half = layout.face(g).type == CheckType::X ? zs : xs;
        for (size_t q : layout.pure_error_path(g)) {
            half[q / 64] ^= uint64_t{1} << (q % 64);
        }
    }
    return code.to_css_frame(css);
}

int convergence_reference_chi(int chi) {
    if (chi > 8) return chi - 8;
    return std::max(1, chi / 2);
}

DecodeOutcome decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s,
                     const DecoderSpec& spec) {
    if (spec.kind == DecoderKind::Exact) return exact_ml_decode(code, field, s);
    return tn_ml_decode(code, field, s, spec.chi, spec.check_convergence);
}

bool decode_failure(const DeformedCode& code, const NoiseField& field, const PauliOp& e, const DecoderSpec& spec) {
    DecodeOutcome out = decode(code, field, code.syndrome(e), spec);
    auto cls = code.logical_class(e * out.correction);
    if (!cls) throw std::logic_error("decode_failure: correction does not match the syndrome");
    return *cls != LogicalClass::I;
}

}  // namespace cdsc
