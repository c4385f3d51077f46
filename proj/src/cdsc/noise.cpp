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

#include "cdsc/noise.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace cdsc {

void BiasedNoiseParams::validate() const {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("error rate p must lie in [0, 1), got " + std::to_string(p));
    }
    if (!(eta >= 0.5)) {
        throw std::invalid_argument("bias eta must be at least 0.5 (or inf), got " + std::to_string(eta));
    }
}

double parse_eta(std::string_view text) {
    if (text == "inf" || text == "INF" || text == "Inf" || text == "infinity") {
        return kInfiniteBias;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("cannot parse bias '" + std::string(text) + "' (expected a number or inf)");
    }
    return v;
}

std::string format_eta(double eta) {
    if (std::isinf(eta)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", eta);
    return buf;
}

QubitChannel QubitChannel::from_xyz(double px, double py, double pz) {
    QubitChannel ch;
    ch.prob[static_cast<size_t>(Letter::X)] = px;
    ch.prob[static_cast<size_t>(Letter::Y)] = py;
    ch.prob[static_cast<size_t>(Letter::Z)] = pz;
    ch.prob[static_cast<size_t>(Letter::I)] = 1.0 - (px + py + pz);
    return ch;
}

QubitChannel rates_from(const BiasedNoiseParams& params) {
    params.validate();
    const double p = params.p;
    if (params.infinite_bias()) {
        return QubitChannel::from_xyz(0.0, 0.0, p);
    }
    const double eta = params.eta;
    const double pxy = p / (2.0 * (1.0 + eta));
    const double pz = p * eta / (1.0 + eta);
    QubitChannel ch = QubitChannel::from_xyz(pxy, pxy, pz);
    ch.prob[static_cast<size_t>(Letter::I)] = 1.0 - p;
    return ch;
}

QubitChannel permute_channel(const QubitChannel& base, Deformation d) {
    QubitChannel out;
    for (uint8_t v = 0; v < 4; ++v) {
        auto l = static_cast<Letter>(v);
        out.prob[v] = base[apply(d, l)];
    }
    return out;
}

NoiseField::NoiseField(std::vector<QubitChannel> channels) : channels_(std::move(channels)) {
    for (const auto& ch : channels_) {
        if (!(ch == channels_.front())) {
            uniform_ = false;
            break;
        }
    }
}

NoiseField NoiseField::uniform(const QubitChannel& channel, size_t num_qubits) {
    return NoiseField(std::vector<QubitChannel>(num_qubits, channel));
}

NoiseField permute_field(const QubitChannel& base, const DeformationPattern& pattern) {
    return permute_field(NoiseField::uniform(base, pattern.size()), pattern);
}

NoiseField permute_field(const NoiseField& field, const DeformationPattern& pattern) {
    if (field.size() != pattern.size()) {
        throw std::invalid_argument("permute_field: field and pattern lengths differ");
    }
    std::vector<QubitChannel> out;
    out.reserve(field.size());
    for (size_t q = 0; q < field.size(); ++q) {
        out.push_back(permute_channel(field[q], pattern[q]));
    }
    return NoiseField(std::move(out));
}

PauliOp sample_error(const NoiseField& field, Rng& rng) {
    PauliOp e(field.size());
    for (size_t q = 0; q < field.size(); ++q) {
        const QubitChannel& ch = field[q];
        double u = uniform01(rng);
        double cx = ch.p_x();
        double cy = cx + ch.p_y();
        double cz = cy + ch.p_z();
        if (u < cx) {
            e.set(q, Letter::X);
        } else if (u < cy) {
            e.set(q, Letter::Y);
        } else if (u < cz) {
            e.set(q, Letter::Z);
        }
    }
    return e;
}

double log_prob(const NoiseField& field, const PauliOp& e) {
    if (field.size() != e.size()) {
        throw std::invalid_argument("log_prob: field and operator lengths differ");
    }
    double total = 0.0;
    for (size_t q = 0; q < field.size(); ++q) {
        double pr = field[q][e.get(q)];
        if (pr <= 0.0) return -std::numeric_limits<double>::infinity();
        total += std::log(pr);
    }
    return total;
}

double channel_entropy(const QubitChannel& ch) {
    double h = 0.0;
    for (double pr : ch.prob) {
        if (pr > 0.0) h -= pr * std::log2(pr);
    }
    return h;
}

double hashing_bound(double eta) {
    if (!(eta >= 0.5)) {
        throw std::invalid_argument("hashing_bound: bias must be at least 0.5, got " + std::to_string(eta));
    }
    if (std::isinf(eta)) return 0.5;
    // Entropy increases monotonically in p on [0, 1/2] and exceeds one bit at
    // p = 1/2 for any finite bias.
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if (channel_entropy(rates_from({mid, eta})) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace cdsc
