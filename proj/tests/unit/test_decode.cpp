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

#include <gtest/gtest.h>

#include "cdsc/error.hpp"
#include "support/oracles.hpp"
#include "support/random_ops.hpp"

using namespace cdsc;
using cdsc::testing::random_pattern;

namespace {

NoiseField iid(double p, double eta, size_t n) { return NoiseField::uniform(rates_from({p, eta}), n); }

Syndrome syndrome_from_bits(uint64_t bits, size_t m) {
    Syndrome s(m);
    for (size_t g = 0; g < m; ++g) s[g] = (bits >> g) & 1;
    return s;
}

NoiseField random_field(size_t n, Rng& rng) {
    std::vector<QubitChannel> chans;
    for (size_t q = 0; q < n; ++q) {
        double a = 0.01 + 0.1 * uniform01(rng), b = 0.01 + 0.1 * uniform01(rng), c = 0.01 + 0.1 * uniform01(rng);
        chans.push_back(QubitChannel::from_xyz(a, b, c));
    }
    return NoiseField(std::move(chans));
}

}  // namespace

TEST(decode, pure_error_matches_syndrome) {
    Rng rng(4);
    for (int L : {3, 5, 9}) {
        size_t n = static_cast<size_t>(L * L);
        DeformedCode code(L, random_pattern(n, rng));
        EXPECT_TRUE(pure_error(code, Syndrome(code.num_generators(), 0)).is_identity());
        for (int k = 0; k < 30; ++k) {
            PauliOp e = cdsc::testing::random_pauli(n, rng);
            Syndrome s = code.syndrome(e);
            PauliOp pe = pure_error(code, s);
            EXPECT_EQ(code.syndrome(pe), s);
            EXPECT_TRUE(code.logical_class(e * pe).has_value());
            EXPECT_EQ(pe, pure_error(code, s));
        }
    }
    DeformedCode css(3, DeformationPattern(9));
    EXPECT_THROW(pure_error(css, Syndrome(3, 0)), std::invalid_argument);
}

TEST(decode, exact_matches_brute_force_cosets) {
    Rng rng(10);
    for (int trial = 0; trial < 6; ++trial) {
        DeformedCode code(3, random_pattern(9, rng));
        NoiseField field = trial % 2 ? random_field(9, rng) : iid(0.1, trial == 2 ? 0.5 : 30.0, 9);
        auto table = cdsc::testing::brute_force_cosets(code, field);
        EXPECT_EQ(table.size(), 256u);
        for (const auto& [s, probs] : table) {
            DecodeOutcome out = exact_ml_decode(code, field, s);
            double total = probs[0] + probs[1] + probs[2] + probs[3];
            for (size_t c = 0; c < 4; ++c) {
                EXPECT_NEAR(out.cosets.prob[c], probs[c] / total, 1e-12);
                EXPECT_NEAR(out.cosets.log_weight[c], std::log(probs[c]), 1e-9);
            }
            EXPECT_EQ(code.syndrome(out.correction), s);
            EXPECT_TRUE(out.converged);
        }
    }
}

TEST(decode, exact_decoder_attains_optimal_failure_rate) {
    DeformedCode code(3, DeformationPattern(9));
    NoiseField field = iid(0.1, 0.5, 9);
    auto table = cdsc::testing::brute_force_cosets(code, field);
    double fail = 0.0;
    for (const auto& [s, probs] : table) {
        DecodeOutcome out = exact_ml_decode(code, field, s);
        for (size_t c = 0; c < 4; ++c) {
            if (c != static_cast<size_t>(out.chosen)) fail += probs[c];
        }
    }
    EXPECT_NEAR(fail, cdsc::testing::optimal_failure(table), 1e-14);
    // Failure counted error by error agrees.
    double direct = 0.0;
    DecoderSpec spec{DecoderKind::Exact};
    cdsc::testing::for_each_pauli(9, [&](const PauliOp& e) {
        if (e.weight() <= 3 && decode_failure(code, field, e, spec)) direct += std::exp(log_prob(field, e));
    });
    double tail = 0.0;  // probability mass of weight >= 4 errors bounds the difference
    cdsc::testing::for_each_pauli(9, [&](const PauliOp& e) {
        if (e.weight() > 3) tail += std::exp(log_prob(field, e));
    });
    EXPECT_LE(std::abs(direct - fail), tail + 1e-12);
}

TEST(decode, exact_examples) {
    DeformedCode code(3, random_pattern(9, *std::make_unique<Rng>(3)));
    NoiseField tiny = iid(1e-9, 0.5, 9);
    DecodeOutcome out = exact_ml_decode(code, tiny, Syndrome(8, 0));
    EXPECT_EQ(out.chosen, LogicalClass::I);
    EXPECT_GT(out.cosets[LogicalClass::I], 1 - 1e-12);
    DecoderSpec spec{DecoderKind::Exact};
    EXPECT_TRUE(decode_failure(code, tiny, code.logical_rep(LogicalClass::Z), spec));
    EXPECT_FALSE(decode_failure(code, tiny, code.generator(2) * code.generator(5), spec));
    EXPECT_THROW(exact_ml_decode(DeformedCode(7, DeformationPattern(49)), iid(0.1, 1, 49), Syndrome(48, 0)),
                 UnsupportedError);
}

TEST(decode, depolarizing_cosets_are_pattern_covariant) {
    Rng rng(21);
    NoiseField field = iid(0.12, 0.5, 9);
    DeformedCode css(3, DeformationPattern(9));
    for (int trial = 0; trial < 10; ++trial) {
        DeformedCode code(3, random_pattern(9, rng));
        for (int k = 0; k < 20; ++k) {
            PauliOp e = cdsc::testing::random_pauli(9, rng);
            auto a = exact_ml_decode(code, field, code.syndrome(e)).cosets.prob;
            auto b = exact_ml_decode(css, field, css.syndrome(permute_pauli(code.pattern(), e))).cosets.prob;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            for (size_t c = 0; c < 4; ++c) EXPECT_NEAR(a[c], b[c], 1e-13);
        }
    }
}

TEST(decode, tn_exact_at_L3_all_syndromes) {
    Rng rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        DeformedCode code(3, trial == 0 ? DeformationPattern(9) : random_pattern(9, rng));
        double eta = std::array<double, 4>{0.5, 10.0, 1e4, kInfiniteBias}[trial % 4];
        NoiseField field = trial == 5 ? random_field(9, rng) : iid(0.15, eta, 9);
        double worst = 0.0;
        for (uint64_t bits = 0; bits < 256; ++bits) {
            Syndrome s = syndrome_from_bits(bits, 8);
            DecodeOutcome ex = exact_ml_decode(code, field, s);
            DecodeOutcome tn = tn_ml_decode(code, field, s, kUnboundedChi);
            EXPECT_EQ(ex.converged, tn.converged);
            if (!ex.converged) continue;
            for (size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(ex.cosets.prob[c] - tn.cosets.prob[c]));
            EXPECT_EQ(ex.chosen, tn.chosen);
            EXPECT_EQ(ex.correction, tn.correction);
        }
        EXPECT_LE(worst, 1e-10) << code.pattern().str() << " eta=" << eta;
    }
}

TEST(decode, tn_examples) {
    DeformedCode code(5, DeformationPattern(25));
    NoiseField zero = iid(0.0, 0.5, 25);
    DecodeOutcome out = tn_ml_decode(code, zero, Syndrome(24, 0), 4);
    EXPECT_EQ(out.cosets[LogicalClass::I], 1.0);
    EXPECT_THROW(tn_ml_decode(code, zero, Syndrome(24, 0), 0), std::invalid_argument);
    EXPECT_EQ(convergence_reference_chi(56), 48);
    EXPECT_EQ(convergence_reference_chi(6), 3);
    EXPECT_EQ(convergence_reference_chi(1), 1);
}

TEST(decode, tn_matches_exact_at_L5) {
    Rng rng(8);
    int agree = 0, total = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        DeformedCode code(5, random_pattern(25, rng));
        NoiseField field = iid(0.15, trial % 2 ? 10.0 : 0.5, 25);
        for (int k = 0; k < 5; ++k) {
            PauliOp e = sample_error(field, rng);
            Syndrome s = code.syndrome(e);
            DecodeOutcome ex = exact_ml_decode(code, field, s);
            DecodeOutcome tn = tn_ml_decode(code, field, s, kUnboundedChi, false);
            for (size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(ex.cosets.prob[c] - tn.cosets.prob[c]));
            DecodeOutcome small = tn_ml_decode(code, field, s, 8, false);
            agree += small.chosen == ex.chosen;
            ++total;
        }
    }
    EXPECT_LE(worst, 1e-9);
    EXPECT_GE(agree, total - 1);
}
