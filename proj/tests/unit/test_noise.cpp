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

#include <gtest/gtest.h>

#include "support/random_ops.hpp"

using namespace cdsc;
using cdsc::testing::random_pattern;
using cdsc::testing::random_pauli;

TEST(noise, rates_examples) {
    QubitChannel dep = rates_from({0.01, 0.5});
    EXPECT_DOUBLE_EQ(dep.p_i(), 0.99);
    EXPECT_NEAR(dep.p_x(), 0.01 / 3, 1e-18);
    EXPECT_NEAR(dep.p_y(), 0.01 / 3, 1e-18);
    EXPECT_NEAR(dep.p_z(), 0.01 / 3, 1e-18);
    QubitChannel biased = rates_from({0.01, 500});
    EXPECT_DOUBLE_EQ(biased.p_z(), 0.01 * 500 / 501);
    EXPECT_DOUBLE_EQ(biased.p_x(), 0.01 / 1002);
    EXPECT_DOUBLE_EQ(biased.p_y(), 0.01 / 1002);
    QubitChannel inf = rates_from({0.3, kInfiniteBias});
    EXPECT_EQ(inf, QubitChannel::from_xyz(0.0, 0.0, 0.3));
    EXPECT_DOUBLE_EQ(inf.p_i(), 0.7);
    EXPECT_THROW(rates_from({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(rates_from({0.1, 0.2}), std::invalid_argument);
}

TEST(noise, channel_invariants) {
    for (double p : {0.0, 0.001, 0.1, 0.45, 0.9}) {
        for (double eta : {0.5, 1.0, 3.0, 100.0, 1e8, kInfiniteBias}) {
            QubitChannel ch = rates_from({p, eta});
            double sum = 0.0;
            for (double v : ch.prob) {
                EXPECT_GE(v, 0.0);
                sum += v;
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
            EXPECT_NEAR(ch.p_x() + ch.p_y() + ch.p_z(), p, 1e-15);
            EXPECT_EQ(ch.p_x(), ch.p_y());
            if (!std::isinf(eta)) EXPECT_NEAR(ch.p_x(), ch.p_z() / (2 * eta), 1e-15);
        }
    }
}

TEST(noise, eta_text_round_trip) {
    EXPECT_TRUE(std::isinf(parse_eta("inf")));
    EXPECT_EQ(format_eta(kInfiniteBias), "inf");
    for (double eta : {0.5, 3.0, 100.0, 1e8, 0.1 + 0.2}) {
        EXPECT_EQ(parse_eta(format_eta(eta)), eta);
    }
    EXPECT_THROW(parse_eta("lots"), std::invalid_argument);
    EXPECT_THROW(parse_eta("1e3x"), std::invalid_argument);
}

TEST(noise, permute_field_examples) {
    QubitChannel base = QubitChannel::from_xyz(0.01, 0.02, 0.03);
    NoiseField f = permute_field(base, DeformationPattern::from_string("IHY"));
    EXPECT_EQ(f[0], base);
    EXPECT_EQ(f[1], QubitChannel::from_xyz(0.03, 0.02, 0.01));
    EXPECT_EQ(f[2], QubitChannel::from_xyz(0.01, 0.03, 0.02));
    EXPECT_FALSE(f.is_uniform());
    EXPECT_TRUE(permute_field(base, DeformationPattern(5)).is_uniform());
}

TEST(noise, sampling) {
    Rng rng(1);
    NoiseField zero = NoiseField::uniform(rates_from({0.0, 0.5}), 50);
    for (int k = 0; k < 20; ++k) EXPECT_TRUE(sample_error(zero, rng).is_identity());
    NoiseField inf = NoiseField::uniform(rates_from({0.4, kInfiniteBias}), 200);
    for (int k = 0; k < 20; ++k) {
        WeightCounts w = weight_decomposition(sample_error(inf, rng));
        EXPECT_EQ(w.x + w.y, 0u);
    }
    const size_t n = 100000;
    QubitChannel ch = rates_from({0.1, 0.5});
    WeightCounts w = weight_decomposition(sample_error(NoiseField::uniform(ch, n), rng));
    double expect = n * ch.p_x();
    double sigma = std::sqrt(n * ch.p_x() * (1 - ch.p_x()));
    EXPECT_LT(std::abs(w.x - expect), 3 * sigma);
    EXPECT_LT(std::abs(w.y - expect), 3 * sigma);
    EXPECT_LT(std::abs(w.z - expect), 3 * sigma);
    Rng a(8), b(8);
    EXPECT_EQ(sample_error(NoiseField::uniform(ch, 300), a), sample_error(NoiseField::uniform(ch, 300), b));
}

TEST(noise, log_prob_examples) {
    const size_t n = 25;
    QubitChannel ch = rates_from({0.05, 10.0});
    NoiseField field = NoiseField::uniform(ch, n);
    EXPECT_NEAR(log_prob(field, PauliOp(n)), n * std::log(0.95), 1e-12);
    // Two X operators and one Z operator on an otherwise idle lattice.
    PauliOp e(n);
    e.set(3, Letter::X);
    e.set(7, Letter::X);
    e.set(11, Letter::Z);
    EXPECT_NEAR(log_prob(field, e), std::log(ch.p_x() * ch.p_x() * ch.p_z()) + (n - 3) * std::log(0.95), 1e-12);
    PauliOp y(n);
    y.set(0, Letter::Y);
    EXPECT_EQ(log_prob(NoiseField::uniform(rates_from({0.1, kInfiniteBias}), n), y),
              -std::numeric_limits<double>::infinity());
}

TEST(noise, heisenberg_pictures_agree) {
    Rng rng(3);
    QubitChannel base = rates_from({0.07, 20.0});
    for (int k = 0; k < 200; ++k) {
        size_t n = 1 + rng() % 70;
        DeformationPattern s = random_pattern(n, rng);
        PauliOp e = random_pauli(n, rng);
        EXPECT_NEAR(log_prob(permute_field(base, s), e), log_prob(NoiseField::uniform(base, n), permute_pauli(s, e)),
                    1e-12);
    }
}

TEST(noise, hashing_bound_values) {
    EXPECT_EQ(hashing_bound(kInfiniteBias), 0.5);
    // Independent evaluation: the depolarizing root of
    // -(1-p) log2(1-p) - p log2(p/3) = 1.
    double lo = 0.1, hi = 0.3;
    for (int i = 0; i < 200; ++i) {
        double p = 0.5 * (lo + hi);
        double h = -(1 - p) * std::log2(1 - p) - p * std::log2(p / 3);
        (h < 1 ? lo : hi) = p;
    }
    EXPECT_NEAR(hashing_bound(0.5), lo, 1e-9);
    EXPECT_NEAR(hashing_bound(0.5), 0.1893, 5e-5);
    double prev = 0.0;
    for (double eta : {0.5, 1.0, 3.0, 10.0, 30.0, 100.0, 1e3, 1e6}) {
        double hb = hashing_bound(eta);
        EXPECT_GT(hb, prev);
        EXPECT_LT(hb, 0.5);
        prev = hb;
    }
}
