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

#include "cdsc/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cdsc/error.hpp"
#include "support/oracles.hpp"
#include "support/random_ops.hpp"

using namespace cdsc;
using cdsc::testing::random_pattern;

namespace {

void expect_same_log(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) {
        EXPECT_EQ(a, b);
    } else {
        EXPECT_NEAR(a, b, 1e-10);
    }
}

NoiseField iid(double p, double eta, size_t n) { return NoiseField::uniform(rates_from({p, eta}), n); }

DeformedCode preset_code(Preset preset, int L) { return DeformedCode(L, preset_pattern(preset, L)); }

// 180-degree rotation maps qubit index q to n-1-q and preserves the layout.
DeformationPattern rotated(const DeformationPattern& pat) {
    std::vector<Deformation> v(pat.per_qubit().rbegin(), pat.per_qubit().rend());
    return DeformationPattern(std::move(v));
}

}  // namespace

TEST(metrics, normalizer_examples) {
    EXPECT_NEAR(normalizer_N(0.01, 0.5), std::log((0.01 / 3) / 0.99), 1e-14);
    EXPECT_LT(normalizer_N(0.01, 500), 0.0);
    QubitChannel ch = rates_from({0.07, 4.0});
    EXPECT_NEAR(normalizer_N(0.07, 4.0), std::log(ch.p_z() / ch.p_i()), 1e-14);
    EXPECT_THROW(normalizer_N(0.01, kInfiniteBias), std::invalid_argument);
    EXPECT_THROW(normalizer_N(0.0, 1.0), std::invalid_argument);
}

TEST(metrics, most_likely_logical_matches_brute_force) {
    Rng rng(21);
    const std::pair<double, double> noise[] = {{0.01, 0.5}, {0.05, 10.0}, {0.02, 500.0}, {0.1, kInfiniteBias}};
    for (int trial = 0; trial < 6; ++trial) {
        DeformedCode code(3, random_pattern(9, rng));
        for (auto [p, eta] : noise) {
            NoiseField f = iid(p, eta, 9);
            auto got = most_likely_logical(code, f);
            auto [op, lp] = cdsc::testing::brute_force_most_likely_logical(code, f);
            EXPECT_EQ(got.op.str(), op.str()) << code.pattern().str() << " p=" << p << " eta=" << eta;
            expect_same_log(got.log_prob, lp);
            EXPECT_EQ(code.logical_class(got.op), got.cls);
        }
    }
}

TEST(metrics, most_likely_logical_general_field) {
    Rng rng(5);
    DeformedCode code(3, random_pattern(9, rng));
    std::vector<QubitChannel> chans;
    for (size_t q = 0; q < 9; ++q) {
        chans.push_back(QubitChannel::from_xyz(0.01 + 0.05 * uniform01(rng), 0.01 + 0.05 * uniform01(rng),
                                               0.01 + 0.05 * uniform01(rng)));
    }
    NoiseField f(chans);
    auto got = most_likely_logical(code, f);
    auto [op, lp] = cdsc::testing::brute_force_most_likely_logical(code, f);
    EXPECT_EQ(got.op.str(), op.str());
    expect_same_log(got.log_prob, lp);
}

TEST(metrics, most_likely_logical_examples) {
    const double p = 0.01;
    auto dep = most_likely_logical(preset_code(Preset::CSS, 3), iid(p, 0.5, 9));
    EXPECT_EQ(dep.op.weight(), 3u);
    EXPECT_NEAR(dep.log_prob, 3 * std::log(p / 3) + 6 * std::log1p(-p), 1e-12);

    auto inf = most_likely_logical(preset_code(Preset::CSS, 3), iid(0.1, kInfiniteBias, 9));
    EXPECT_EQ(inf.op.str(), "IIZIIZIIZ");  // text order prefers the last column
    EXPECT_NEAR(inf.log_prob, 3 * std::log(0.1) + 6 * std::log(0.9), 1e-12);

    // XY code: L-1 Z's and a single X or Y along a boundary.
    for (int L : {3, 5}) {
        auto xy = most_likely_logical(preset_code(Preset::XY, L), iid(0.01, 100.0, static_cast<size_t>(L * L)));
        auto w = weight_decomposition(xy.op);
        EXPECT_EQ(w.z, static_cast<size_t>(L - 1)) << xy.op.str();
        EXPECT_EQ(w.x + w.y, 1u) << xy.op.str();
    }
}

TEST(metrics, dprime_equals_distance_at_depolarizing) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        DeformedCode code(3, random_pattern(9, rng));
        auto r = effective_distance(code, {0.01, 0.5});
        EXPECT_NEAR(r.d_prime, 3.0, 1e-10);
        ASSERT_TRUE(r.t_prime);
        // An ML decoder corrects every single-qubit error at d=3, so the most
        // likely uncorrectable error has weight 2.
        EXPECT_NEAR(*r.t_prime, 2.0, 1e-10);
    }
    for (int trial = 0; trial < 2; ++trial) {
        DeformedCode code(5, random_pattern(25, rng));
        auto r = effective_distance(code, {0.01, 0.5});
        EXPECT_NEAR(r.d_prime, static_cast<double>(code_distance(code)), 1e-10);
        EXPECT_FALSE(r.t_prime);
    }
}

TEST(metrics, xy_closed_form) {
    const double p = 0.01, eta = 500.0;
    auto r = effective_distance(preset_code(Preset::XY, 3), {p, eta});
    const double N = normalizer_N(p, eta);
    EXPECT_NEAR(r.d_prime, 3.0 - std::log(2 * eta) / N, 1e-9);
    EXPECT_NEAR(r.d_prime, 4.50, 0.01);
}

TEST(metrics, noncorrectable_matches_brute_force) {
    Rng rng(13);
    const std::pair<double, double> noise[] = {{0.01, 0.5}, {0.05, 30.0}};
    for (int trial = 0; trial < 3; ++trial) {
        DeformedCode code(3, random_pattern(9, rng));
        for (auto [p, eta] : noise) {
            NoiseField f = iid(p, eta, 9);
            auto got = most_likely_noncorrectable(code, f);
            auto [op, lp] = cdsc::testing::brute_force_most_likely_noncorrectable(code, f);
            EXPECT_NEAR(got.log_prob, lp, 1e-10) << code.pattern().str();
            EXPECT_EQ(got.op.str(), op.str());
            EXPECT_NE(got.cls, LogicalClass::I);
        }
    }
}

TEST(metrics, report_properties) {
    Rng rng(17);
    const std::pair<double, double> noise[] = {{0.01, 0.5}, {0.01, 100.0}, {0.03, 1e4}};
    for (int trial = 0; trial < 8; ++trial) {
        DeformationPattern pat = random_pattern(9, rng);
        DeformedCode code(3, pat);
        DeformedCode turned(3, rotated(pat));
        for (auto [p, eta] : noise) {
            auto r = effective_distance(code, {p, eta});
            EXPECT_GE(*r.t_prime, r.d_prime / 2 - 1e-12);
            EXPECT_NEAR(std::exp(r.log_p_log), std::pow(1 - p, 9) * std::exp(r.normalizer * r.d_prime), 1e-15);
            auto cls = code.logical_class(r.logical_witness.op);
            ASSERT_TRUE(cls);
            EXPECT_EQ(*cls, r.logical_witness.cls);
            auto t = effective_distance(turned, {p, eta});
            EXPECT_NEAR(t.d_prime, r.d_prime, 1e-10);
            EXPECT_NEAR(*t.t_prime, *r.t_prime, 1e-10);
        }
    }
}

TEST(metrics, refusals) {
    EXPECT_THROW(most_likely_logical(preset_code(Preset::CSS, 7), iid(0.01, 1.0, 49)), UnsupportedError);
    EXPECT_THROW(most_likely_noncorrectable(preset_code(Preset::CSS, 5), iid(0.01, 1.0, 25)), UnsupportedError);
    EXPECT_THROW(effective_distance(preset_code(Preset::CSS, 3), {0.01, kInfiniteBias}), std::invalid_argument);
}

TEST(metrics, delta_dprime_css_depolarizing) {
    auto est = delta_dprime({0.0, 0.0}, {0.01, 0.5}, 3, 99);
    EXPECT_NEAR(est.mean, 2.0, 1e-10);
    EXPECT_NEAR(est.std_error, 0.0, 1e-10);
}

TEST(metrics, delta_dprime_deterministic_across_threads) {
    auto a = delta_dprime({0.25, 0.5}, {0.02, 100.0}, 4, 7, 1);
    auto b = delta_dprime({0.25, 0.5}, {0.02, 100.0}, 4, 7, 3);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_GT(a.std_error, 0.0);
}
