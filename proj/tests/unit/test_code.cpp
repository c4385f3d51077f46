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

#include "cdsc/code.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cdsc/error.hpp"
#include "support/oracles.hpp"
#include "support/random_ops.hpp"

using namespace cdsc;
using cdsc::testing::random_pattern;
using cdsc::testing::random_pauli;

namespace {

DeformedCode make(int L, Preset p) { return DeformedCode(L, preset_pattern(p, L)); }

}  // namespace

TEST(code, layout_counts) {
    SurfaceCodeLayout l3(3);
    EXPECT_EQ(l3.num_qubits(), 9u);
    EXPECT_EQ(l3.num_generators(), 8u);
    size_t w4 = 0, w2 = 0;
    for (const auto& f : l3.faces()) {
        (f.qubits.size() == 4 ? w4 : w2) += 1;
        EXPECT_EQ(f.qubits.size(), f.place == FacePlace::Bulk ? 4u : 2u);
    }
    EXPECT_EQ(w4, 4u);
    EXPECT_EQ(w2, 4u);
    SurfaceCodeLayout l5(5);
    EXPECT_EQ(l5.num_qubits(), 25u);
    EXPECT_EQ(l5.num_generators(), 24u);
}

TEST(code, rejects_bad_sizes) {
    EXPECT_THROW(SurfaceCodeLayout(4), std::invalid_argument);
    EXPECT_THROW(SurfaceCodeLayout(1), std::invalid_argument);
    EXPECT_THROW(SurfaceCodeLayout(-3), std::invalid_argument);
}

TEST(code, layout_invariants) {
    for (int L : {3, 5, 7, 9}) {
        SurfaceCodeLayout layout(L);
        std::vector<PauliOp> gens;
        for (size_t g = 0; g < layout.num_generators(); ++g) gens.push_back(layout.generator(g));
        for (size_t a = 0; a < gens.size(); ++a) {
            for (size_t b = 0; b < gens.size(); ++b) EXPECT_TRUE(commutes(gens[a], gens[b]));
            EXPECT_TRUE(commutes(gens[a], layout.logical_x()));
            EXPECT_TRUE(commutes(gens[a], layout.logical_z()));
        }
        EXPECT_FALSE(commutes(layout.logical_x(), layout.logical_z()));
        EXPECT_EQ(cdsc::testing::gf2_rank(gens), layout.num_qubits() - 1);
        auto with_logicals = gens;
        with_logicals.push_back(layout.logical_x());
        with_logicals.push_back(layout.logical_z());
        EXPECT_EQ(cdsc::testing::gf2_rank(with_logicals), layout.num_qubits() + 1);
        EXPECT_EQ(layout.logical_x().weight(), static_cast<size_t>(L));
        EXPECT_EQ(layout.logical_z().weight(), static_cast<size_t>(L));
        // Checkerboard: horizontally and vertically adjacent bulk faces differ.
        for (const auto& f : layout.faces()) {
            if (f.place != FacePlace::Bulk) continue;
            EXPECT_EQ(f.type == CheckType::X, (f.row + f.col) % 2 == 0);
        }
        EXPECT_EQ(layout.face(0).type, CheckType::X);
    }
}

TEST(code, pure_errors_flip_one_generator) {
    for (int L : {3, 5, 7}) {
        DeformedCode css(L, preset_pattern(Preset::CSS, L));
        for (size_t g = 0; g < css.num_generators(); ++g) {
            Syndrome s = css.syndrome(css.layout().generator_pure_error(g));
            for (size_t h = 0; h < s.size(); ++h) EXPECT_EQ(s[h], h == g ? 1 : 0) << "L=" << L << " g=" << g;
        }
    }
}

TEST(code, presets) {
    EXPECT_EQ(preset_pattern(Preset::CSS, 3).str(), "IIIIIIIII");
    EXPECT_EQ(preset_pattern(Preset::XY, 3).str(), "YYYYYYYYY");
    EXPECT_EQ(preset_pattern(Preset::XZZX, 3).str(), "HIHIHIHIH");
    EXPECT_EQ(preset_from_string("xzzx"), Preset::XZZX);
    EXPECT_THROW(preset_from_string("toric"), std::invalid_argument);
}

TEST(code, xzzx_generators_have_xzzx_form) {
    DeformedCode code = make(5, Preset::XZZX);
    for (size_t g = 0; g < code.num_generators(); ++g) {
        if (code.layout().face(g).place != FacePlace::Bulk) continue;
        WeightCounts w = weight_decomposition(code.generator(g));
        EXPECT_EQ(w.x, 2u);
        EXPECT_EQ(w.z, 2u);
    }
}

TEST(code, sample_pattern_examples) {
    for (uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        EXPECT_EQ(sample_pattern({0.0, 0.0}, 25, rng).counts()[0], 25u);
        EXPECT_EQ(sample_pattern({0.0, 1.0}, 25, rng).counts()[2], 25u);
    }
    Rng rng(99);
    const size_t n = 10000;
    auto counts = sample_pattern({0.5, 0.5}, n, rng).counts();
    EXPECT_EQ(counts[0], 0u);
    double sigma = std::sqrt(n * 0.25);
    EXPECT_LT(std::abs(static_cast<double>(counts[1]) - n * 0.5), 3 * sigma);
    Rng a(5), b(5);
    EXPECT_EQ(sample_pattern({0.25, 0.5}, 81, a), sample_pattern({0.25, 0.5}, 81, b));
    EXPECT_THROW(sample_pattern({0.7, 0.5}, 9, rng), std::invalid_argument);
    EXPECT_THROW(sample_pattern({-0.1, 0.5}, 9, rng), std::invalid_argument);
}

TEST(code, tiled_pattern_examples) {
    EXPECT_EQ(tiled_pattern({"I"}, 3), preset_pattern(Preset::CSS, 3));
    auto ti = tiled_pattern({"HYI", "YIY", "IYH"}, 9);
    auto counts = ti.counts();
    EXPECT_EQ(counts[1] * 9, 2 * 81u);
    EXPECT_EQ(counts[2] * 9, 4 * 81u);
    EXPECT_EQ(tiled_pattern({"IH"}, 3).str(), "IHIIHIIHI");
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 9; ++c) {
            EXPECT_EQ(ti[static_cast<size_t>(r * 9 + c)], ti[static_cast<size_t>((r % 3) * 9 + c % 3)]);
        }
    }
    EXPECT_THROW(tiled_pattern({"IH", "I"}, 3), std::invalid_argument);
    EXPECT_THROW(tiled_pattern({"IQ"}, 3), std::invalid_argument);
}

TEST(code, pattern_file_round_trip) {
    std::string path = ::testing::TempDir() + "cdsc_pattern.txt";
    DeformationPattern pat = tiled_pattern({"HY", "IY"}, 5);
    {
        std::ofstream out(path);
        out << "# comment\n" << format_pattern_rows(pat, 5);
    }
    EXPECT_EQ(read_pattern_file(path, 5), pat);
    EXPECT_THROW(read_pattern_file(path, 3), ConfigError);
    EXPECT_THROW(read_pattern_file(path + ".missing", 5), ConfigError);
    std::remove(path.c_str());
}

TEST(code, syndrome_examples) {
    DeformedCode css = make(3, Preset::CSS);
    EXPECT_EQ(css.syndrome(PauliOp(9)), Syndrome(8, 0));
    PauliOp z(9);
    z.set(4, Letter::Z);
    Syndrome s = css.syndrome(z);
    size_t flipped = 0;
    for (size_t g = 0; g < s.size(); ++g) {
        if (s[g]) {
            ++flipped;
            EXPECT_EQ(css.layout().face(g).type, CheckType::X);
        }
    }
    EXPECT_EQ(flipped, 2u);
    EXPECT_THROW(css.syndrome(PauliOp(4)), std::invalid_argument);
}

TEST(code, deformed_structure_properties) {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int L = trial % 2 ? 5 : 3;
        DeformedCode code(L, random_pattern(static_cast<size_t>(L * L), rng));
        DeformedCode css(L, preset_pattern(Preset::CSS, L));
        for (size_t a = 0; a < code.num_generators(); ++a) {
            for (size_t b = a + 1; b < code.num_generators(); ++b) {
                EXPECT_TRUE(commutes(code.generator(a), code.generator(b)));
            }
        }
        EXPECT_FALSE(commutes(code.logical_x(), code.logical_z()));
        for (int k = 0; k < 20; ++k) {
            PauliOp e = random_pauli(code.num_qubits(), rng);
            Syndrome s = code.syndrome(e);
            EXPECT_EQ(s, cdsc::testing::syndrome_by_commutation(code, e));
            EXPECT_EQ(s, css.syndrome(permute_pauli(code.pattern(), e)));
        }
        // Random stabilizer products are trivial; adding logical reps moves the class.
        PauliOp stab(code.num_qubits());
        for (size_t g = 0; g < code.num_generators(); ++g) {
            if (rng() & 1) stab *= code.generator(g);
        }
        EXPECT_EQ(code.syndrome(stab), Syndrome(code.num_generators(), 0));
        for (LogicalClass c : kAllClasses) {
            EXPECT_EQ(code.logical_class(stab * code.logical_rep(c)), c);
        }
    }
}

TEST(code, logical_class_examples) {
    DeformedCode css = make(3, Preset::CSS);
    EXPECT_EQ(css.logical_class(css.generator(0)), LogicalClass::I);
    EXPECT_EQ(css.logical_class(css.logical_z()), LogicalClass::Z);
    EXPECT_EQ(css.logical_class(css.logical_x()), LogicalClass::X);
    PauliOp z(9);
    z.set(4, Letter::Z);
    EXPECT_FALSE(css.logical_class(z).has_value());
    DeformedCode xy = make(3, Preset::XY);
    EXPECT_EQ(xy.logical_class(xy.logical_z()), LogicalClass::Z);
    EXPECT_EQ(xy.logical_class(xy.logical_x() * xy.logical_z()), LogicalClass::Y);
}

TEST(code, distance_small_codes) {
    EXPECT_EQ(code_distance(make(3, Preset::CSS)), 3u);
    EXPECT_EQ(code_distance(make(3, Preset::XY)), 3u);
    EXPECT_EQ(code_distance(make(3, Preset::XZZX)), 3u);
    Rng rng(31337);
    for (int k = 0; k < 100; ++k) {
        EXPECT_EQ(code_distance(DeformedCode(3, random_pattern(9, rng))), 3u);
    }
    EXPECT_EQ(code_distance(DeformedCode(5, random_pattern(25, rng))), 5u);
    EXPECT_THROW(code_distance(make(7, Preset::CSS)), UnsupportedError);
}

TEST(code, min_pure_z_weight_values) {
    EXPECT_EQ(min_pure_z_weight(make(3, Preset::CSS)), 3u);
    EXPECT_EQ(min_pure_z_weight(make(5, Preset::CSS)), 5u);
    EXPECT_EQ(min_pure_z_weight(make(7, Preset::CSS)), 7u);
    EXPECT_EQ(min_pure_z_weight(make(3, Preset::XY)), 9u);
    EXPECT_EQ(min_pure_z_weight(make(3, Preset::XY)), cdsc::testing::brute_force_min_pure_z(make(3, Preset::XY)));
    // Frozen from the brute-force oracle over all 2^9 Z patterns: a diagonal
    // string of three Z's.
    EXPECT_EQ(cdsc::testing::brute_force_min_pure_z(make(3, Preset::XZZX)), 3u);
    EXPECT_EQ(min_pure_z_weight(make(3, Preset::XZZX)), 3u);
    EXPECT_THROW(min_pure_z_weight(make(7, Preset::XY)), UnsupportedError);
}

TEST(code, min_pure_z_weight_against_oracles) {
    Rng rng(77);
    for (int k = 0; k < 60; ++k) {
        DeformedCode code(3, random_pattern(9, rng));
        EXPECT_EQ(min_pure_z_weight(code), cdsc::testing::brute_force_min_pure_z(code)) << code.pattern().str();
    }
    for (int k = 0; k < 60; ++k) {
        int L = k % 2 ? 5 : 3;
        size_t n = static_cast<size_t>(L * L);
        std::vector<Deformation> d(n);
        for (auto& x : d) x = (rng() & 1) ? Deformation::SwapXZ : Deformation::Id;
        DeformedCode code(L, DeformationPattern(d));
        EXPECT_EQ(min_pure_z_weight(code), min_pure_z_weight_shortest_path(code)) << code.pattern().str();
    }
}
