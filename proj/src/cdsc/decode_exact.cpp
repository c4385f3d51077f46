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

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "cdsc/decode.hpp"
#include "cdsc/error.hpp"
#include "cdsc/stabilizer_group.hpp"

namespace cdsc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_or_neg_inf(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// Identical channel on every qubit: the probability of an operator depends
// only on its letter counts, so each coset reduces to an exact histogram over
// (n_X, n_Y, n_Z).
std::array<double, 4> coset_logs_uniform(const std::vector<SmallPauli>& gens, const SmallPauli (&base)[4],
                                         const QubitChannel& ch, size_t n) {
    // Histogram index: (|x|, |z|, n_Y) with n_X = |x| - n_Y and n_Z = |z| - n_Y.
    const size_t side = n + 1;
    const size_t cells = side * side * side;
    std::vector<uint32_t> hist(4 * cells, 0);
    BlockEnumerator blocks(gens);
    const size_t inner = blocks.inner_size();
    const uint64_t* tx = blocks.inner_x();
    const uint64_t* tz = blocks.inner_z();
    blocks.for_each_outer([&](SmallPauli s) {
        for (size_t c = 0; c < 4; ++c) {
            const uint64_t bx = s.x ^ base[c].x;
            const uint64_t bz = s.z ^ base[c].z;
            uint32_t* h = hist.data() + c * cells;
            for (size_t i = 0; i < inner; ++i) {
                const uint64_t x = bx ^ tx[i];
                const uint64_t z = bz ^ tz[i];
                const auto wx = static_cast<size_t>(std::popcount(x));
                const auto wz = static_cast<size_t>(std::popcount(z));
                const auto ny = static_cast<size_t>(std::popcount(x & z));
                ++h[(wx * side + wz) * side + ny];
            }
        }
    });
    const double li = log_or_neg_inf(ch.p_i());
    const double lx = log_or_neg_inf(ch.p_x());
    const double ly = log_or_neg_inf(ch.p_y());
    const double lz = log_or_neg_inf(ch.p_z());
    std::array<double, 4> out{};
    for (size_t c = 0; c < 4; ++c) {
        std::vector<double> terms;
        for (size_t wx = 0; wx <= n; ++wx) {
            for (size_t wz = 0; wz <= n; ++wz) {
                for (size_t ny = 0; ny <= std::min(wx, wz); ++ny) {
                    uint32_t count = hist[c * cells + (wx * side + wz) * side + ny];
                    if (count == 0) continue;
                    const size_t nx = wx - ny;
                    const size_t nz = wz - ny;
                    if ((nx && lx == kNegInf) || (ny && ly == kNegInf) || (nz && lz == kNegInf)) continue;
                    double w = std::log(static_cast<double>(count)) + static_cast<double>(n - nx - ny - nz) * li;
                    if (nx) w += static_cast<double>(nx) * lx;
                    if (ny) w += static_cast<double>(ny) * ly;
                    if (nz) w += static_cast<double>(nz) * lz;
                    terms.push_back(w);
                }
            }
        }
        double top = kNegInf;
        for (double t : terms) top = std::max(top, t);
        if (top == kNegInf) {
            out[c] = kNegInf;
            continue;
        }
        double sum = 0.0;
        for (double t : terms) sum += std::exp(t - top);
        out[c] = top + std::log(sum);
    }
    return out;
}

// General field: the product over qubits is assembled from lookup tables over
// blocks of up to 8 qubits, each rescaled by its largest entry.
std::array<double, 4> coset_logs_general(const std::vector<SmallPauli>& gens, const SmallPauli (&base)[4],
                                         const NoiseField& field) {
    const size_t n = field.size();
    struct Block {
        size_t shift;
        size_t width;
        std::vector<double> table;  // index: x bits | (z bits << width)
        double log_scale;
    };
    std::vector<Block> blocks;
    for (size_t start = 0; start < n; start += 8) {
        Block b{start, std::min<size_t>(8, n - start), {}, 0.0};
        const size_t size = size_t{1} << (2 * b.width);
        b.table.resize(size);
        double top = 0.0;
        for (size_t idx = 0; idx < size; ++idx) {
            double v = 1.0;
            for (size_t k = 0; k < b.width; ++k) {
                bool xb = (idx >> k) & 1;
                bool zb = (idx >> (k + b.width)) & 1;
                v *= field[start + k][letter_from_bits(xb, zb)];
            }
            b.table[idx] = v;
            top = std::max(top, v);
        }
        for (double& v : b.table) v /= top;
        b.log_scale = std::log(top);
        blocks.push_back(std::move(b));
    }
    double log_scale = 0.0;
    for (const auto& b : blocks) log_scale += b.log_scale;

    std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
    for_each_group_element(gens, [&](SmallPauli s) {
        for (size_t c = 0; c < 4; ++c) {
            uint64_t x = s.x ^ base[c].x;
            uint64_t z = s.z ^ base[c].z;
            double v = 1.0;
            for (const auto& b : blocks) {
                uint64_t mask = (uint64_t{1} << b.width) - 1;
                size_t idx = ((x >> b.shift) & mask) | (((z >> b.shift) & mask) << b.width);
                v *= b.table[idx];
            }
            sums[c] += v;
        }
    });
    std::array<double, 4> out{};
    for (size_t c = 0; c < 4; ++c) out[c] = sums[c] > 0.0 ? std::log(sums[c]) + log_scale : kNegInf;
    return out;
}

}  // namespace

DecodeOutcome exact_ml_decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s) {
    const size_t n = code.num_qubits();
    if (n > kMaxEnumerationQubits) {
        throw UnsupportedError("exact_ml_decode: " + std::to_string(n) + " qubits exceeds the enumeration budget of " +
                               std::to_string(kMaxEnumerationQubits));
    }
    if (field.size() != n) throw std::invalid_argument("exact_ml_decode: noise field length mismatch");

    PauliOp e0 = pure_error(code, s);
    std::vector<SmallPauli> gens;
    for (size_t g = 0; g < code.num_generators(); ++g) gens.push_back(to_small(code.generator(g)));
    SmallPauli base[4];
    std::vector<PauliOp> reps;
    for (LogicalClass c : kAllClasses) {
        reps.push_back(e0 * code.logical_rep(c));
        base[static_cast<size_t>(c)] = to_small(reps.back());
    }

    DecodeOutcome out;
    out.cosets.log_weight = field.is_uniform() && n > 0 ? coset_logs_uniform(gens, base, field[0], n)
                                                        : coset_logs_general(gens, base, field);
    out.converged = out.cosets.normalize();
    out.chosen = out.converged ? out.cosets.argmax() : LogicalClass::I;
    out.correction = reps[static_cast<size_t>(out.chosen)];
    return out;
}

}  // namespace cdsc
