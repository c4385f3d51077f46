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

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cdsc/error.hpp"
#include "cdsc/parallel.hpp"
#include "cdsc/stabilizer_group.hpp"

namespace cdsc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Text rank of a letter given its bits: I < X < Y < Z.
inline int text_rank_bits(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

bool small_text_less(SmallPauli a, SmallPauli b) {
    uint64_t diff = (a.x ^ b.x) | (a.z ^ b.z);
    if (diff == 0) return false;
    int q = std::countr_zero(diff);
    return text_rank_bits((a.x >> q) & 1, (a.z >> q) & 1) < text_rank_bits((b.x >> q) & 1, (b.z >> q) & 1);
}

struct Candidate {
    double score = kNegInf;
    SmallPauli op{};
    bool found = false;

    double tolerance() const { return std::isfinite(score) ? 1e-12 * std::max(1.0, std::abs(score)) : 0.0; }
    double threshold() const { return found ? score - tolerance() : kNegInf; }

    // Scores within a relative 1e-12 count as equal; then the text order decides.
    void offer(double s, SmallPauli p) {
        if (!found || s > score + tolerance()) {
            score = s;
            op = p;
            found = true;
        } else if (s >= threshold() && small_text_less(p, op)) {
            score = std::max(score, s);
            op = p;
        }
    }
};

// Log-probability of an operator, relative to the all-identity operator.
class Scorer {
   public:
    explicit Scorer(const NoiseField& field) : n_(field.size()) {
        if (field.is_uniform() && n_ > 0) {
            const QubitChannel& ch = field[0];
            const double li = std::log(ch.p_i());
            auto rel = [&](double v) { return v > 0.0 ? std::log(v) - li : kNegInf; };
            const double cx = rel(ch.p_x()), cy = rel(ch.p_y()), cz = rel(ch.p_z());
            side_ = n_ + 1;
            cells_.assign(side_ * side_ * side_, kNegInf);
            for (size_t wx = 0; wx <= n_; ++wx) {
                for (size_t wz = 0; wz <= n_; ++wz) {
                    for (size_t ny = 0; ny <= std::min(wx, wz); ++ny) {
                        const size_t nx = wx - ny, nz = wz - ny;
                        double s = 0.0;
                        if (nx) s += static_cast<double>(nx) * cx;
                        if (ny) s += static_cast<double>(ny) * cy;
                        if (nz) s += static_cast<double>(nz) * cz;
                        cells_[(wx * side_ + wz) * side_ + ny] = s;
                    }
                }
            }
        } else {
            for (size_t start = 0; start < n_; start += kBlock) {
                Block b{start, std::min(kBlock, n_ - start), {}};
                b.table.resize(size_t{1} << (2 * b.width));
                for (size_t idx = 0; idx < b.table.size(); ++idx) {
                    double s = 0.0;
                    for (size_t k = 0; k < b.width; ++k) {
                        const QubitChannel& ch = field[start + k];
                        Letter l = letter_from_bits((idx >> k) & 1, (idx >> (k + b.width)) & 1);
                        if (l == Letter::I) continue;
                        s += ch[l] > 0.0 ? std::log(ch[l]) - std::log(ch.p_i()) : kNegInf;
                    }
                    b.table[idx] = s;
                }
                blocks_.push_back(std::move(b));
            }
        }
        base_ = 0.0;
        for (size_t q = 0; q < n_; ++q) base_ += std::log(field[q].p_i());
    }

    /// log P(identity); add to a relative score to get a log-probability.
    double base() const { return base_; }

    /// Best element of each coset bases[k] * S.
    std::vector<Candidate> search(std::span<const SmallPauli> gens, std::span<const SmallPauli> bases) const {
        std::vector<Candidate> best(bases.size());
        BlockEnumerator blocks(gens);
        const size_t inner = blocks.inner_size();
        const uint64_t* tx = blocks.inner_x();
        const uint64_t* tz = blocks.inner_z();
        blocks.for_each_outer([&](SmallPauli s) {
            for (size_t c = 0; c < bases.size(); ++c) {
                const uint64_t bx = s.x ^ bases[c].x;
                const uint64_t bz = s.z ^ bases[c].z;
                Candidate& cand = best[c];
                double thr = cand.threshold();
                for (size_t i = 0; i < inner; ++i) {
                    const uint64_t x = bx ^ tx[i];
                    const uint64_t z = bz ^ tz[i];
                    const double v = score(x, z);
                    if (v >= thr) {
                        cand.offer(v, {x, z});
                        thr = cand.threshold();
                    }
                }
            }
        });
        return best;
    }

   private:
    static constexpr size_t kBlock = 6;
    struct Block {
        size_t shift;
        size_t width;
        std::vector<double> table;
    };

    double score(uint64_t x, uint64_t z) const {
        if (!cells_.empty()) {
            const auto wx = static_cast<size_t>(std::popcount(x));
            const auto wz = static_cast<size_t>(std::popcount(z));
            const auto ny = static_cast<size_t>(std::popcount(x & z));
            return cells_[(wx * side_ + wz) * side_ + ny];
        }
        double s = 0.0;
        for (const Block& b : blocks_) {
            const uint64_t mask = (uint64_t{1} << b.width) - 1;
            s += b.table[((x >> b.shift) & mask) | (((z >> b.shift) & mask) << b.width)];
        }
        return s;
    }

    size_t n_;
    size_t side_ = 0;
    std::vector<double> cells_;
    std::vector<Block> blocks_;
    double base_ = 0.0;
};

std::vector<SmallPauli> small_generators(const DeformedCode& code) {
    std::vector<SmallPauli> gens;
    for (size_t g = 0; g < code.num_generators(); ++g) gens.push_back(to_small(code.generator(g)));
    return gens;
}

void check_field(const DeformedCode& code, const NoiseField& field, const char* what) {
    if (field.size() != code.num_qubits()) throw std::invalid_argument(std::string(what) + ": noise field length mismatch");
    for (size_t q = 0; q < field.size(); ++q) {
        if (!(field[q].p_i() > 0.0)) {
            throw std::invalid_argument(std::string(what) + ": identity probability must be positive on every qubit");
        }
    }
}

}  // namespace

double normalizer_N(double p, double eta) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normalizer_N: p must lie in (0, 1)");
    if (std::isinf(eta)) throw std::invalid_argument("normalizer_N: undefined at infinite bias");
    BiasedNoiseParams{p, eta}.validate();
    return std::log(p * eta / ((1.0 + eta) * (1.0 - p)));
}

MostLikelyOperator most_likely_logical(const DeformedCode& code, const NoiseField& field) {
    const size_t n = code.num_qubits();
    if (n > kMaxEnumerationQubits) {
        throw UnsupportedError("most_likely_logical: L=" + std::to_string(code.L()) +
                               " exceeds the enumeration budget (L <= 5)");
    }
    check_field(code, field, "most_likely_logical");
    Scorer scorer(field);
    const LogicalClass classes[3] = {LogicalClass::X, LogicalClass::Z, LogicalClass::Y};
    std::vector<SmallPauli> bases;
    for (LogicalClass c : classes) bases.push_back(to_small(code.logical_rep(c)));
    auto best = scorer.search(small_generators(code), bases);

    Candidate overall;
    size_t winner = 0;
    for (size_t k = 0; k < 3; ++k) {
        overall.offer(best[k].score, best[k].op);
        if (overall.op.x == best[k].op.x && overall.op.z == best[k].op.z) winner = k;
    }
    return {from_small(overall.op, n), classes[winner], scorer.base() + overall.score};
}

MostLikelyOperator most_likely_noncorrectable(const DeformedCode& code, const NoiseField& field) {
    if (code.L() != 3) {
        throw UnsupportedError("most_likely_noncorrectable: only L=3 is supported (got L=" + std::to_string(code.L()) +
                               ")");
    }
    check_field(code, field, "most_likely_noncorrectable");
    const size_t n = code.num_qubits();
    const size_t m = code.num_generators();
    Scorer scorer(field);
    auto gens = small_generators(code);

    Candidate overall;
    PauliOp reps[4];
    for (LogicalClass c : kAllClasses) reps[static_cast<size_t>(c)] = code.logical_rep(c);
    Syndrome s(m, 0);
    for (uint64_t bits = 0; bits < (uint64_t{1} << m); ++bits) {
        for (size_t g = 0; g < m; ++g) s[g] = (bits >> g) & 1;
        DecodeOutcome dec = exact_ml_decode(code, field, s);
        PauliOp e0 = pure_error(code, s);
        std::vector<SmallPauli> bases;
        for (LogicalClass c : kAllClasses) {
            if (c != dec.chosen) bases.push_back(to_small(e0 * reps[static_cast<size_t>(c)]));
        }
        for (const Candidate& c : scorer.search(gens, bases)) overall.offer(c.score, c.op);
    }
    // Reported class: the logical left behind by the decoder's correction.
    PauliOp op = from_small(overall.op, n);
    DecodeOutcome dec = exact_ml_decode(code, field, code.syndrome(op));
    auto cls = code.logical_class(op * dec.correction);
    return {op, cls.value_or(LogicalClass::I), scorer.base() + overall.score};
}

EffectiveDistanceReport effective_distance(const DeformedCode& code, const BiasedNoiseParams& noise) {
    noise.validate();
    const double N = normalizer_N(noise.p, noise.eta);
    const size_t n = code.num_qubits();
    NoiseField field = NoiseField::uniform(rates_from(noise), n);
    const double log_identity_scale = static_cast<double>(n) * std::log1p(-noise.p);

    EffectiveDistanceReport r;
    r.normalizer = N;
    r.logical_witness = most_likely_logical(code, field);
    r.log_p_log = r.logical_witness.log_prob;
    r.d_prime = (r.log_p_log - log_identity_scale) / N;
    if (code.L() == 3) {
        r.noncorrectable_witness = most_likely_noncorrectable(code, field);
        r.log_p_cor = r.noncorrectable_witness->log_prob;
        r.t_prime = (*r.log_p_cor - log_identity_scale) / N;
    }
    return r;
}

MeanEstimate delta_dprime(const FamilyParams& family, const BiasedNoiseParams& noise, size_t samples, uint64_t seed,
                          unsigned threads) {
    family.validate();
    normalizer_N(noise.p, noise.eta);
    if (samples == 0) throw std::invalid_argument("delta_dprime: samples must be positive");
    auto layout3 = std::make_shared<const SurfaceCodeLayout>(3);
    auto layout5 = std::make_shared<const SurfaceCodeLayout>(5);
    std::vector<double> diffs(samples);
    parallel_for(samples, threads, [&](size_t i) {
        Rng rng3 = make_rng(seed, 3, i);
        Rng rng5 = make_rng(seed, 5, i);
        DeformedCode c3(layout3, sample_pattern(family, 9, rng3));
        DeformedCode c5(layout5, sample_pattern(family, 25, rng5));
        diffs[i] = effective_distance(c5, noise).d_prime - effective_distance(c3, noise).d_prime;
    });
    MeanEstimate out;
    out.samples = samples;
    double sum = 0.0;
    for (double d : diffs) sum += d;
    out.mean = sum / static_cast<double>(samples);
    if (samples < 2) {
        out.std_error = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double ss = 0.0;
    for (double d : diffs) ss += (d - out.mean) * (d - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
    return out;
}

}  // namespace cdsc
