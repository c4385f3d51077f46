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

// Brute-force reference computations used to pin values in the unit and
// acceptance tests. Deliberately naive: every routine works operator by
// operator through the public PauliOp / DeformedCode interfaces.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <limits>
#include <optional>
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/decode.hpp"
#include "cdsc/noise.hpp"

namespace cdsc::testing {

/// Syndrome computed by explicit commutation with deformed generators.
inline Syndrome syndrome_by_commutation(const DeformedCode& code, const PauliOp& e) {
    Syndrome s(code.num_generators());
    for (size_t g = 0; g < s.size(); ++g) {
        s[g] = commutes(code.generator(g), e) ? 0 : 1;
    }
    return s;
}

/// Rank over GF(2) of a set of operators (as 2n-bit vectors).
inline size_t gf2_rank(std::vector<PauliOp> ops) {
    if (ops.empty()) return 0;
    const size_t n = ops[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n && rank < ops.size(); ++col) {
        auto bit = [&](const PauliOp& p) {
            Letter l = p.get(col % n);
            return col < n ? x_bit(l) : z_bit(l);
        };
        size_t pivot = rank;
        while (pivot < ops.size() && !bit(ops[pivot])) ++pivot;
        if (pivot == ops.size()) continue;
        std::swap(ops[rank], ops[pivot]);
        for (size_t r = 0; r < ops.size(); ++r) {
            if (r != rank && bit(ops[r])) ops[r] *= ops[rank];
        }
        ++rank;
    }
    return rank;
}

/// Minimum weight of a nontrivial logical made of physical Z's, by trying
/// every subset of qubits.
inline std::optional<size_t> brute_force_min_pure_z(const DeformedCode& code) {
    const size_t n = code.num_qubits();
    std::optional<size_t> best;
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
        PauliOp p(n);
        for (size_t q = 0; q < n; ++q) {
            if ((mask >> q) & 1) p.set(q, Letter::Z);
        }
        auto cls = code.logical_class(p);
        if (cls && *cls != LogicalClass::I) {
            size_t w = p.weight();
            if (!best || w < *best) best = w;
        }
    }
    return best;
}

/// All 4^n operators on n qubits, as a callback over PauliOp.
template <typename F>
void for_each_pauli(size_t n, F&& f) {
    const uint64_t total = uint64_t{1} << (2 * n);
    PauliOp p(n);
    for (uint64_t k = 0; k < total; ++k) {
        for (size_t q = 0; q < n; ++q) {
            p.set(q, static_cast<Letter>((k >> (2 * q)) & 3));
        }
        f(p);
    }
}


/// Coset probabilities of every syndrome by summing over all 4^n errors:
/// table[s][c] = P(errors with syndrome s in class c relative to pure_error(s)).
using CosetTable = std::map<Syndrome, std::array<double, 4>>;

inline CosetTable brute_force_cosets(const DeformedCode& code, const NoiseField& field) {
    CosetTable table;
    std::map<Syndrome, PauliOp> reference;
    for_each_pauli(code.num_qubits(), [&](const PauliOp& e) {
        double pr = std::exp(log_prob(field, e));
        Syndrome s = code.syndrome(e);
        auto it = reference.find(s);
        if (it == reference.end()) it = reference.emplace(s, pure_error(code, s)).first;
        auto cls = code.logical_class(e * it->second);
        table[s][static_cast<size_t>(*cls)] += pr;
    });
    return table;
}

/// Failure probability of an optimal decoder: 1 - sum_s max_c P(s, c).
inline double optimal_failure(const CosetTable& table) {
    double success = 0.0;
    for (const auto& [s, probs] : table) success += *std::max_element(probs.begin(), probs.end());
    return 1.0 - success;
}

/// Best operator under `keep`, by log-probability then text order.
template <typename Keep>
std::pair<PauliOp, double> brute_force_most_likely(const DeformedCode& code, const NoiseField& field, Keep&& keep) {
    std::optional<PauliOp> best;
    double best_lp = -std::numeric_limits<double>::infinity();
    for_each_pauli(code.num_qubits(), [&](const PauliOp& e) {
        if (!keep(e)) return;
        double lp = log_prob(field, e);
        double tol = std::isfinite(best_lp) ? 1e-12 * std::max(1.0, std::abs(best_lp)) : 0.0;
        if (!best || lp > best_lp + tol || (lp >= best_lp - tol && text_less(e, *best))) {
            if (!best || lp > best_lp) best_lp = lp;
            best = e;
        }
    });
    return {*best, best_lp};
}

inline std::pair<PauliOp, double> brute_force_most_likely_logical(const DeformedCode& code, const NoiseField& field) {
    return brute_force_most_likely(code, field, [&](const PauliOp& e) {
        auto cls = code.logical_class(e);
        return cls && *cls != LogicalClass::I;
    });
}

/// Most likely error on which a decoder choosing argmax of the brute-force
/// coset table (I < X < Z < Y on ties) fails.
inline std::pair<PauliOp, double> brute_force_most_likely_noncorrectable(const DeformedCode& code,
                                                                         const NoiseField& field) {
    CosetTable table = brute_force_cosets(code, field);
    std::map<Syndrome, LogicalClass> choice;
    for (const auto& [s, probs] : table) {
        CosetProbabilities cp;
        for (size_t c = 0; c < 4; ++c) cp.log_weight[c] = probs[c] > 0 ? std::log(probs[c]) : -INFINITY;
        cp.normalize();
        choice[s] = cp.argmax();
    }
    return brute_force_most_likely(code, field, [&](const PauliOp& e) {
        Syndrome s = code.syndrome(e);
        auto cls = code.logical_class(e * pure_error(code, s));
        return *cls != choice.at(s);
    });
}

}  // namespace cdsc::testing
