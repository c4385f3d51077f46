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

// Self-duality threshold estimates from finite clusters of the 8-vertex model.
//
// Per qubit the local Boltzmann factor is written directly in terms of the
// CSS-frame letter probabilities q(.): for spin products (sigma, rho) over the
// qubit's (Z-face, X-face) spin pairs and a disorder letter E,
//   LBF_E(sigma, rho) = q(E * P(sigma, rho)),
// where P has an X component iff sigma = -1 and a Z component iff rho = -1.
// This equals exp(-beta H_qubit) on the Nishimori line up to an E-independent
// factor that cancels between the two sides of the self-duality condition.
// The dual factor is the binary Fourier transform
//   DBF_E(a, b) = 1/2 sum_{sigma, rho} LBF_E(sigma, rho) a^[sigma=-1] b^[rho=-1],
// whose variables live on the crossing edges: a is a product of dual spins at
// the qubit's X faces, b at its Z faces.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "cdsc/error.hpp"
#include "cdsc/statmech.hpp"

namespace cdsc {

namespace {

struct ClusterQubit {
    size_t x_spins[2];  // local spin indices
    size_t z_spins[2];
};

struct Cluster {
    std::vector<ClusterQubit> qubits;
    size_t num_spins = 0;
    std::vector<size_t> summed;  // local spin indices
};

constexpr int kClusterLattice = 7;
constexpr size_t kMaxExactQubits = 10;

size_t bulk_face(const SurfaceCodeLayout& layout, int i, int j) {
    for (size_t g = 0; g < layout.num_generators(); ++g) {
        const Face& f = layout.face(g);
        if (f.place == FacePlace::Bulk && f.row == i && f.col == j) return g;
    }
    throw std::logic_error("cluster: no bulk face at the requested position");
}

// c = 0: one crossing. c = 1: the four qubits of bulk face (2,2) (X type)
// with its spin summed. c = 2: the 3x3 qubit block at rows/cols 2..4 with the
// four faces inside it summed. Every qubit used is interior on the 7x7
// lattice, so each sees two X faces and two Z faces.
Cluster make_cluster(int c) {
    SurfaceCodeLayout layout(kClusterLattice);
    std::vector<size_t> qubits;
    std::vector<size_t> summed_faces;
    switch (c) {
        case 0:
            qubits = {layout.qubit(3, 3)};
            break;
        case 1:
            for (int r = 2; r <= 3; ++r) {
                for (int col = 2; col <= 3; ++col) qubits.push_back(layout.qubit(r, col));
            }
            summed_faces = {bulk_face(layout, 2, 2)};
            break;
        case 2:
            for (int r = 2; r <= 4; ++r) {
                for (int col = 2; col <= 4; ++col) qubits.push_back(layout.qubit(r, col));
            }
            for (int i = 2; i <= 3; ++i) {
                for (int j = 2; j <= 3; ++j) summed_faces.push_back(bulk_face(layout, i, j));
            }
            break;
        default:
            throw std::invalid_argument("cluster_threshold: level c must be 0, 1 or 2 (got " + std::to_string(c) +
                                        ")");
    }
    Cluster out;
    std::vector<size_t> local(layout.num_generators(), CheckGraph::npos);
    auto local_index = [&](size_t g) {
        if (local[g] == CheckGraph::npos) local[g] = out.num_spins++;
        return local[g];
    };
    for (size_t q : qubits) {
        ClusterQubit cq{};
        size_t nx = 0, nz = 0;
        for (size_t g : layout.faces_of_qubit(q)) {
            if (layout.face(g).type == CheckType::X) {
                cq.x_spins[nx++] = local_index(g);
            } else {
                cq.z_spins[nz++] = local_index(g);
            }
        }
        if (nx != 2 || nz != 2) throw std::logic_error("cluster: qubit is not interior");
        out.qubits.push_back(cq);
    }
    for (size_t g : summed_faces) out.summed.push_back(local_index(g));
    return out;
}

// Letter index (x | z << 1) of the local factor argument for every summed
// spin configuration and qubit, on the primal and dual sides.
struct ConfigTable {
    size_t configs = 0;
    std::vector<uint8_t> primal;  // [config * m + q]
    std::vector<uint8_t> dual;
};

ConfigTable make_config_table(const Cluster& cl) {
    ConfigTable t;
    const size_t m = cl.qubits.size();
    t.configs = size_t{1} << cl.summed.size();
    t.primal.resize(t.configs * m);
    t.dual.resize(t.configs * m);
    std::vector<int> flipped(cl.num_spins, 0);
    for (size_t k = 0; k < t.configs; ++k) {
        std::fill(flipped.begin(), flipped.end(), 0);
        for (size_t b = 0; b < cl.summed.size(); ++b) flipped[cl.summed[b]] = (k >> b) & 1;
        for (size_t q = 0; q < m; ++q) {
            const ClusterQubit& cq = cl.qubits[q];
            int xflip = flipped[cq.x_spins[0]] ^ flipped[cq.x_spins[1]];
            int zflip = flipped[cq.z_spins[0]] ^ flipped[cq.z_spins[1]];
            // Primal: sigma over Z-face spins, rho over X-face spins.
            t.primal[k * m + q] = static_cast<uint8_t>(zflip | (xflip << 1));
            // Dual: a over X-face spins, b over Z-face spins.
            t.dual[k * m + q] = static_cast<uint8_t>(xflip | (zflip << 1));
        }
    }
    return t;
}

struct FactorTables {
    double lbf[4][4];  // [disorder letter][argument letter]
    double dbf[4][4];
};

FactorTables make_factor_tables(const QubitChannel& ch) {
    FactorTables f{};
    for (size_t e = 0; e < 4; ++e) {
        for (size_t a = 0; a < 4; ++a) f.lbf[e][a] = ch.prob[e ^ a];
        for (size_t a = 0; a < 4; ++a) {
            double s = 0.0;
            for (size_t l = 0; l < 4; ++l) s += (std::popcount(l & a) & 1 ? -1.0 : 1.0) * f.lbf[e][l];
            f.dbf[e][a] = 0.5 * s;
        }
    }
    return f;
}

struct SideLogs {
    double primal = 0.0;
    double dual = 0.0;
};

SideLogs cluster_logs(const ConfigTable& t, const FactorTables& f, const uint8_t* letters, size_t m) {
    double zp = 0.0, zd = 0.0;
    for (size_t k = 0; k < t.configs; ++k) {
        double vp = 1.0, vd = 1.0;
        for (size_t q = 0; q < m; ++q) {
            vp *= f.lbf[letters[q]][t.primal[k * m + q]];
            vd *= f.dbf[letters[q]][t.dual[k * m + q]];
        }
        zp += vp;
        zd += vd;
    }
    if (!(zd > 0.0) || !(zp > 0.0)) throw NumericError("cluster_duality_gap: non-positive cluster partition sum");
    return {std::log(zp), std::log(zd)};
}

// Exact disorder average by depth-first enumeration of the letters, carrying
// partial products for every summed-spin configuration.
SideLogs exact_average(const ConfigTable& t, const FactorTables& f, const QubitChannel& ch, size_t m) {
    const size_t K = t.configs;
    std::vector<double> partial_p((m + 1) * K, 1.0), partial_d((m + 1) * K, 1.0);
    SideLogs acc;
    auto recurse = [&](auto&& self, size_t q, double weight) -> void {
        if (q == m) {
            double zp = 0.0, zd = 0.0;
            for (size_t k = 0; k < K; ++k) {
                zp += partial_p[m * K + k];
                zd += partial_d[m * K + k];
            }
            if (!(zd > 0.0) || !(zp > 0.0)) {
                throw NumericError("cluster_duality_gap: non-positive cluster partition sum");
            }
            acc.primal += weight * std::log(zp);
            acc.dual += weight * std::log(zd);
            return;
        }
        for (size_t e = 0; e < 4; ++e) {
            const double w = weight * ch.prob[e];
            if (w == 0.0) continue;
            for (size_t k = 0; k < K; ++k) {
                partial_p[(q + 1) * K + k] = partial_p[q * K + k] * f.lbf[e][t.primal[k * m + q]];
                partial_d[(q + 1) * K + k] = partial_d[q * K + k] * f.dbf[e][t.dual[k * m + q]];
            }
            self(self, q + 1, w);
        }
    };
    recurse(recurse, 0, 1.0);
    return acc;
}

SideLogs sampled_average(const ConfigTable& t, const FactorTables& f, const QubitChannel& ch, size_t m,
                         size_t samples, uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("cluster_duality_gap: mc_samples must be positive");
    SideLogs acc;
    std::vector<uint8_t> letters(m);
    for (size_t s = 0; s < samples; ++s) {
        Rng rng = make_rng(seed, 0, s);
        for (size_t q = 0; q < m; ++q) {
            // Fixed order I, X, Z, Y along [0, 1): the same draws are reused
            // at every p, which keeps the sampled gap monotone enough for
            // bisection.
            double u = uniform01(rng);
            size_t e = 0;
            while (e < 3 && u >= ch.prob[e]) u -= ch.prob[e++];
            letters[q] = static_cast<uint8_t>(e);
        }
        SideLogs one = cluster_logs(t, f, letters.data(), m);
        acc.primal += one.primal;
        acc.dual += one.dual;
    }
    acc.primal /= static_cast<double>(samples);
    acc.dual /= static_cast<double>(samples);
    return acc;
}

double gap_for_cluster(const Cluster& cl, const ConfigTable& t, const QubitChannel& ch, size_t mc_samples,
                       uint64_t seed, bool force_sampling = false) {
    const double px = ch.p_x(), pz = ch.p_z();
    if (std::abs(px - pz) > 1e-12 * std::max(px, pz)) {
        throw std::invalid_argument("cluster_duality_gap: the model is self-dual only when p_X = p_Z in the CSS frame");
    }
    const FactorTables f = make_factor_tables(ch);
    const size_t m = cl.qubits.size();
    SideLogs s = m <= kMaxExactQubits && !force_sampling ? exact_average(t, f, ch, m)
                                                         : sampled_average(t, f, ch, m, mc_samples, seed);
    return s.primal - s.dual;
}

}  // namespace

double cluster_duality_gap(const QubitChannel& css_frame_channel, int c, size_t mc_samples, uint64_t seed,
                           bool force_sampling) {
    const Cluster cl = make_cluster(c);
    return gap_for_cluster(cl, make_config_table(cl), css_frame_channel, mc_samples, seed, force_sampling);
}

double cluster_threshold(double eta, int c, size_t mc_samples, Rng& rng) {
    BiasedNoiseParams{0.1, eta}.validate();
    const Cluster cl = make_cluster(c);
    const ConfigTable table = make_config_table(cl);
    const uint64_t seed = rng();
    auto gap = [&](double p) {
        return gap_for_cluster(cl, table, permute_channel(rates_from({p, eta}), Deformation::SwapYZ), mc_samples,
                               seed);
    };
    // For rare disorder the dual cluster sum goes to zero as p -> 0 and can
    // turn negative there, so the root is bracketed by scanning down from 0.5
    // on a grid rather than from p -> 0. At p = 0.5 itself sums can vanish.
    auto try_gap = [&](double p) -> std::optional<double> {
        try {
            return gap(p);
        } catch (const NumericError&) {
            return std::nullopt;
        }
    };
    double hi = 0.5;
    std::optional<double> g_hi = try_gap(hi);
    if (!g_hi) {
        hi = 0.4999;
        g_hi = try_gap(hi);
    }
    if (!g_hi) throw NumericError("cluster_threshold: duality gap undefined near p = 0.5");
    if (*g_hi >= 0.0) return hi;
    double lo = hi;
    for (;;) {
        lo = std::max(lo - 0.01, 0.0);
        if (lo == 0.0) throw NumericError("cluster_threshold: no sign change of the duality gap in (0, 0.5]");
        std::optional<double> g = try_gap(lo);
        if (!g) throw NumericError("cluster_threshold: duality gap undefined before a sign change");
        if (*g > 0.0) break;
        hi = lo;
    }
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace cdsc
