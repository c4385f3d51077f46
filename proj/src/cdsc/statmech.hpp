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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/noise.hpp"
#include "cdsc/random.hpp"

namespace cdsc {

/// Nishimori-line couplings J_P = log(p_P^2 (1-p) / (p_X p_Y p_Z)) / (4 beta).
/// At infinite bias J_Z is +inf and J_X = J_Y = log((1-p)/p) / (4 beta).
struct NishimoriCouplings {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
};

NishimoriCouplings nishimori_couplings(double p, double eta, double beta);

/// One interaction per qubit. With the spin products
///   zz = product of the Z-type face spins containing the qubit,
///   xx = product of the X-type face spins containing the qubit,
/// the qubit contributes -(k_zz * zz + k_xxzz * xx * zz + k_xx * xx) to the
/// energy. Boundary qubits see one face of a type and get a one-body term.
struct RbimTerm {
    std::vector<size_t> x_spins;  // generator indices
    std::vector<size_t> z_spins;
    double k_zz = 0.0;
    double k_xxzz = 0.0;
    double k_xx = 0.0;
};

/// Disordered 8-vertex model of a deformed code and an error E. Spin g sits
/// on generator g. For a qubit with deformation D, the coefficient of the
/// term named after letter P (zz ~ X, xxzz ~ Y, xx ~ Z) is tau_{D(P)} J_{D(P)},
/// where tau_Q = +1 iff E commutes with Q on that qubit. Boundary terms are
/// kept, so sum_s exp(-beta H) is proportional to the probability of the
/// coset E S.
struct RBIMInstance {
    size_t num_spins = 0;
    std::vector<CheckType> spin_type;
    std::vector<RbimTerm> terms;  // per qubit
    double beta = 1.0;

    double energy(const std::vector<int8_t>& spins) const;
};

RBIMInstance build_rbim(const DeformedCode& code, const PauliOp& error, double p, double eta, double beta);

enum class ConstraintKind : uint8_t { JZ, JX, JY };

/// Hard constraints at infinite bias, one per qubit: Id -> J_Z (the X-type
/// face spins of the qubit multiply to 1), SwapXZ -> J_X (Z-type face
/// spins), SwapYZ -> J_Y (all four).
struct ConstraintGraph {
    int L = 0;
    std::vector<ConstraintKind> kind;  // per qubit
    std::shared_ptr<const CheckGraph> x_graph;  // X-face spins, boundaries top/bottom
    std::shared_ptr<const CheckGraph> z_graph;  // Z-face spins, boundaries left/right

    /// Whether qubit q's constraint joins spins of the given sublattice. J_Y
    /// constraints join both.
    bool active(CheckType sublattice, size_t q) const;
};

/// Reusable per-size data for percolation runs.
class PercolationLattice {
   public:
    explicit PercolationLattice(int L);
    int L() const { return L_; }
    size_t num_qubits() const { return static_cast<size_t>(L_) * static_cast<size_t>(L_); }
    const std::shared_ptr<const CheckGraph>& x_graph() const { return x_graph_; }
    const std::shared_ptr<const CheckGraph>& z_graph() const { return z_graph_; }

   private:
    int L_;
    std::shared_ptr<const CheckGraph> x_graph_;
    std::shared_ptr<const CheckGraph> z_graph_;
};

ConstraintGraph infinite_bias_constraints(const DeformationPattern& pattern, const PercolationLattice& lattice);
ConstraintGraph infinite_bias_constraints(const DeformationPattern& pattern, int L);

struct SublatticeClusters {
    /// Cluster size (number of spins) -> number of clusters. Only spins
    /// touched by at least one constraint are counted.
    std::map<size_t, uint64_t> size_histogram;
    size_t largest = 0;
    /// Some cluster touches both designated boundaries.
    bool spanning = false;
    /// Fewest constraints on a boundary-to-boundary path, when spanning.
    std::optional<size_t> min_spanning_path;
};

struct ClusterStats {
    SublatticeClusters x;  // J_Z (and J_Y) constraints on X-face spins
    SublatticeClusters z;  // J_X (and J_Y) constraints on Z-face spins
    bool spanning() const { return x.spanning || z.spanning; }
    size_t largest() const { return std::max(x.largest, z.largest); }
    std::optional<size_t> min_spanning_path() const;
};

ClusterStats cluster_stats(const ConstraintGraph& graph);

/// One realization: draws a pattern from the family and analyses its
/// constraint clusters.
ClusterStats percolation_stats(const FamilyParams& params, const PercolationLattice& lattice, Rng& rng);
ClusterStats percolation_stats(const FamilyParams& params, int L, Rng& rng);

/// Qubits of a shortest path realizing min_spanning_path on one sublattice.
std::optional<std::vector<size_t>> min_spanning_path_qubits(const ConstraintGraph& graph, CheckType sublattice);

struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double exponent_std_error = 0.0;
};

/// Least-squares line through (log x, log y), optionally weighted.
PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::vector<double>& weights = {});

/// Fisher exponent from a cluster-size histogram: the number density in
/// logarithmic bins [2^k, 2^(k+1)) within [s_min, s_max] is fitted to
/// s^(-tau), each bin weighted by its count. Returns tau (positive).
PowerLawFit fit_fisher_exponent(const std::map<size_t, uint64_t>& histogram, size_t s_min, size_t s_max);

/// Self-duality threshold estimate for the XY code on the Nishimori line.
/// Level c = 0 uses one qubit crossing, c = 1 the four qubits of a bulk face
/// with that face's spin summed, c = 2 a 3x3 block of qubits with its four
/// inner face spins summed; all other spins are fixed. Disorder averages are
/// exact for clusters with at most 10 qubits and sampled (mc_samples draws
/// from rng) beyond that.
double cluster_threshold(double eta, int c, size_t mc_samples, Rng& rng);

/// Gap <log Z_cluster> - <log Z*_cluster> at one point, for a channel already
/// in the CSS frame. Throws std::invalid_argument unless p_X = p_Z there
/// (the undisordered model is self-dual only then). force_sampling uses the
/// sampled average even for small clusters.
double cluster_duality_gap(const QubitChannel& css_frame_channel, int c, size_t mc_samples, uint64_t seed,
                           bool force_sampling = false);

}  // namespace cdsc
