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

#include "cdsc/statmech.hpp"

#include <boost/pending/disjoint_sets.hpp>
#include <cmath>
#include <stdexcept>

namespace cdsc {

namespace {

constexpr size_t npos = CheckGraph::npos;

void check_p(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument(std::string(what) + ": p must lie in (0, 1)");
}

double coupling(double p, double eta, double beta, Letter which) {
    const QubitChannel ch = rates_from({p, eta});
    double num = 2.0 * std::log(ch[which]) + std::log1p(-p);
    double den = std::log(ch.p_x()) + std::log(ch.p_y()) + std::log(ch.p_z());
    return (num - den) / (4.0 * beta);
}

SublatticeClusters analyse_sublattice(const ConstraintGraph& graph, CheckType sub) {
    const CheckGraph& g = sub == CheckType::X ? *graph.x_graph : *graph.z_graph;
    const size_t real = g.num_nodes - 2;
    boost::disjoint_sets_with_storage<> sets(real);
    for (size_t v = 0; v < real; ++v) sets.make_set(v);
    std::vector<uint8_t> touched(real, 0);
    std::vector<uint8_t> touches_a(real, 0), touches_b(real, 0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        if (!graph.active(sub, edge.qubit)) continue;
        size_t ends[2] = {edge.a, edge.b};
        for (int k = 0; k < 2; ++k) {
            size_t v = ends[k], other = ends[1 - k];
            if (v >= real) continue;
            touched[v] = 1;
            if (other == g.boundary_a) touches_a[v] = 1;
            if (other == g.boundary_b) touches_b[v] = 1;
        }
        if (edge.a < real && edge.b < real) sets.union_set(edge.a, edge.b);
    }
    std::vector<size_t> size(real, 0);
    std::vector<uint8_t> root_a(real, 0), root_b(real, 0);
    for (size_t v = 0; v < real; ++v) {
        if (!touched[v]) continue;
        size_t r = sets.find_set(v);
        ++size[r];
        root_a[r] |= touches_a[v];
        root_b[r] |= touches_b[v];
    }
    SublatticeClusters out;
    for (size_t r = 0; r < real; ++r) {
        if (size[r] == 0) continue;
        ++out.size_histogram[size[r]];
        out.largest = std::max(out.largest, size[r]);
        if (root_a[r] && root_b[r]) out.spanning = true;
    }
    if (out.spanning) {
        auto path = min_spanning_path_qubits(graph, sub);
        if (path) out.min_spanning_path = path->size();
    }
    return out;
}

}  // namespace

NishimoriCouplings nishimori_couplings(double p, double eta, double beta) {
    check_p(p, "nishimori_couplings");
    BiasedNoiseParams{p, eta}.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("nishimori_couplings: beta must be positive");
    if (std::isinf(eta)) {
        double j = std::log((1.0 - p) / p) / (4.0 * beta);
        return {j, j, std::numeric_limits<double>::infinity()};
    }
    return {coupling(p, eta, beta, Letter::X), coupling(p, eta, beta, Letter::Y), coupling(p, eta, beta, Letter::Z)};
}

double RBIMInstance::energy(const std::vector<int8_t>& spins) const {
    if (spins.size() != num_spins) throw std::invalid_argument("RBIMInstance::energy: wrong number of spins");
    double h = 0.0;
    for (const RbimTerm& t : terms) {
        int xx = 1, zz = 1;
        for (size_t s : t.x_spins) xx *= spins[s];
        for (size_t s : t.z_spins) zz *= spins[s];
        h -= t.k_zz * zz + t.k_xxzz * xx * zz + t.k_xx * xx;
    }
    return h;
}

RBIMInstance build_rbim(const DeformedCode& code, const PauliOp& error, double p, double eta, double beta) {
    const size_t n = code.num_qubits();
    if (error.size() != n) throw std::invalid_argument("build_rbim: error size does not match the code");
    const NishimoriCouplings j = nishimori_couplings(p, eta, beta);
    const SurfaceCodeLayout& layout = code.layout();

    RBIMInstance inst;
    inst.beta = beta;
    inst.num_spins = layout.num_generators();
    for (const Face& f : layout.faces()) inst.spin_type.push_back(f.type);
    inst.terms.resize(n);
    for (size_t q = 0; q < n; ++q) {
        RbimTerm& t = inst.terms[q];
        for (size_t g : layout.faces_of_qubit(q)) {
            (layout.face(g).type == CheckType::X ? t.x_spins : t.z_spins).push_back(g);
        }
        const Letter e = error.get(q);
        const Deformation d = code.pattern()[q];
        auto signed_coupling = [&](Letter named) {
            Letter actual = apply(d, named);
            double jv = actual == Letter::X ? j.jx : actual == Letter::Y ? j.jy : j.jz;
            bool commute = e == Letter::I || e == actual;
            return commute ? jv : -jv;
        };
        t.k_zz = signed_coupling(Letter::X);
        t.k_xxzz = signed_coupling(Letter::Y);
        t.k_xx = signed_coupling(Letter::Z);
    }
    return inst;
}

bool ConstraintGraph::active(CheckType sublattice, size_t q) const {
    ConstraintKind k = kind[q];
    if (k == ConstraintKind::JY) return true;
    return sublattice == CheckType::X ? k == ConstraintKind::JZ : k == ConstraintKind::JX;
}

PercolationLattice::PercolationLattice(int L) : L_(L) {
    SurfaceCodeLayout layout(L);
    x_graph_ = std::make_shared<const CheckGraph>(build_check_graph(layout, CheckType::X));
    z_graph_ = std::make_shared<const CheckGraph>(build_check_graph(layout, CheckType::Z));
}

ConstraintGraph infinite_bias_constraints(const DeformationPattern& pattern, const PercolationLattice& lattice) {
    if (pattern.size() != lattice.num_qubits()) {
        throw std::invalid_argument("infinite_bias_constraints: pattern has " + std::to_string(pattern.size()) +
                                    " qubits, lattice has " + std::to_string(lattice.num_qubits()));
    }
    ConstraintGraph g;
    g.L = lattice.L();
    g.x_graph = lattice.x_graph();
    g.z_graph = lattice.z_graph();
    g.kind.resize(pattern.size());
    for (size_t q = 0; q < pattern.size(); ++q) {
        switch (pattern[q]) {
            case Deformation::Id:
                g.kind[q] = ConstraintKind::JZ;
                break;
            case Deformation::SwapXZ:
                g.kind[q] = ConstraintKind::JX;
                break;
            case Deformation::SwapYZ:
                g.kind[q] = ConstraintKind::JY;
                break;
        }
    }
    return g;
}

ConstraintGraph infinite_bias_constraints(const DeformationPattern& pattern, int L) {
    return infinite_bias_constraints(pattern, PercolationLattice(L));
}

std::optional<size_t> ClusterStats::min_spanning_path() const {
    std::optional<size_t> best = x.min_spanning_path;
    if (z.min_spanning_path && (!best || *z.min_spanning_path < *best)) best = z.min_spanning_path;
    return best;
}

std::optional<std::vector<size_t>> min_spanning_path_qubits(const ConstraintGraph& graph, CheckType sublattice) {
    const CheckGraph& g = sublattice == CheckType::X ? *graph.x_graph : *graph.z_graph;
    return shortest_boundary_path(g, [&](size_t e) { return graph.active(sublattice, g.edges[e].qubit); });
}

ClusterStats cluster_stats(const ConstraintGraph& graph) {
    return {analyse_sublattice(graph, CheckType::X), analyse_sublattice(graph, CheckType::Z)};
}

ClusterStats percolation_stats(const FamilyParams& params, const PercolationLattice& lattice, Rng& rng) {
    params.validate();
    return cluster_stats(infinite_bias_constraints(sample_pattern(params, lattice.num_qubits(), rng), lattice));
}

ClusterStats percolation_stats(const FamilyParams& params, int L, Rng& rng) {
    return percolation_stats(params, PercolationLattice(L), rng);
}

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::vector<double>& weights) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_power_law: need two or more points");
    if (!weights.empty() && weights.size() != xs.size()) throw std::invalid_argument("fit_power_law: weight count");
    const size_t m = xs.size();
    std::vector<double> lx(m), ly(m), w(m, 1.0);
    double sw = 0.0, mx = 0.0, my = 0.0;
    for (size_t i = 0; i < m; ++i) {
        if (!(xs[i] > 0.0 && ys[i] > 0.0)) throw std::invalid_argument("fit_power_law: values must be positive");
        if (!weights.empty()) w[i] = weights[i];
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sw += w[i];
        mx += w[i] * lx[i];
        my += w[i] * ly[i];
    }
    mx /= sw;
    my /= sw;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
        sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: x values are all equal");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    if (m > 2) {
        double ssr = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double r = ly[i] - fit.log_prefactor - fit.exponent * lx[i];
            ssr += w[i] * r * r;
        }
        fit.exponent_std_error = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    }
    return fit;
}

PowerLawFit fit_fisher_exponent(const std::map<size_t, uint64_t>& histogram, size_t s_min, size_t s_max) {
    std::vector<double> xs, ys, ws;
    for (size_t lo = 1; lo <= s_max; lo *= 2) {
        size_t hi = 2 * lo;  // exclusive
        if (lo < s_min || hi - 1 > s_max) continue;
        uint64_t count = 0;
        for (auto it = histogram.lower_bound(lo); it != histogram.end() && it->first < hi; ++it) count += it->second;
        if (count == 0) continue;
        xs.push_back(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi - 1)));
        ys.push_back(static_cast<double>(count) / static_cast<double>(hi - lo));
        ws.push_back(static_cast<double>(count));  // Poisson: var(log density) ~ 1/count
    }
    PowerLawFit fit = fit_power_law(xs, ys, ws);
    fit.exponent = -fit.exponent;
    return fit;
}

}  // namespace cdsc
