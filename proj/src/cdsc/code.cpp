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

#include <bit>
#include <cctype>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cdsc/error.hpp"
#include "cdsc/stabilizer_group.hpp"

namespace cdsc {

namespace {

constexpr size_t npos = CheckGraph::npos;

void validate_L(int L) {
    if (L < 3 || L % 2 == 0) {
        throw std::invalid_argument("lattice size L must be odd and at least 3, got " + std::to_string(L));
    }
}

}  // namespace

char class_char(LogicalClass c) {
    switch (c) {
        case LogicalClass::I: return 'I';
        case LogicalClass::X: return 'X';
        case LogicalClass::Z: return 'Z';
        case LogicalClass::Y: return 'Y';
    }
    return '?';
}

SurfaceCodeLayout::SurfaceCodeLayout(int L) : L_((validate_L(L), L)) {
    const size_t n = num_qubits();
    auto add = [&](CheckType t, FacePlace place, int r, int c, std::vector<size_t> qs) {
        faces_.push_back(Face{t, place, r, c, std::move(qs)});
    };
    for (int i = 0; i + 1 < L; ++i) {
        for (int j = 0; j + 1 < L; ++j) {
            add((i + j) % 2 == 0 ? CheckType::X : CheckType::Z, FacePlace::Bulk, i, j,
                {qubit(i, j), qubit(i, j + 1), qubit(i + 1, j), qubit(i + 1, j + 1)});
        }
    }
    for (int j = 0; j + 1 < L; j += 2) {
        add(CheckType::Z, FacePlace::Top, 0, j, {qubit(0, j), qubit(0, j + 1)});
    }
    for (int j = 1; j + 1 < L; j += 2) {
        add(CheckType::Z, FacePlace::Bottom, L - 1, j, {qubit(L - 1, j), qubit(L - 1, j + 1)});
    }
    for (int i = 1; i + 1 < L; i += 2) {
        add(CheckType::X, FacePlace::Left, i, 0, {qubit(i, 0), qubit(i + 1, 0)});
    }
    for (int i = 0; i + 1 < L; i += 2) {
        add(CheckType::X, FacePlace::Right, i, L - 1, {qubit(i, L - 1), qubit(i + 1, L - 1)});
    }

    faces_of_qubit_.assign(n, {});
    for (size_t g = 0; g < faces_.size(); ++g) {
        for (size_t q : faces_[g].qubits) {
            faces_of_qubit_[q].push_back(g);
        }
    }

    logical_x_ = PauliOp(n);
    logical_z_ = PauliOp(n);
    for (int k = 0; k < L; ++k) {
        logical_x_.set(qubit(0, k), Letter::X);
        logical_z_.set(qubit(k, 0), Letter::Z);
    }

    // Multi-source breadth-first search from both virtual boundary nodes of
    // each check graph; every face inherits the path to its nearest boundary.
    tree_parent_.assign(faces_.size(), npos);
    tree_qubit_.assign(faces_.size(), npos);
    for (CheckType t : {CheckType::X, CheckType::Z}) {
        CheckGraph graph = build_check_graph(*this, t);
        std::vector<uint8_t> seen(graph.num_nodes, 0);
        std::deque<size_t> queue{graph.boundary_a, graph.boundary_b};
        seen[graph.boundary_a] = seen[graph.boundary_b] = 1;
        while (!queue.empty()) {
            size_t u = queue.front();
            queue.pop_front();
            for (size_t e : graph.adjacency[u]) {
                const auto& edge = graph.edges[e];
                size_t v = edge.a == u ? edge.b : edge.a;
                if (seen[v]) continue;
                seen[v] = 1;
                size_t g = graph.face_of_node[v];
                tree_parent_[g] = graph.face_of_node[u];
                tree_qubit_[g] = edge.qubit;
                queue.push_back(v);
            }
        }
        for (size_t v = 0; v < graph.num_nodes; ++v) {
            if (!seen[v]) {
                throw std::logic_error("surface code layout: check graph is disconnected");
            }
        }
    }
}

PauliOp SurfaceCodeLayout::generator(size_t g) const {
    const Face& f = faces_.at(g);
    return PauliOp::on_qubits(num_qubits(), f.qubits, f.type == CheckType::X ? Letter::X : Letter::Z);
}

std::vector<size_t> SurfaceCodeLayout::pure_error_path(size_t g) const {
    std::vector<size_t> path;
    for (size_t cur = g; cur != npos; cur = tree_parent_[cur]) {
        path.push_back(tree_qubit_[cur]);
    }
    return path;
}

PauliOp SurfaceCodeLayout::generator_pure_error(size_t g) const {
    // X-type checks are flipped by Z strings and vice versa.
    Letter l = faces_.at(g).type == CheckType::X ? Letter::Z : Letter::X;
    return PauliOp::on_qubits(num_qubits(), pure_error_path(g), l);
}

CheckGraph build_check_graph(const SurfaceCodeLayout& layout, CheckType type,
                             const std::function<bool(size_t)>& accept_qubit) {
    CheckGraph graph;
    graph.type = type;
    graph.node_of_face.assign(layout.num_generators(), npos);
    for (size_t g = 0; g < layout.num_generators(); ++g) {
        if (layout.face(g).type == type) {
            graph.node_of_face[g] = graph.face_of_node.size();
            graph.face_of_node.push_back(g);
        }
    }
    graph.boundary_a = graph.face_of_node.size();
    graph.boundary_b = graph.boundary_a + 1;
    graph.face_of_node.push_back(npos);
    graph.face_of_node.push_back(npos);
    graph.num_nodes = graph.face_of_node.size();
    graph.adjacency.assign(graph.num_nodes, {});

    const int L = layout.L();
    for (size_t q = 0; q < layout.num_qubits(); ++q) {
        if (accept_qubit && !accept_qubit(q)) continue;
        size_t ends[2];
        size_t k = 0;
        for (size_t g : layout.faces_of_qubit(q)) {
            if (layout.face(g).type == type) ends[k++] = graph.node_of_face[g];
        }
        if (k == 1) {
            int coord = type == CheckType::X ? layout.row_of(q) : layout.col_of(q);
            if (coord == 0) {
                ends[1] = graph.boundary_a;
            } else if (coord == L - 1) {
                ends[1] = graph.boundary_b;
            } else {
                throw std::logic_error("check graph: dangling qubit away from the boundary");
            }
        } else if (k != 2) {
            throw std::logic_error("check graph: qubit touches an unexpected number of faces");
        }
        size_t e = graph.edges.size();
        graph.edges.push_back({ends[0], ends[1], q});
        graph.adjacency[ends[0]].push_back(e);
        graph.adjacency[ends[1]].push_back(e);
    }
    return graph;
}

std::optional<std::vector<size_t>> shortest_boundary_path(const CheckGraph& graph,
                                                          const std::function<bool(size_t)>& usable) {
    std::vector<size_t> via(graph.num_nodes, npos);
    std::vector<uint8_t> seen(graph.num_nodes, 0);
    std::deque<size_t> queue{graph.boundary_a};
    seen[graph.boundary_a] = 1;
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        if (u == graph.boundary_b) break;
        for (size_t e : graph.adjacency[u]) {
            if (usable && !usable(e)) continue;
            const auto& edge = graph.edges[e];
            size_t v = edge.a == u ? edge.b : edge.a;
            if (seen[v]) continue;
            seen[v] = 1;
            via[v] = e;
            queue.push_back(v);
        }
    }
    if (!seen[graph.boundary_b]) return std::nullopt;
    std::vector<size_t> qubits;
    for (size_t v = graph.boundary_b; v != graph.boundary_a;) {
        const auto& edge = graph.edges[via[v]];
        qubits.push_back(edge.qubit);
        v = edge.a == v ? edge.b : edge.a;
    }
    return qubits;
}

Preset preset_from_string(std::string_view name) {
    std::string up(name);
    for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "CSS") return Preset::CSS;
    if (up == "XY") return Preset::XY;
    if (up == "XZZX") return Preset::XZZX;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected CSS, XY or XZZX)");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::CSS: return "CSS";
        case Preset::XY: return "XY";
        case Preset::XZZX: return "XZZX";
    }
    return "?";
}

void FamilyParams::validate() const {
    if (!(pi_xz >= 0.0) || !(pi_yz >= 0.0) || !(pi_xz + pi_yz <= 1.0 + 1e-12)) {
        throw std::invalid_argument("family parameters need pi_xz, pi_yz >= 0 and pi_xz + pi_yz <= 1 (got " +
                                    std::to_string(pi_xz) + ", " + std::to_string(pi_yz) + ")");
    }
}

DeformedCode::DeformedCode(std::shared_ptr<const SurfaceCodeLayout> layout, DeformationPattern pattern)
    : layout_(std::move(layout)), pattern_(std::move(pattern)) {
    if (!layout_) throw std::invalid_argument("DeformedCode: null layout");
    if (pattern_.size() != layout_->num_qubits()) {
        throw std::invalid_argument("DeformedCode: pattern has " + std::to_string(pattern_.size()) +
                                    " entries, code has " + std::to_string(layout_->num_qubits()) + " qubits");
    }
}

DeformedCode::DeformedCode(int L, DeformationPattern pattern)
    : DeformedCode(std::make_shared<const SurfaceCodeLayout>(L), std::move(pattern)) {}

PauliOp DeformedCode::generator(size_t g) const { return to_css_frame(layout_->generator(g)); }
PauliOp DeformedCode::logical_x() const { return to_css_frame(layout_->logical_x()); }
PauliOp DeformedCode::logical_z() const { return to_css_frame(layout_->logical_z()); }

PauliOp DeformedCode::logical_rep(LogicalClass c) const {
    PauliOp rep(num_qubits());
    auto v = static_cast<uint8_t>(c);
    if (v & 1) rep *= layout_->logical_x();
    if (v & 2) rep *= layout_->logical_z();
    return to_css_frame(rep);
}

Syndrome DeformedCode::syndrome(const PauliOp& e) const {
    if (e.size() != num_qubits()) {
        throw std::invalid_argument("syndrome: operator has " + std::to_string(e.size()) + " qubits, code has " +
                                    std::to_string(num_qubits()));
    }
    PauliOp css = to_css_frame(e);
    Syndrome s(num_generators(), 0);
    for (size_t g = 0; g < s.size(); ++g) {
        const Face& f = layout_->face(g);
        uint8_t parity = 0;
        for (size_t q : f.qubits) {
            Letter l = css.get(q);
            parity ^= static_cast<uint8_t>(f.type == CheckType::X ? z_bit(l) : x_bit(l));
        }
        s[g] = parity;
    }
    return s;
}

std::optional<LogicalClass> DeformedCode::logical_class(const PauliOp& p) const {
    Syndrome s = syndrome(p);
    for (uint8_t b : s) {
        if (b) return std::nullopt;
    }
    PauliOp css = to_css_frame(p);
    bool anti_z = !commutes(css, layout_->logical_z());
    bool anti_x = !commutes(css, layout_->logical_x());
    // A class-X operator anticommutes with the Z logical, and vice versa.
    return class_from_bits(anti_z, anti_x);
}

DeformationPattern preset_pattern(Preset preset, int L) {
    validate_L(L);
    const size_t n = static_cast<size_t>(L) * L;
    switch (preset) {
        case Preset::CSS: return DeformationPattern(n, Deformation::Id);
        case Preset::XY: return DeformationPattern(n, Deformation::SwapYZ);
        case Preset::XZZX: {
            std::vector<Deformation> d(n, Deformation::Id);
            for (int r = 0; r < L; ++r) {
                for (int c = 0; c < L; ++c) {
                    if ((r + c) % 2 == 0) d[static_cast<size_t>(r) * L + c] = Deformation::SwapXZ;
                }
            }
            return DeformationPattern(std::move(d));
        }
    }
    throw std::invalid_argument("unknown preset");
}

DeformationPattern sample_pattern(const FamilyParams& params, size_t num_qubits, Rng& rng) {
    params.validate();
    std::vector<Deformation> d(num_qubits, Deformation::Id);
    for (size_t q = 0; q < num_qubits; ++q) {
        double u = uniform01(rng);
        if (u < params.pi_xz) {
            d[q] = Deformation::SwapXZ;
        } else if (u < params.pi_xz + params.pi_yz) {
            d[q] = Deformation::SwapYZ;
        }
    }
    return DeformationPattern(std::move(d));
}

DeformationPattern tiled_pattern(const std::vector<std::string>& unit_cell, int L) {
    validate_L(L);
    if (unit_cell.empty() || unit_cell[0].empty()) {
        throw std::invalid_argument("unit cell must be non-empty");
    }
    const size_t w = unit_cell[0].size();
    for (const auto& row : unit_cell) {
        if (row.size() != w) throw std::invalid_argument("unit cell rows must have equal length");
    }
    std::vector<Deformation> d;
    d.reserve(static_cast<size_t>(L) * L);
    for (int r = 0; r < L; ++r) {
        const std::string& row = unit_cell[static_cast<size_t>(r) % unit_cell.size()];
        for (int c = 0; c < L; ++c) {
            d.push_back(deformation_from_char(row[static_cast<size_t>(c) % w]));
        }
    }
    return DeformationPattern(std::move(d));
}

DeformationPattern read_pattern_file(const std::string& path, int L) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pattern file '" + path + "'");
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::string row;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) row.push_back(c);
        }
        if (!row.empty() && row[0] != '#') rows.push_back(row);
    }
    if (rows.size() != static_cast<size_t>(L)) {
        throw ConfigError("pattern file '" + path + "' has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(L));
    }
    std::string flat;
    for (const auto& row : rows) {
        if (row.size() != static_cast<size_t>(L)) {
            throw ConfigError("pattern file '" + path + "': every row needs " + std::to_string(L) + " letters");
        }
        flat += row;
    }
    try {
        return DeformationPattern::from_string(flat);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("pattern file '" + path + "': " + e.what());
    }
}

std::string format_pattern_rows(const DeformationPattern& pattern, int L) {
    std::string text = pattern.str();
    std::string out;
    for (int r = 0; r < L; ++r) {
        out += text.substr(static_cast<size_t>(r) * L, static_cast<size_t>(L));
        out += '\n';
    }
    return out;
}

size_t code_distance(const DeformedCode& code) {
    const size_t n = code.num_qubits();
    if (n > kMaxEnumerationQubits) {
        throw UnsupportedError("code_distance: " + std::to_string(n) + " qubits exceeds the enumeration budget of " +
                               std::to_string(kMaxEnumerationQubits));
    }
    std::vector<SmallPauli> gens;
    for (size_t g = 0; g < code.num_generators(); ++g) {
        gens.push_back(to_small(code.generator(g)));
    }
    const SmallPauli reps[3] = {to_small(code.logical_rep(LogicalClass::X)),
                                to_small(code.logical_rep(LogicalClass::Z)),
                                to_small(code.logical_rep(LogicalClass::Y))};
    size_t best = n;
    for_each_group_element(gens, [&](SmallPauli s) {
        for (const auto& r : reps) {
            size_t w = static_cast<size_t>(std::popcount((s.x ^ r.x) | (s.z ^ r.z)));
            if (w < best) best = w;
        }
    });
    return best;
}

namespace {

std::optional<size_t> min_pure_z_weight_enumerate(const DeformedCode& code) {
    const size_t n = code.num_qubits();
    const size_t m = code.num_generators();
    std::vector<SmallPauli> gens;
    for (size_t g = 0; g < m; ++g) gens.push_back(to_small(code.generator(g)));
    // Z on qubit q anticommutes with an operator iff that operator has an x bit at q.
    uint64_t anti_lx = to_small(code.logical_x()).x;
    uint64_t anti_lz = to_small(code.logical_z()).x;

    // Column q: which generators flip under Z_q. Reduce to find a kernel basis
    // of the map T -> syndrome(Z_T).
    std::vector<uint64_t> pivot_vec(64, 0), pivot_combo(64, 0);
    std::vector<uint64_t> kernel;
    for (size_t q = 0; q < n; ++q) {
        uint64_t v = 0;
        for (size_t g = 0; g < m; ++g) {
            if ((gens[g].x >> q) & 1) v |= uint64_t{1} << g;
        }
        uint64_t combo = uint64_t{1} << q;
        while (v != 0) {
            int top = 63 - std::countl_zero(v);
            if (pivot_vec[top] == 0) {
                pivot_vec[top] = v;
                pivot_combo[top] = combo;
                break;
            }
            v ^= pivot_vec[top];
            combo ^= pivot_combo[top];
        }
        if (v == 0) kernel.push_back(combo);
    }
    if (kernel.size() > 30) {
        throw UnsupportedError("min_pure_z_weight: kernel too large to enumerate");
    }
    std::optional<size_t> best;
    uint64_t t = 0;
    const uint64_t count = uint64_t{1} << kernel.size();
    for (uint64_t k = 1; k < count; ++k) {
        t ^= kernel[static_cast<size_t>(std::countr_zero(k))];
        bool nontrivial = (std::popcount(t & anti_lx) & 1) || (std::popcount(t & anti_lz) & 1);
        if (!nontrivial) continue;
        auto w = static_cast<size_t>(std::popcount(t));
        if (!best || w < *best) best = w;
    }
    return best;
}

}  // namespace

std::optional<size_t> min_pure_z_weight_shortest_path(const DeformedCode& code) {
    const DeformationPattern& pat = code.pattern();
    if (pat.has(Deformation::SwapYZ)) {
        throw UnsupportedError("min_pure_z_weight: shortest-path route needs a pattern without SwapYZ");
    }
    // A physical Z is a CSS-frame Z on undeformed qubits (flipping X-type
    // checks) and a CSS-frame X on SwapXZ qubits (flipping Z-type checks).
    // The two parts must each be closed; either part alone can carry the
    // nontrivial logical.
    std::optional<size_t> best;
    auto consider = [&](CheckType t, Deformation keep) {
        CheckGraph g = build_check_graph(code.layout(), t, [&](size_t q) { return pat[q] == keep; });
        auto path = shortest_boundary_path(g);
        if (path && (!best || path->size() < *best)) best = path->size();
    };
    consider(CheckType::X, Deformation::Id);
    consider(CheckType::Z, Deformation::SwapXZ);
    return best;
}

std::optional<size_t> min_pure_z_weight(const DeformedCode& code) {
    if (code.num_qubits() <= kMaxEnumerationQubits) {
        return min_pure_z_weight_enumerate(code);
    }
    if (!code.pattern().has(Deformation::SwapYZ)) {
        return min_pure_z_weight_shortest_path(code);
    }
    throw UnsupportedError("min_pure_z_weight: patterns containing SwapYZ are only supported up to " +
                           std::to_string(kMaxEnumerationQubits) + " qubits");
}

}  // namespace cdsc
