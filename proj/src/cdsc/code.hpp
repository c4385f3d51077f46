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
#include <functional>
#include <memory>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdsc/pauli.hpp"
#include "cdsc/random.hpp"

namespace cdsc {

enum class CheckType : uint8_t { X, Z };

enum class FacePlace : uint8_t { Bulk, Top, Bottom, Left, Right };

/// One stabilizer generator of the undeformed (CSS) rotated surface code.
/// For bulk faces (row, col) is the top-left qubit; for boundary faces it is
/// the first qubit of the pair.
struct Face {
    CheckType type;
    FacePlace place;
    int row;
    int col;
    std::vector<size_t> qubits;
};

/// Logical coset label. Numeric value is (X component) | (Z component << 1),
/// which is also the pinned tie-breaking order I < X < Z < Y.
enum class LogicalClass : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr LogicalClass class_from_bits(bool x, bool z) {
    return static_cast<LogicalClass>(static_cast<uint8_t>(x) | (static_cast<uint8_t>(z) << 1));
}
char class_char(LogicalClass c);
inline constexpr std::array<LogicalClass, 4> kAllClasses{LogicalClass::I, LogicalClass::X, LogicalClass::Z,
                                                         LogicalClass::Y};

using Syndrome = std::vector<uint8_t>;

/// Rotated surface code on an odd L x L grid of qubits with open boundaries.
///
/// Conventions:
///  - qubit (r, c) has index r * L + c;
///  - bulk face (i, j) covers qubits (i, j), (i, j+1), (i+1, j), (i+1, j+1)
///    and is X-type iff i + j is even;
///  - X-type weight-2 faces sit on the left and right edges, Z-type weight-2
///    faces on the top and bottom edges, so the Z logical runs vertically;
///  - generators are ordered: bulk faces row-major, then top, bottom, left,
///    right boundary faces.
class SurfaceCodeLayout {
   public:
    explicit SurfaceCodeLayout(int L);

    int L() const { return L_; }
    size_t num_qubits() const { return static_cast<size_t>(L_) * L_; }
    size_t num_generators() const { return faces_.size(); }
    size_t qubit(int r, int c) const { return static_cast<size_t>(r) * L_ + c; }
    int row_of(size_t q) const { return static_cast<int>(q) / L_; }
    int col_of(size_t q) const { return static_cast<int>(q) % L_; }

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(size_t g) const { return faces_[g]; }
    /// Generator indices whose support contains q.
    const std::vector<size_t>& faces_of_qubit(size_t q) const { return faces_of_qubit_[q]; }

    PauliOp generator(size_t g) const;
    /// X on every qubit of row 0.
    const PauliOp& logical_x() const { return logical_x_; }
    /// Z on every qubit of column 0.
    const PauliOp& logical_z() const { return logical_z_; }

    /// Qubits of the fixed CSS-frame string flipping exactly generator g: a Z
    /// string (X-type g) or X string (Z-type g) to the nearest matching
    /// boundary. Paths come from one breadth-first tree per check type.
    std::vector<size_t> pure_error_path(size_t g) const;
    /// The same string as an operator.
    PauliOp generator_pure_error(size_t g) const;

   private:
    int L_;
    std::vector<Face> faces_;
    std::vector<std::vector<size_t>> faces_of_qubit_;
    // Breadth-first tree towards the boundaries, indexed by generator.
    std::vector<size_t> tree_parent_;  // parent generator, or npos at a boundary
    std::vector<size_t> tree_qubit_;   // qubit on the edge to the parent
    PauliOp logical_x_;
    PauliOp logical_z_;
};

/// Graph whose nodes are the faces of one check type plus two virtual
/// boundary nodes, and whose edges are qubits. An edge is present for every
/// qubit accepted by the filter; a qubit touching a single face of the type
/// connects that face to the virtual node on its side.
///
/// X-type graph: boundary nodes are top (row 0) and bottom (row L-1).
/// Z-type graph: boundary nodes are left (col 0) and right (col L-1).
struct CheckGraph {
    struct Edge {
        size_t a;
        size_t b;
        size_t qubit;
    };
    CheckType type;
    size_t num_nodes = 0;                 // faces of the type + 2 boundary nodes
    std::vector<size_t> face_of_node;     // generator index, or npos for boundary nodes
    std::vector<size_t> node_of_face;     // generator index -> node (npos if other type)
    size_t boundary_a = 0;                // top / left
    size_t boundary_b = 0;                // bottom / right
    std::vector<Edge> edges;
    std::vector<std::vector<size_t>> adjacency;  // node -> edge indices

    static constexpr size_t npos = static_cast<size_t>(-1);
};

CheckGraph build_check_graph(const SurfaceCodeLayout& layout, CheckType type,
                             const std::function<bool(size_t)>& accept_qubit = {});

/// Shortest path (edge count) between the two boundary nodes, with the qubits
/// used. Empty optional when they are disconnected. `usable` filters edges by
/// index.
std::optional<std::vector<size_t>> shortest_boundary_path(const CheckGraph& graph,
                                                          const std::function<bool(size_t)>& usable = {});

enum class Preset : uint8_t { CSS, XY, XZZX };
Preset preset_from_string(std::string_view name);
std::string preset_name(Preset p);

/// Probabilities of SwapXZ and SwapYZ per qubit in a random family.
struct FamilyParams {
    double pi_xz = 0.0;
    double pi_yz = 0.0;
    void validate() const;
};

/// Surface code conjugated qubit-wise by a deformation pattern. Internally all
/// queries are answered in the CSS frame: the deformed syndrome of E equals the
/// CSS syndrome of pattern(E).
class DeformedCode {
   public:
    DeformedCode(std::shared_ptr<const SurfaceCodeLayout> layout, DeformationPattern pattern);
    DeformedCode(int L, DeformationPattern pattern);

    const SurfaceCodeLayout& layout() const { return *layout_; }
    std::shared_ptr<const SurfaceCodeLayout> layout_ptr() const { return layout_; }
    const DeformationPattern& pattern() const { return pattern_; }
    int L() const { return layout_->L(); }
    size_t num_qubits() const { return layout_->num_qubits(); }
    size_t num_generators() const { return layout_->num_generators(); }

    PauliOp generator(size_t g) const;
    PauliOp logical_x() const;
    PauliOp logical_z() const;
    /// Deformed representative of a logical class (identity for I).
    PauliOp logical_rep(LogicalClass c) const;

    PauliOp to_css_frame(const PauliOp& p) const { return permute_pauli(pattern_, p); }

    Syndrome syndrome(const PauliOp& e) const;
    /// Class of p if it commutes with every generator; nullopt otherwise.
    std::optional<LogicalClass> logical_class(const PauliOp& p) const;

   private:
    std::shared_ptr<const SurfaceCodeLayout> layout_;
    DeformationPattern pattern_;
};

DeformationPattern preset_pattern(Preset preset, int L);
DeformationPattern sample_pattern(const FamilyParams& params, size_t num_qubits, Rng& rng);
/// unit_cell rows are strings over {I, H, Y}; the cell is repeated and cropped.
DeformationPattern tiled_pattern(const std::vector<std::string>& unit_cell, int L);
/// Reads a pattern file: one row of {I, H, Y} letters per lattice row.
DeformationPattern read_pattern_file(const std::string& path, int L);
std::string format_pattern_rows(const DeformationPattern& pattern, int L);

/// Minimum weight over nontrivial logical operators. Exhaustive over the
/// stabilizer group; refuses codes with more than 25 qubits.
size_t code_distance(const DeformedCode& code);

/// Minimum weight of a nontrivial logical consisting only of physical Z's, or
/// nullopt if none exists. Brute force (kernel enumeration) for n <= 25;
/// shortest path for SwapYZ-free patterns at any L; refuses otherwise.
std::optional<size_t> min_pure_z_weight(const DeformedCode& code);
/// The shortest-path route alone; requires a SwapYZ-free pattern.
std::optional<size_t> min_pure_z_weight_shortest_path(const DeformedCode& code);

inline constexpr size_t kMaxEnumerationQubits = 25;

}  // namespace cdsc
