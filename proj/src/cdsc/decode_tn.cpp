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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "cdsc/decode.hpp"
#include "cdsc/error.hpp"

namespace cdsc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRelativeCutoff = 1e-7;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Nonzero pattern of one qubit tensor: for every consistent assignment of the
// face bits on its four bonds, the letter the stabilizer product puts on the
// qubit.
struct TensorEntry {
    uint8_t l, r, u, d;
    uint8_t flip;  // Letter bits (x | z << 1)
};

struct QubitStructure {
    int dl = 1, dr = 1, du = 1, dd = 1;
    std::vector<TensorEntry> entries;
};

// Face bits are routed along a spanning tree of each face's qubits:
//   horizontal bond (r,c)-(r,c+1) carries bulk faces (r,c) and (r-1,c), and
//   the top/bottom boundary face starting at (r,c);
//   vertical bond (r,c)-(r+1,c) carries bulk face (r,c) and the left/right
//   boundary face starting at (r,c).
class NetworkStructure {
   public:
    explicit NetworkStructure(const SurfaceCodeLayout& layout) : L_(layout.L()) {
        std::map<std::tuple<FacePlace, int, int>, size_t> index;
        for (size_t g = 0; g < layout.num_generators(); ++g) {
            const Face& f = layout.face(g);
            index[{f.place, f.row, f.col}] = g;
        }
        auto find = [&](FacePlace p, int r, int c) -> int {
            auto it = index.find({p, r, c});
            return it == index.end() ? -1 : static_cast<int>(it->second);
        };
        const int L = L_;
        hbond_.assign(static_cast<size_t>(L * L), {});
        vbond_.assign(static_cast<size_t>(L * L), {});
        for (int r = 0; r < L; ++r) {
            for (int c = 0; c + 1 < L; ++c) {
                auto& b = hbond_[static_cast<size_t>(r * L + c)];
                for (int g : {find(FacePlace::Bulk, r, c), find(FacePlace::Bulk, r - 1, c), find(FacePlace::Top, r, c),
                              find(FacePlace::Bottom, r, c)}) {
                    if (g >= 0) b.push_back(static_cast<size_t>(g));
                }
            }
        }
        for (int r = 0; r + 1 < L; ++r) {
            for (int c = 0; c < L; ++c) {
                auto& b = vbond_[static_cast<size_t>(r * L + c)];
                for (int g : {find(FacePlace::Bulk, r, c), find(FacePlace::Left, r, c), find(FacePlace::Right, r, c)}) {
                    if (g >= 0) b.push_back(static_cast<size_t>(g));
                }
            }
        }

        qubits_.resize(layout.num_qubits());
        for (int r = 0; r < L; ++r) {
            for (int c = 0; c < L; ++c) {
                size_t q = layout.qubit(r, c);
                static const std::vector<size_t> none;
                const auto& left = c > 0 ? hbond_[static_cast<size_t>(r * L + c - 1)] : none;
                const auto& right = c + 1 < L ? hbond_[static_cast<size_t>(r * L + c)] : none;
                const auto& up = r > 0 ? vbond_[static_cast<size_t>((r - 1) * L + c)] : none;
                const auto& down = r + 1 < L ? vbond_[static_cast<size_t>(r * L + c)] : none;
                qubits_[q] = build_qubit(layout, q, left, right, up, down);
            }
        }
    }

    int L() const { return L_; }
    const QubitStructure& qubit(size_t q) const { return qubits_[q]; }

   private:
    static QubitStructure build_qubit(const SurfaceCodeLayout& layout, size_t q, const std::vector<size_t>& left,
                                      const std::vector<size_t>& right, const std::vector<size_t>& up,
                                      const std::vector<size_t>& down) {
        QubitStructure s;
        s.dl = 1 << left.size();
        s.dr = 1 << right.size();
        s.du = 1 << up.size();
        s.dd = 1 << down.size();
        const auto& own = layout.faces_of_qubit(q);
        for (size_t g : own) {
            bool routed = false;
            for (const auto* bond : {&left, &right, &up, &down}) {
                routed = routed || std::find(bond->begin(), bond->end(), g) != bond->end();
            }
            if (!routed) throw std::logic_error("tensor network: face not routed to one of its qubits");
        }
        for (int il = 0; il < s.dl; ++il) {
            for (int ir = 0; ir < s.dr; ++ir) {
                for (int iu = 0; iu < s.du; ++iu) {
                    for (int id = 0; id < s.dd; ++id) {
                        std::map<size_t, int> bits;
                        bool ok = true;
                        auto assign = [&](const std::vector<size_t>& bond, int value) {
                            for (size_t k = 0; k < bond.size(); ++k) {
                                int bit = (value >> k) & 1;
                                auto [it, inserted] = bits.emplace(bond[k], bit);
                                if (!inserted && it->second != bit) ok = false;
                            }
                        };
                        assign(left, il);
                        assign(right, ir);
                        assign(up, iu);
                        assign(down, id);
                        if (!ok) continue;
                        uint8_t flip = 0;
                        for (auto [g, bit] : bits) {
                            if (!bit) continue;
                            flip ^= layout.face(g).type == CheckType::X ? 1 : 2;
                        }
                        s.entries.push_back({static_cast<uint8_t>(il), static_cast<uint8_t>(ir),
                                             static_cast<uint8_t>(iu), static_cast<uint8_t>(id), flip});
                    }
                }
            }
        }
        return s;
    }

    int L_;
    std::vector<std::vector<size_t>> hbond_;
    std::vector<std::vector<size_t>> vbond_;
    std::vector<QubitStructure> qubits_;
};

// Site tensor of the boundary MPS running down one column: indices
// (up bond, physical = horizontal bond to the next column, down bond),
// stored row-major as an up x (phys * down) matrix.
struct Site {
    int up = 1;
    int phys = 1;
    int down = 1;
    std::vector<double> data;
    double& at(int u, int p, int d) { return data[(static_cast<size_t>(u) * phys + p) * down + d]; }
    double at(int u, int p, int d) const { return data[(static_cast<size_t>(u) * phys + p) * down + d]; }
};

struct Values {
    // Tensor entries with numeric values for one qubit.
    const QubitStructure* s;
    std::array<double, 4> prob;  // by flip letter, already combined with the reference operator
};

class BoundaryMps {
   public:
    BoundaryMps(int chi) : chi_(chi) {}

    void first_column(const std::vector<Values>& column) {
        sites_.clear();
        for (const Values& v : column) {
            Site site{v.s->du, v.s->dr, v.s->dd, {}};
            site.data.assign(static_cast<size_t>(site.up) * site.phys * site.down, 0.0);
            for (const auto& e : v.s->entries) site.at(e.u, e.r, e.d) += v.prob[e.flip];
            sites_.push_back(std::move(site));
        }
    }

    void absorb(const std::vector<Values>& column) {
        for (size_t r = 0; r < sites_.size(); ++r) {
            const Site& a = sites_[r];
            const QubitStructure& t = *column[r].s;
            Site b{a.up * t.du, t.dr, a.down * t.dd, {}};
            b.data.assign(static_cast<size_t>(b.up) * b.phys * b.down, 0.0);
            for (const auto& e : t.entries) {
                double w = column[r].prob[e.flip];
                if (w == 0.0) continue;
                for (int u = 0; u < a.up; ++u) {
                    for (int d = 0; d < a.down; ++d) {
                        double av = a.at(u, e.l, d);
                        if (av != 0.0) b.at(u * t.du + e.u, e.r, d * t.dd + e.d) += av * w;
                    }
                }
            }
            sites_[r] = std::move(b);
        }
    }

    /// Brings bonds down to chi and pulls the overall scale into log_scale.
    /// Returns false if the network vanished.
    bool compress() {
        int widest = 1;
        for (const auto& s : sites_) widest = std::max(widest, s.down);
        if (widest <= chi_) return rescale_sites();

        const size_t n = sites_.size();
        // Left-canonical sweep.
        for (size_t r = 0; r + 1 < n; ++r) {
            Site& a = sites_[r];
            Eigen::MatrixXd m = Eigen::Map<RowMatrix>(a.data.data(), static_cast<Eigen::Index>(a.up) * a.phys, a.down);
            const Eigen::Index k = std::min(m.rows(), m.cols());
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
            RowMatrix q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
            Eigen::MatrixXd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
            Site& next = sites_[r + 1];
            Eigen::Map<RowMatrix> nm(next.data.data(), next.up, static_cast<Eigen::Index>(next.phys) * next.down);
            RowMatrix merged = rr * nm;
            a.down = static_cast<int>(k);
            a.data.assign(q.data(), q.data() + q.size());
            next.up = static_cast<int>(k);
            next.data.assign(merged.data(), merged.data() + merged.size());
        }
        // Right-to-left truncating sweep. The singular vectors come from the
        // eigendecomposition of the (small) Gram matrix M M^T; singular values
        // below kRelativeCutoff of the largest are dropped as numerically
        // unresolved.
        for (size_t r = n - 1; r > 0; --r) {
            Site& a = sites_[r];
            Eigen::Map<RowMatrix> m(a.data.data(), a.up, static_cast<Eigen::Index>(a.phys) * a.down);
            Eigen::MatrixXd gram = m * m.transpose();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
            if (eig.info() != Eigen::Success) return false;
            const auto& lambda = eig.eigenvalues();  // ascending
            const Eigen::Index dim = lambda.size();
            const double top = dim > 0 ? lambda(dim - 1) : 0.0;
            if (!(top > 0.0) || !std::isfinite(top)) return false;
            Eigen::Index keep = 0;
            while (keep < dim && keep < chi_ && lambda(dim - 1 - keep) > top * kRelativeCutoff * kRelativeCutoff) {
                ++keep;
            }
            Eigen::MatrixXd u = eig.eigenvectors().rightCols(keep).rowwise().reverse();
            Eigen::VectorXd sv = lambda.tail(keep).reverse().cwiseSqrt();
            RowMatrix vt = sv.cwiseInverse().asDiagonal() * (u.transpose() * m);
            Eigen::MatrixXd us = u * sv.asDiagonal();
            Site& prev = sites_[r - 1];
            Eigen::Map<RowMatrix> pm(prev.data.data(), static_cast<Eigen::Index>(prev.up) * prev.phys, prev.down);
            RowMatrix merged = pm * us;
            a.up = static_cast<int>(keep);
            a.data.assign(vt.data(), vt.data() + vt.size());
            prev.down = static_cast<int>(keep);
            prev.data.assign(merged.data(), merged.data() + merged.size());
        }
        Site& head = sites_[0];
        double norm = 0.0;
        for (double v : head.data) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) return false;
        for (double& v : head.data) v /= norm;
        log_scale_ += std::log(norm);
        return true;
    }

    /// Contracts with a final column whose right bonds are trivial.
    double close(const std::vector<Values>& column) const {
        std::vector<double> vec{1.0};
        for (size_t r = 0; r < sites_.size(); ++r) {
            const Site& a = sites_[r];
            const QubitStructure& t = *column[r].s;
            std::vector<double> next(static_cast<size_t>(a.down) * t.dd, 0.0);
            for (const auto& e : t.entries) {
                double w = column[r].prob[e.flip];
                if (w == 0.0) continue;
                for (int u = 0; u < a.up; ++u) {
                    double vu = vec[static_cast<size_t>(u) * t.du + e.u];
                    if (vu == 0.0) continue;
                    for (int d = 0; d < a.down; ++d) {
                        next[static_cast<size_t>(d) * t.dd + e.d] += vu * a.at(u, e.l, d) * w;
                    }
                }
            }
            vec = std::move(next);
        }
        return vec.at(0);
    }

    double log_scale() const { return log_scale_; }

   private:
    bool rescale_sites() {
        for (auto& s : sites_) {
            double top = 0.0;
            for (double v : s.data) top = std::max(top, std::abs(v));
            if (!(top > 0.0) || !std::isfinite(top)) return false;
            for (double& v : s.data) v /= top;
            log_scale_ += std::log(top);
        }
        return true;
    }

    int chi_;
    std::vector<Site> sites_;
    double log_scale_ = 0.0;
};

std::array<double, 4> contract_cosets(const NetworkStructure& net, const std::vector<QubitChannel>& css_field,
                                      const PauliOp& reference, int chi) {
    const int L = net.L();
    auto column_values = [&](int c, int a, int b) {
        std::vector<Values> col;
        for (int r = 0; r < L; ++r) {
            size_t q = static_cast<size_t>(r * L + c);
            auto base = static_cast<uint8_t>(reference.get(q));
            if (a && r == 0) base ^= 1;
            if (b && c == L - 1) base ^= 2;
            Values v{&net.qubit(q), {}};
            for (uint8_t flip = 0; flip < 4; ++flip) {
                v.prob[flip] = css_field[q].prob[base ^ flip];
            }
            col.push_back(v);
        }
        return col;
    };
    std::array<double, 4> out{kNegInf, kNegInf, kNegInf, kNegInf};
    for (int a = 0; a < 2; ++a) {
        BoundaryMps mps(chi);
        mps.first_column(column_values(0, a, 0));
        bool alive = mps.compress();
        for (int c = 1; alive && c + 1 < L; ++c) {
            mps.absorb(column_values(c, a, 0));
            alive = mps.compress();
        }
        if (!alive) continue;
        for (int b = 0; b < 2; ++b) {
            double v = mps.close(column_values(L - 1, a, b));
            out[static_cast<size_t>(a | (b << 1))] = v > 0.0 ? std::log(v) + mps.log_scale() : kNegInf;
        }
    }
    return out;
}

}  // namespace

DecodeOutcome tn_ml_decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s, int chi,
                           bool check_convergence) {
    if (chi < 1) throw std::invalid_argument("tn_ml_decode: bond dimension must be at least 1");
    const size_t n = code.num_qubits();
    if (field.size() != n) throw std::invalid_argument("tn_ml_decode: noise field length mismatch");

    NetworkStructure net(code.layout());
    // Standard-form network: stabilizers stay CSS, deformation moves into the
    // per-qubit channels.
    NoiseField css_field = permute_field(field, code.pattern());
    PauliOp e0 = pure_error(code, s);
    PauliOp reference = code.to_css_frame(e0);

    DecodeOutcome out;
    out.cosets.log_weight = contract_cosets(net, css_field.channels(), reference, chi);
    bool nonzero = out.cosets.normalize();
    out.chosen = nonzero ? out.cosets.argmax() : LogicalClass::I;
    out.converged = nonzero;
    if (nonzero && check_convergence) {
        CosetProbabilities ref;
        ref.log_weight = contract_cosets(net, css_field.channels(), reference, convergence_reference_chi(chi));
        out.converged = ref.normalize() && ref.argmax() == out.chosen;
    }
    out.correction = e0 * code.logical_rep(out.chosen);
    return out;
}

}  // namespace cdsc
