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

#include "cdsc/harness/fss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "cdsc/error.hpp"

namespace cdsc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Solve {
    double chi2 = std::numeric_limits<double>::infinity();
    Eigen::Vector3d coef = Eigen::Vector3d::Zero();
    bool full_rank = false;
};

class Objective {
   public:
    explicit Objective(const std::vector<FssPoint>& pts) : pts_(pts) {
        double smallest = std::numeric_limits<double>::infinity();
        for (const auto& q : pts) {
            if (q.sigma > 0.0) smallest = std::min(smallest, q.sigma);
        }
        for (const auto& q : pts) {
            // Zero-variance rows get the smallest nonzero sigma; all-zero data
            // is fitted unweighted.
            double s = q.sigma > 0.0 ? q.sigma : (std::isfinite(smallest) ? smallest : 1.0);
            sqrt_w_.push_back(1.0 / s);
        }
    }

    Solve operator()(double p_th, double nu) const {
        const auto m = static_cast<Eigen::Index>(pts_.size());
        Eigen::MatrixXd a(m, 3);
        Eigen::VectorXd b(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const FssPoint& q = pts_[static_cast<size_t>(i)];
            const double w = sqrt_w_[static_cast<size_t>(i)];
            const double x = (q.p - p_th) * std::pow(static_cast<double>(q.L), 1.0 / nu);
            a(i, 0) = w;
            a(i, 1) = w * x;
            a(i, 2) = w * x * x;
            b(i) = w * q.rate;
        }
        Solve s;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        qr.setThreshold(1e-12);
        s.full_rank = qr.rank() == 3;
        if (!s.full_rank) return s;
        s.coef = qr.solve(b);
        s.chi2 = (a * s.coef - b).squaredNorm();
        return s;
    }

   private:
    const std::vector<FssPoint>& pts_;
    std::vector<double> sqrt_w_;
};

}  // namespace

FssFit fss_fit(std::vector<FssPoint> points) {
    std::map<int, int> per_size;
    for (const auto& q : points) {
        if (!(std::isfinite(q.p) && std::isfinite(q.rate) && std::isfinite(q.sigma) && q.sigma >= 0.0)) {
            throw std::invalid_argument("fss_fit: p, rate and sigma must be finite with sigma >= 0");
        }
        if (q.L < 1) throw std::invalid_argument("fss_fit: sizes must be positive");
        ++per_size[q.L];
    }
    if (per_size.size() < 2) throw std::invalid_argument("fss_fit: need at least two sizes");
    for (auto [L, count] : per_size) {
        if (count < 3) throw std::invalid_argument("fss_fit: size " + std::to_string(L) + " has fewer than 3 rates");
    }
    std::sort(points.begin(), points.end(), [](const FssPoint& a, const FssPoint& b) {
        return std::tie(a.L, a.p, a.rate, a.sigma) < std::tie(b.L, b.p, b.rate, b.sigma);
    });

    const Objective f(points);
    double p_lo = points[0].p, p_hi = points[0].p;
    for (const auto& q : points) {
        p_lo = std::min(p_lo, q.p);
        p_hi = std::max(p_hi, q.p);
    }
    if (!(p_hi > p_lo)) throw std::invalid_argument("fss_fit: all rates are at one p");

    constexpr int kPGrid = 200, kNuGrid = 100;
    constexpr double kNuLo = 0.5, kNuHi = 3.0;
    const double dp = (p_hi - p_lo) / (kPGrid - 1);
    const double dnu = (kNuHi - kNuLo) / (kNuGrid - 1);
    double best_p = kNan, best_nu = kNan, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kPGrid; ++i) {
        for (int j = 0; j < kNuGrid; ++j) {
            const double pt = p_lo + dp * i, nu = kNuLo + dnu * j;
            Solve s = f(pt, nu);
            if (s.full_rank && s.chi2 < best) {
                best = s.chi2;
                best_p = pt;
                best_nu = nu;
            }
        }
    }
    if (!std::isfinite(best)) throw NumericError("fss_fit: design matrix is degenerate everywhere on the grid");

    // Pattern search: try unit moves along each axis, halve the steps when
    // none improves.
    double sp = dp, snu = dnu;
    for (int iter = 0; iter < 10000 && (sp > 1e-12 || snu > 1e-10); ++iter) {
        bool moved = false;
        const double cand[4][2] = {{best_p + sp, best_nu}, {best_p - sp, best_nu}, {best_p, best_nu + snu},
                                   {best_p, best_nu - snu}};
        for (const auto& c : cand) {
            if (c[1] < 0.05 || c[1] > 20.0) continue;
            Solve s = f(c[0], c[1]);
            if (s.full_rank && s.chi2 < best) {
                best = s.chi2;
                best_p = c[0];
                best_nu = c[1];
                moved = true;
                break;
            }
        }
        if (!moved) {
            sp *= 0.5;
            snu *= 0.5;
        }
    }

    Solve s = f(best_p, best_nu);
    if (!s.full_rank) throw NumericError("fss_fit: degenerate design matrix at the optimum");
    FssFit fit;
    fit.p_th = best_p;
    fit.nu = best_nu;
    fit.A = s.coef(0);
    fit.B = s.coef(1);
    fit.C = s.coef(2);
    fit.chi2 = s.chi2;
    const double dof = static_cast<double>(points.size()) - 5.0;
    fit.reduced_chi2 = dof > 0 ? s.chi2 / dof : kNan;

    // Curvature by central differences; cov = 2 H^-1.
    const double hp = std::max(1e-6, 1e-4 * (p_hi - p_lo)), hn = 1e-4 * best_nu;
    auto c2 = [&](double a, double b) { return f(a, b).chi2; };
    Eigen::Matrix2d h;
    h(0, 0) = (c2(best_p + hp, best_nu) - 2 * s.chi2 + c2(best_p - hp, best_nu)) / (hp * hp);
    h(1, 1) = (c2(best_p, best_nu + hn) - 2 * s.chi2 + c2(best_p, best_nu - hn)) / (hn * hn);
    h(0, 1) = h(1, 0) = (c2(best_p + hp, best_nu + hn) - c2(best_p + hp, best_nu - hn) -
                         c2(best_p - hp, best_nu + hn) + c2(best_p - hp, best_nu - hn)) /
                        (4 * hp * hn);
    bool curvature_ok = h.allFinite() && h(0, 0) > 0 && h.determinant() > 0;
    if (curvature_ok) {
        Eigen::Matrix2d cov = 2.0 * h.inverse();
        if (std::isfinite(fit.reduced_chi2) && fit.reduced_chi2 > 1.0) cov *= fit.reduced_chi2;
        fit.p_th_err = std::sqrt(cov(0, 0));
        fit.nu_err = std::sqrt(cov(1, 1));
        fit.p_th_nu_corr = cov(0, 1) / (fit.p_th_err * fit.nu_err);
    } else {
        fit.p_th_err = fit.nu_err = fit.p_th_nu_corr = kNan;
    }

    const bool at_edge = best_p <= p_lo + dp || best_p >= p_hi - dp || best_nu <= kNuLo || best_nu >= kNuHi;
    const bool poor_residual = std::isfinite(fit.reduced_chi2) && fit.reduced_chi2 > 10.0;
    fit.low_confidence = at_edge || !curvature_ok || poor_residual;
    return fit;
}

}  // namespace cdsc
