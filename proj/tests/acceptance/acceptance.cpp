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

// Acceptance runner. With no arguments every criterion runs; otherwise only
// the numbered ones. Each criterion prints its measurements and then one
// "PASS n: ..." or "FAIL n: ..." line. The exit status is nonzero if any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/decode.hpp"
#include "cdsc/harness/config.hpp"
#include "cdsc/harness/experiments.hpp"
#include "cdsc/harness/fss.hpp"
#include "cdsc/harness/rate.hpp"
#include "cdsc/harness/small_code.hpp"
#include "cdsc/metrics.hpp"
#include "cdsc/noise.hpp"
#include "cdsc/parallel.hpp"
#include "cdsc/statmech.hpp"
#include "support/oracles.hpp"
#include "support/random_ops.hpp"

using namespace cdsc;

namespace {

constexpr uint64_t kSeed = 20260101;

// Pinned translation-invariant member of the (2/9, 4/9) family.
const std::vector<std::string> kTiCell = {"IHY", "YYI", "IYH"};

struct Outcome {
    bool pass = true;
    std::string summary;
};

// Collects sub-checks; the criterion passes only if all of them do.
class Checks {
   public:
    void check(bool ok, const std::string& what) {
        std::printf("  [%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
        std::fflush(stdout);
        if (!ok) {
            pass_ = false;
            failed_.push_back(what);
        }
    }
    Outcome outcome(const std::string& summary) const {
        std::string s = summary;
        if (!failed_.empty()) s += " | failed: " + failed_.front() + (failed_.size() > 1 ? " (+more)" : "");
        return {pass_, s};
    }

   private:
    bool pass_ = true;
    std::vector<std::string> failed_;
};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, a, b, c, d);
    return buf;
}

void note(const std::string& s) {
    std::printf("  %s\n", s.c_str());
    std::fflush(stdout);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<DeformationPattern> sample_patterns(size_t count, size_t n, uint64_t stream) {
    Rng rng = make_rng(kSeed, stream, 0);
    std::vector<DeformationPattern> out;
    for (size_t i = 0; i < count; ++i) out.push_back(cdsc::testing::random_pattern(n, rng));
    return out;
}

// 1. Depolarizing noise: every 3x3 code fails equally often.
Outcome criterion1() {
    Checks c;
    const QubitChannel ch = rates_from({0.1, 0.5});
    const NoiseField field = NoiseField::uniform(ch, 9);
    auto patterns = sample_patterns(200, 9, 1);
    for (Preset p : {Preset::CSS, Preset::XY, Preset::XZZX}) patterns.push_back(preset_pattern(p, 3));
    const double ref = exact_failure_probability(DeformedCode(3, preset_pattern(Preset::CSS, 3)), field);
    const double oracle = cdsc::testing::optimal_failure(
        cdsc::testing::brute_force_cosets(DeformedCode(3, preset_pattern(Preset::CSS, 3)), field));
    double worst = 0.0;
    for (const auto& pat : patterns) worst = std::max(worst, rel_diff(exact_failure_probability(DeformedCode(3, pat), field), ref));
    note(fmt("p_fail(CSS) = %.15f, brute-force oracle %.15f", ref, oracle));
    c.check(rel_diff(ref, oracle) < 1e-10, "exact failure probability matches the 4^9 oracle");
    c.check(worst < 1e-10, fmt("200 random patterns + presets: max relative diff %.3g < 1e-10", worst));

    auto all = sweep_all_patterns(ch, default_threads());
    double sweep_worst = 0.0;
    for (double r : all) sweep_worst = std::max(sweep_worst, rel_diff(r, ref));
    c.check(sweep_worst < 1e-10, fmt("all 19683 patterns (tabulated sweep): max relative diff %.3g", sweep_worst));
    return c.outcome(fmt("p_fail = %.12f for every pattern (max rel diff %.2g)", ref, std::max(worst, sweep_worst)));
}

// 2. d' and t' ground truth at depolarizing noise; XY closed form.
Outcome criterion2() {
    Checks c;
    const BiasedNoiseParams depol{0.01, 0.5};
    auto patterns = sample_patterns(50, 9, 2);
    for (Preset p : {Preset::CSS, Preset::XY, Preset::XZZX}) patterns.push_back(preset_pattern(p, 3));
    double d_lo = 1e9, d_hi = -1e9, t_lo = 1e9, t_hi = -1e9;
    for (const auto& pat : patterns) {
        auto r = effective_distance(DeformedCode(3, pat), depol);
        d_lo = std::min(d_lo, r.d_prime);
        d_hi = std::max(d_hi, r.d_prime);
        t_lo = std::min(t_lo, *r.t_prime);
        t_hi = std::max(t_hi, *r.t_prime);
    }
    note(fmt("over %g codes at eta=0.5: d' in [%.12f, %.12f]", static_cast<double>(patterns.size()), d_lo, d_hi));
    note(fmt("                         t' in [%.12f, %.12f]", t_lo, t_hi));
    c.check(std::abs(d_lo - 3) < 1e-9 && std::abs(d_hi - 3) < 1e-9, "d' = 3 for every sampled code");
    // Cross-check t' on one code by brute force over all 4^9 operators.
    {
        DeformedCode code(3, patterns[0]);
        NoiseField field = NoiseField::uniform(rates_from(depol), 9);
        auto [op, lp] = cdsc::testing::brute_force_most_likely(code, field, [&](const PauliOp& e) {
            DecodeOutcome d = exact_ml_decode(code, field, code.syndrome(e));
            auto cls = code.logical_class(e * d.correction);
            return cls && *cls != LogicalClass::I;
        });
        const double t_oracle = (lp - 9 * std::log1p(-depol.p)) / normalizer_N(depol.p, depol.eta);
        note(fmt("brute-force t' of the first sample: %.12f (weight %g)", t_oracle, static_cast<double>(op.weight())));
        c.check(std::abs(t_oracle - *effective_distance(code, depol).t_prime) < 1e-9,
                "t' agrees with the brute-force non-correctable search");
    }
    c.check(std::abs(t_lo - 1) < 1e-9 && std::abs(t_hi - 1) < 1e-9, "t' = 1 for every sampled code");

    const BiasedNoiseParams biased{0.01, 500.0};
    DeformedCode xy(3, preset_pattern(Preset::XY, 3));
    const double dp = effective_distance(xy, biased).d_prime;
    const double closed = 3 - std::log(2 * biased.eta) / normalizer_N(biased.p, biased.eta);
    NoiseField field = NoiseField::uniform(rates_from(biased), 9);
    auto [op, lp] = cdsc::testing::brute_force_most_likely(xy, field, [&](const PauliOp& e) {
        auto cls = xy.logical_class(e);
        return cls && *cls != LogicalClass::I;
    });
    const double brute = (lp - 9 * std::log1p(-biased.p)) / normalizer_N(biased.p, biased.eta);
    note(fmt("XY d'(3) at p=0.01, eta=500: %.15f, closed form %.15f, brute force %.15f", dp, closed, brute));
    c.check(std::abs(dp - closed) < 1e-9, "XY d' matches 3 - log(2 eta)/N");
    c.check(std::abs(brute - closed) < 1e-9, "exhaustive search matches the closed form");
    return c.outcome(fmt("d' = %.6f, t' = %.6f at eta=0.5; XY d'(3) = %.9f (closed form %.9f)", d_lo, t_lo, dp,
                         closed));
}

// 3. Ranking of presets by (d'; t') against the exact L = 3 rate.
Outcome criterion3() {
    Checks c;
    const Preset presets[] = {Preset::CSS, Preset::XY, Preset::XZZX};
    std::string summary;
    for (double eta : {0.5, 1e2, 1e4, 1e6}) {
        const BiasedNoiseParams noise{0.01, eta};
        const NoiseField field = NoiseField::uniform(rates_from(noise), 9);
        double d[3], t[3], rate[3];
        for (int i = 0; i < 3; ++i) {
            DeformedCode code(3, preset_pattern(presets[i], 3));
            auto r = effective_distance(code, noise);
            d[i] = r.d_prime;
            t[i] = *r.t_prime;
            rate[i] = exact_failure_probability(code, field);
            note(preset_name(presets[i]) + fmt(" eta=%g: d'=%.4f t'=%.4f p_fail=%.6g", eta, d[i], t[i], rate[i]));
        }
        // (d'; t') is a weak order: a strictly better value must mean a
        // strictly lower rate. Codes tied on (d'; t') may differ in rate.
        bool ok = true;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                const bool better = d[a] > d[b] + 1e-9 || (std::abs(d[a] - d[b]) <= 1e-9 && t[a] > t[b] + 1e-9);
                const bool tied = std::abs(d[a] - d[b]) <= 1e-9 && std::abs(t[a] - t[b]) <= 1e-9;
                if (better && !(rate[a] < rate[b] && rel_diff(rate[a], rate[b]) > 1e-9)) ok = false;
                if (tied && a < b && rel_diff(rate[a], rate[b]) > 1e-9) {
                    note("tie on (d'; t') between " + preset_name(presets[a]) + " and " + preset_name(presets[b]) +
                         fmt(" with rates %.4g vs %.4g", rate[a], rate[b]));
                }
            }
        }
        c.check(ok, fmt("eta=%g: no code with better (d'; t') has a higher exact rate", eta));
        std::vector<int> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rate[a] < rate[b] * (1 - 1e-9); });
        std::string ranked;
        for (size_t i = 0; i < order.size(); ++i) {
            if (i) ranked += rel_diff(rate[order[i - 1]], rate[order[i]]) < 1e-9 ? "=" : "<";
            ranked += preset_name(presets[order[i]]);
        }
        summary += (summary.empty() ? "" : "; ") + fmt("eta=%g ", eta) + ranked;
    }
    return c.outcome(summary);
}

// 4. Tensor-network decoder against exact enumeration.
Outcome criterion4() {
    Checks c;
    const BiasedNoiseParams noise{0.1, 10.0};
    auto codes3 = sample_patterns(3, 9, 4);
    for (Preset p : {Preset::CSS, Preset::XY, Preset::XZZX}) codes3.push_back(preset_pattern(p, 3));
    double worst = 0.0;
    for (const auto& pat : codes3) {
        DeformedCode code(3, pat);
        NoiseField field = NoiseField::uniform(rates_from(noise), 9);
        for (uint32_t m = 0; m < 256; ++m) {
            Syndrome s(8);
            for (size_t g = 0; g < 8; ++g) s[g] = (m >> g) & 1;
            auto ex = exact_ml_decode(code, field, s);
            auto tn = tn_ml_decode(code, field, s, kUnboundedChi, false);
            for (size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ex.cosets.prob[k] - tn.cosets.prob[k]));
        }
    }
    c.check(worst < 1e-8, fmt("L=3, chi unbounded, 6 codes x 256 syndromes: max |dP| = %.3g < 1e-8", worst));

    Rng rng = make_rng(kSeed, 4, 1);
    size_t agree = 0, total = 1000;
    auto layout = std::make_shared<const SurfaceCodeLayout>(5);
    for (size_t i = 0; i < total; ++i) {
        DeformedCode code(layout, cdsc::testing::random_pattern(25, rng));
        NoiseField field = NoiseField::uniform(rates_from(noise), 25);
        Syndrome s(code.num_generators());
        for (auto& b : s) b = rng() & 1;
        auto ex = exact_ml_decode(code, field, s);
        auto tn = tn_ml_decode(code, field, s, 56, false);
        // A tie in the exact probabilities counts as agreement.
        const double top = *std::max_element(ex.cosets.prob.begin(), ex.cosets.prob.end());
        agree += ex.cosets[tn.chosen] >= top * (1 - kTieTolerance);
    }
    const double frac = static_cast<double>(agree) / static_cast<double>(total);
    c.check(frac >= 0.999, fmt("L=5, chi=56, 1000 random syndromes: argmax agreement %.4f >= 0.999", frac));
    return c.outcome(fmt("L=3 max |dP| %.2g; L=5 agreement %.4f", worst, frac));
}

// 5. Cluster-method thresholds against the hashing bound.
Outcome criterion5() {
    Checks c;
    uint64_t k = 0;
    double worst0 = 0.0, worst12 = 0.0;
    for (double eta : {0.5, 3.0, 10.0, 30.0, 100.0}) {
        const double hb = hashing_bound(eta);
        double pth[3];
        for (int level = 0; level <= 2; ++level) {
            Rng rng = make_rng(kSeed, 5, k++);
            pth[level] = cluster_threshold(eta, level, 20000, rng);
        }
        note(fmt("eta=%g: hashing %.6f, c=0 %.6f, c=1 %.6f", eta, hb, pth[0], pth[1]) +
             fmt(", c=2 %.6f", pth[2]));
        worst0 = std::max(worst0, std::abs(pth[0] - hb));
        worst12 = std::max({worst12, std::abs(pth[1] - hb), std::abs(pth[2] - hb)});
        c.check(std::abs(pth[0] - hb) < 1e-6, fmt("eta=%g: c=0 equals the hashing bound", eta));
        c.check(std::abs(pth[1] - hb) < 0.03 && std::abs(pth[2] - hb) < 0.03,
                fmt("eta=%g: c=1, c=2 within 0.03 of the hashing bound", eta));
        c.check(std::abs(pth[2] - hb) < std::abs(pth[1] - hb),
                fmt("eta=%g: c=2 closer than c=1 (|dc2| %.5f vs |dc1| %.5f)", eta, std::abs(pth[2] - hb),
                    std::abs(pth[1] - hb)));
    }
    return c.outcome(fmt("max |c0 - hb| %.2g; max |c1,c2 - hb| %.4f", worst0, worst12));
}

// 6. Delta d' over the family grid peaks at (0.25, 0.5).
Outcome criterion6() {
    Checks c;
    std::vector<FamilyParams> grid;
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; a + b <= 4; ++b) {
            // (1, 0) and (0.75, 0) repeat (0, 0) and (0.25, 0) up to a global H.
            if (b == 0 && a >= 3) continue;
            grid.push_back({a / 4.0, b / 4.0});
        }
    }
    std::vector<MeanEstimate> est;
    size_t target = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        est.push_back(delta_dprime(grid[i], {0.02, 100.0}, 500, derive_seed(kSeed, 6, i), default_threads()));
        if (grid[i].pi_xz == 0.25 && grid[i].pi_yz == 0.5) target = i;
        note(fmt("(%.2f, %.2f): mean Delta d' = %.4f +- %.4f", grid[i].pi_xz, grid[i].pi_yz, est[i].mean,
                 est[i].std_error));
    }
    size_t best = 0;
    for (size_t i = 0; i < est.size(); ++i) {
        if (est[i].mean > est[best].mean) best = i;
    }
    c.check(grid.size() == 13, "13 grid points");
    bool ok = true;
    for (size_t i = 0; i < est.size(); ++i) {
        if (i == target) continue;
        const double se = std::hypot(est[i].std_error, est[target].std_error);
        if (est[i].mean - est[target].mean > 2 * se) {
            ok = false;
            note(fmt("(%.2f, %.2f) exceeds the target by %.2f combined SE", grid[i].pi_xz, grid[i].pi_yz,
                     (est[i].mean - est[target].mean) / se));
        }
    }
    c.check(ok, "no grid point exceeds (0.25, 0.5) by more than 2 combined SE");
    return c.outcome(fmt("(0.25,0.5): %.4f +- %.4f; grid max at (%.2f, %.2f)", est[target].mean,
                         est[target].std_error, grid[best].pi_xz, grid[best].pi_yz));
}

RateEstimate rate_of(const CodeSpec& code, int L, BiasedNoiseParams noise, int chi, size_t trials,
                     uint64_t stream) {
    RateRequest req;
    req.code = code;
    req.L = L;
    req.noise = noise;
    req.decoder.kind = DecoderKind::TensorNetwork;
    req.decoder.chi = chi;
    req.decoder.check_convergence = false;
    req.trials = trials;
    req.seed = kSeed;
    req.stream = stream;
    req.threads = default_threads();
    auto t0 = std::chrono::steady_clock::now();
    RateEstimate est = estimate_logical_rate(req);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    note(code.label() + fmt(" L=%g p=%g eta=%g: %.5f", L, noise.p, noise.eta, est.p_logical) +
         fmt(" +- %.5f (%.0f s)", est.std_error, secs));
    return est;
}

// 7. Subthreshold ordering at p = 0.2, eta = 100.
Outcome criterion7() {
    Checks c;
    const BiasedNoiseParams noise{0.2, 100.0};
    const CodeSpec family = CodeSpec::of_family({0.25, 0.5});
    const CodeSpec xzzx = CodeSpec::of_preset(Preset::XZZX);
    const CodeSpec xy = CodeSpec::of_preset(Preset::XY);
    uint64_t stream = 700;
    std::string summary;
    RateEstimate fam9;
    for (int L : {9, 13}) {
        RateEstimate f = rate_of(family, L, noise, 20, 20000, stream++);
        RateEstimate a = rate_of(xzzx, L, noise, 20, 20000, stream++);
        RateEstimate b = rate_of(xy, L, noise, 20, 20000, stream++);
        if (L == 9) fam9 = f;
        for (auto [name, other] : {std::pair{"XZZX", a}, std::pair{"XY", b}}) {
            const double z = (other.p_logical - f.p_logical) / std::hypot(other.std_error, f.std_error);
            c.check(z > 2, fmt("L=%g: family below ", L) + name + fmt(" by %.2f combined SE", z));
        }
        summary += fmt("L=%g family %.4f XZZX %.4f XY %.4f; ", L, f.p_logical, a.p_logical, b.p_logical);
    }
    RateEstimate ti = rate_of(CodeSpec::of_unit_cell(kTiCell), 9, noise, 20, 20000, stream++);
    const double z = (fam9.p_logical - ti.p_logical) / std::hypot(fam9.std_error, ti.std_error);
    c.check(ti.p_logical < fam9.p_logical, fmt("L=9: TI code %.4f below the family average (%.2f combined SE)",
                                               ti.p_logical, z));
    summary += fmt("TI(L=9) %.4f", ti.p_logical);
    return c.outcome(summary);
}

// 8. Infinite-bias constraint percolation at Pi_XZ = 0.5.
Outcome criterion8() {
    Checks c;
    const FamilyParams fam{0.5, 0.0};
    std::vector<double> ls, paths;
    PercolationPoint largest;
    for (int L : {65, 129, 257, 513}) {
        auto t0 = std::chrono::steady_clock::now();
        PercolationPoint pt = run_percolation_point(fam, L, 200, kSeed, default_threads());
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        note(fmt("L=%g: spanning %.3f, mean min path %.2f, tau %.4f", L, pt.spanning_prob, pt.mean_min_path,
                 pt.tau.exponent) +
             fmt(" +- %.4f (%.0f s)", pt.tau.exponent_std_error, secs));
        ls.push_back(L);
        paths.push_back(pt.mean_min_path);
        largest = pt;
    }
    const double tau = largest.tau.exponent;
    const double path_exp = fit_power_law(ls, paths).exponent;
    note(fmt("path exponent %.4f", path_exp));
    c.check(std::abs(tau - 2.055) <= 0.1, fmt("tau = %.4f within 2.055 +- 0.1", tau));
    c.check(std::abs(path_exp - 1.1) <= 0.15, fmt("path exponent %.4f within 1.1 +- 0.15", path_exp));

    Rng rng = make_rng(kSeed, 8, 0);
    size_t checked = 0, mismatches = 0;
    for (int L = 3; L <= 25; L += 2) {
        const size_t n = static_cast<size_t>(L) * static_cast<size_t>(L);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Deformation> d(n);
            for (auto& x : d) x = (rng() & 1) ? Deformation::SwapXZ : Deformation::Id;
            DeformationPattern pat(std::move(d));
            DeformedCode code(L, pat);
            auto cg = infinite_bias_constraints(pat, L);
            auto path = cluster_stats(cg).min_spanning_path();
            std::optional<size_t> want = L == 3 ? cdsc::testing::brute_force_min_pure_z(code) : min_pure_z_weight(code);
            ++checked;
            if (path != want) ++mismatches;
            // The path must itself be a pure-Z logical of that weight.
            for (CheckType sub : {CheckType::X, CheckType::Z}) {
                auto qubits = min_spanning_path_qubits(cg, sub);
                if (!qubits) continue;
                PauliOp z(n);
                for (size_t q : *qubits) z.set(q, Letter::Z);
                auto cls = code.logical_class(z);
                if (!cls || *cls == LogicalClass::I) ++mismatches;
            }
        }
    }
    c.check(mismatches == 0, fmt("SwapXZ-only patterns, L=3..25: %g of %g agree with min_pure_z_weight",
                                 static_cast<double>(checked - mismatches), static_cast<double>(checked)));
    return c.outcome(fmt("tau = %.4f +- %.4f (L=513), path exponent %.4f", tau, largest.tau.exponent_std_error,
                         path_exp));
}

// 9. The 50%-threshold region at eta = 1e8.
Outcome criterion9() {
    Checks c;
    const size_t trials = 10000;
    uint64_t stream = 900;
    std::string summary;
    const CodeSpec inside = CodeSpec::of_family({0.5, 0.0});
    for (double p : {0.30, 0.40, 0.45}) {
        RateEstimate r9 = rate_of(inside, 9, {p, 1e8}, 20, trials, stream++);
        RateEstimate r13 = rate_of(inside, 13, {p, 1e8}, 20, trials, stream++);
        const double se = std::hypot(r9.std_error, r13.std_error);
        c.check(r9.p_logical < 0.5 && r13.p_logical < 0.5, fmt("(0.5, 0) p=%.2f: rates below 0.5", p));
        c.check(r13.p_logical - r9.p_logical <= 2 * se,
                fmt("(0.5, 0) p=%.2f: no increase with L beyond 2 SE (%.2f SE)", p, (r13.p_logical - r9.p_logical) / se));
        summary += fmt("p=%.2f: %.3f->%.3f; ", p, r9.p_logical, r13.p_logical);
    }
    const CodeSpec outside = CodeSpec::of_family({0.1, 0.1});
    RateEstimate o9 = rate_of(outside, 9, {0.45, 1e8}, 20, trials, stream++);
    RateEstimate o13 = rate_of(outside, 13, {0.45, 1e8}, 20, trials, stream++);
    const double z = (o13.p_logical - o9.p_logical) / std::hypot(o9.std_error, o13.std_error);
    c.check(z > 2, fmt("(0.1, 0.1) p=0.45: rate increases with L (%.2f SE)", z));
    summary += fmt("outside (0.1,0.1): %.3f->%.3f", o9.p_logical, o13.p_logical);
    return c.outcome(summary);
}

// 10. Finite-size-scaling round trip and byte-identical reruns.
Outcome criterion10() {
    Checks c;
    double worst_p = 0, worst_nu = 0;
    const std::pair<double, double> truths[] = {{0.2, 1.5}, {0.11, 1.0}, {0.3, 0.8}};
    Rng rng = make_rng(kSeed, 10, 0);
    for (auto [pth, nu] : truths) {
        std::vector<FssPoint> pts;
        for (int L : {9, 13, 17, 21}) {
            for (int k = -3; k <= 3; ++k) {
                const double p = pth + 0.01 * k;
                const double x = (p - pth) * std::pow(L, 1.0 / nu);
                // Small Gaussian scatter at the quoted sigma.
                const double sigma = 0.002;
                std::normal_distribution<double> noise(0.0, sigma);
                pts.push_back({p, L, 0.15 + 0.4 * x + 0.2 * x * x + noise(rng), sigma});
            }
        }
        FssFit fit = fss_fit(pts);
        note(fmt("truth (%.3f, %.2f): fit p_th %.5f nu %.4f", pth, nu, fit.p_th, fit.nu) +
             fmt(" (reduced chi2 %.2f)", fit.reduced_chi2));
        worst_p = std::max(worst_p, std::abs(fit.p_th - pth));
        worst_nu = std::max(worst_nu, std::abs(fit.nu - nu));
    }
    c.check(worst_p < 0.002 && worst_nu < 0.1, fmt("recovery within (0.002, 0.1): worst (%.5f, %.4f)", worst_p,
                                                   worst_nu));

    const char* configs[] = {
        "[experiment]\nkind = threshold\ntrials = 300\nseed = 4\n[code]\nfamily = 0.25:0.5\nL = 3, 5\n"
        "[noise]\np = 0.1, 0.15, 0.2\neta = 10\n[decoder]\nchi = 8\n",
        "[experiment]\nkind = dprime_sweep\nseed = 2\n[sweep]\npoints = 0.25:0.5, 0:0\nsamples = 6\n"
        "[noise]\np = 0.02\neta = 100\n",
        "[experiment]\nkind = percolation\n[code]\nfamily = 0.5:0\nL = 33, 65\n[percolation]\nrealizations = 8\n",
        "[experiment]\nkind = cluster_threshold\n[cluster]\nc = 0, 1\n[noise]\neta = 0.5, 3\n",
    };
    bool identical = true;
    for (const char* text : configs) {
        ExperimentConfig one = resolve_config(parse_config_text(text), std::nullopt);
        ExperimentConfig many = one;
        one.jobs = 1;
        many.jobs = 4;
        auto a = run_experiment(one);
        auto b = run_experiment(one);
        auto d = run_experiment(many);
        bool same = a.table.str() == b.table.str() && a.table.str() == d.table.str();
        if (a.fit) same &= b.fit && a.fit->str() == b.fit->str() && a.fit->str() == d.fit->str();
        identical &= same;
        note(experiment_kind_name(one.kind) + (same ? ": identical CSV across reruns and thread counts"
                                                    : ": CSV DIFFERS"));
    }
    c.check(identical, "reruns with the same config and seed give byte-identical CSV");
    return c.outcome(fmt("FSS worst error (%.5f, %.4f); reruns identical", worst_p, worst_nu));
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::function<Outcome()>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        int k = std::atoi(argv[i]);
        if (!criteria.count(k)) {
            std::fprintf(stderr, "usage: %s [criterion 1-10 ...]\n", argv[0]);
            return 2;
        }
        selected.insert(k);
    }
    if (selected.empty()) {
        for (const auto& [k, f] : criteria) selected.insert(k);
    }
    std::vector<std::string> lines;
    bool all = true;
    for (int k : selected) {
        std::printf("criterion %d\n", k);
        std::fflush(stdout);
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria.at(k)();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[64];
        std::snprintf(buf, sizeof(buf), " [%.1f s]", secs);
        lines.push_back(std::string(o.pass ? "PASS " : "FAIL ") + std::to_string(k) + ": " + o.summary + buf);
        std::printf("%s\n", lines.back().c_str());
        std::fflush(stdout);
        all &= o.pass;
    }
    if (selected.size() > 1) {
        std::printf("\nsummary\n");
        for (const auto& l : lines) std::printf("%s\n", l.c_str());
    }
    return all ? 0 : 1;
}
