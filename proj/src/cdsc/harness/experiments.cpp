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

#include "cdsc/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cdsc/error.hpp"
#include "cdsc/harness/rate.hpp"
#include "cdsc/harness/small_code.hpp"
#include "cdsc/metrics.hpp"
#include "cdsc/parallel.hpp"

namespace cdsc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string chi_text(const DecoderSpec& d) {
    if (d.kind == DecoderKind::Exact) return "";
    return d.chi == kUnboundedChi ? "inf" : std::to_string(d.chi);
}

std::vector<std::string> rate_columns() {
    return {"experiment", "code", "pi_xz", "pi_yz", "L", "p", "eta", "decoder", "chi", "trials", "failures",
            "p_logical", "std_error", "converged_fraction", "seed", "stream", "rng"};
}

ExperimentResult table_only(CsvTable t) {
    ExperimentResult r;
    r.table = std::move(t);
    return r;
}

std::string syndrome_bits(const Syndrome& s) {
    std::string out(s.size(), '0');
    for (size_t i = 0; i < s.size(); ++i) out[i] = s[i] ? '1' : '0';
    return out;
}

struct RateRows {
    CsvTable table{rate_columns()};
    std::optional<CsvTable> trace;
    std::vector<std::pair<double, FssPoint>> points;  // (eta, point)
};

void run_rates(const ExperimentConfig& cfg, const std::vector<CodeSpec>& codes, RateRows& rows,
               const ProgressFn& progress) {
    if (!cfg.trace.empty()) {
        rows.trace.emplace(std::vector<std::string>{"code", "L", "p", "eta", "stream", "trial", "syndrome", "p_I",
                                                    "p_X", "p_Z", "p_Y", "chosen", "converged", "failed"});
    }
    uint64_t stream = 0;
    for (const CodeSpec& code : codes) {
        for (double eta : cfg.etas) {
            for (int L : cfg.sizes) {
                for (double p : cfg.ps) {
                    RateRequest req;
                    req.code = code;
                    req.L = L;
                    req.noise = {p, eta};
                    req.decoder = cfg.decoder;
                    req.trials = cfg.trials;
                    req.seed = cfg.seed;
                    req.stream = stream;
                    req.threads = cfg.threads();
                    std::vector<DecodeTrace> trace;
                    if (rows.trace) req.trace = &trace;
                    RateEstimate est = estimate_logical_rate(req);
                    for (size_t t = 0; t < trace.size(); ++t) {
                        const DecodeTrace& d = trace[t];
                        rows.trace->add_row({code.label(), std::to_string(L), csv_double(p), format_eta(eta),
                                             std::to_string(stream), std::to_string(t), syndrome_bits(d.syndrome),
                                             csv_double(d.cosets[LogicalClass::I]),
                                             csv_double(d.cosets[LogicalClass::X]),
                                             csv_double(d.cosets[LogicalClass::Z]),
                                             csv_double(d.cosets[LogicalClass::Y]),
                                             std::string(1, class_char(d.chosen)), d.converged ? "1" : "0",
                                             d.failed ? "1" : "0"});
                    }
                    const bool fam = code.is_family();
                    rows.table.add_row({experiment_kind_name(cfg.kind), code.label(),
                                        fam ? csv_double(code.family.pi_xz) : "",
                                        fam ? csv_double(code.family.pi_yz) : "", std::to_string(L), csv_double(p),
                                        format_eta(eta), decoder_name(cfg.decoder.kind), chi_text(cfg.decoder),
                                        std::to_string(est.trials), std::to_string(est.failures),
                                        csv_double(est.p_logical), csv_double(est.std_error),
                                        csv_double(est.converged_fraction), std::to_string(cfg.seed),
                                        std::to_string(stream), kRngName});
                    rows.points.push_back({eta, FssPoint{p, L, est.p_logical, est.std_error}});
                    if (progress) {
                        progress(code.label() + " L=" + std::to_string(L) + " p=" + csv_double(p) +
                                 " eta=" + format_eta(eta) + ": " + csv_double(est.p_logical) + " +- " +
                                 csv_double(est.std_error));
                    }
                    ++stream;
                }
            }
        }
    }
}

ExperimentResult run_threshold(const ExperimentConfig& cfg, const ProgressFn& progress) {
    RateRows rows;
    run_rates(cfg, {cfg.code}, rows, progress);
    ExperimentResult res;
    res.table = rows.table;
    res.trace = rows.trace;
    CsvTable fit({"code", "eta", "p_th", "p_th_err", "nu", "nu_err", "A", "B", "C", "reduced_chi2",
                  "low_confidence"});
    for (double eta : cfg.etas) {
        std::vector<FssPoint> pts;
        for (const auto& [e, pt] : rows.points) {
            if (e == eta) pts.push_back(pt);
        }
        try {
            FssFit f = fss_fit(pts);
            fit.add_row({cfg.code.label(), format_eta(eta), csv_double(f.p_th), csv_double(f.p_th_err),
                         csv_double(f.nu), csv_double(f.nu_err), csv_double(f.A), csv_double(f.B), csv_double(f.C),
                         csv_double(f.reduced_chi2), f.low_confidence ? "1" : "0"});
            if (progress) {
                progress("fit eta=" + format_eta(eta) + ": p_th=" + csv_double(f.p_th) + " nu=" + csv_double(f.nu) +
                         (f.low_confidence ? " (low confidence)" : ""));
            }
        } catch (const std::invalid_argument& e) {
            res.fit_error = std::string("eta=") + format_eta(eta) + ": " + e.what();
        } catch (const NumericError& e) {
            res.fit_error = std::string("eta=") + format_eta(eta) + ": " + e.what();
        }
    }
    res.fit = std::move(fit);
    return res;
}

ExperimentResult run_small_code_sweep(const ExperimentConfig& cfg, const ProgressFn& progress) {
    CsvTable t({"pattern", "p", "eta", "p_fail", "preset"});
    std::map<std::string, std::string> preset_of;
    for (Preset pr : {Preset::CSS, Preset::XZZX, Preset::XY}) preset_of[preset_pattern(pr, 3).str()] = preset_name(pr);
    const double p = cfg.ps.at(0);
    for (double eta : cfg.etas) {
        auto rates = sweep_all_patterns(rates_from({p, eta}), cfg.threads());
        for (uint32_t i = 0; i < rates.size(); ++i) {
            std::string pat = SmallCodeSweep::pattern_at(i).str();
            auto it = preset_of.find(pat);
            t.add_row({pat, csv_double(p), format_eta(eta), csv_double(rates[i]),
                       it == preset_of.end() ? "" : it->second});
        }
        if (progress) {
            auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
            std::set<double> distinct(rates.begin(), rates.end());
            progress("eta=" + format_eta(eta) + ": min " + csv_double(*lo) + " max " + csv_double(*hi) + ", " +
                     std::to_string(distinct.size()) + " distinct rates");
        }
    }
    return table_only(std::move(t));
}

ExperimentResult run_dprime(const ExperimentConfig& cfg, const ProgressFn& progress) {
    CsvTable t({"pi_xz", "pi_yz", "p", "eta", "L", "mean_delta_dprime", "std_error", "samples", "seed"});
    uint64_t k = 0;
    for (double eta : cfg.etas) {
        for (double p : cfg.ps) {
            for (const FamilyParams& f : cfg.points) {
                const uint64_t point_seed = derive_seed(cfg.seed, 11, k++);
                MeanEstimate m = delta_dprime(f, {p, eta}, cfg.samples, point_seed, cfg.threads());
                t.add_row({csv_double(f.pi_xz), csv_double(f.pi_yz), csv_double(p), format_eta(eta), "3",
                           csv_double(m.mean), csv_double(m.std_error), std::to_string(m.samples),
                           std::to_string(point_seed)});
                if (progress) {
                    progress("(" + csv_double(f.pi_xz) + ", " + csv_double(f.pi_yz) + ") eta=" + format_eta(eta) +
                             ": " + csv_double(m.mean) + " +- " + csv_double(m.std_error));
                }
            }
        }
    }
    return table_only(std::move(t));
}

ExperimentResult run_percolation(const ExperimentConfig& cfg, const ProgressFn& progress) {
    std::vector<PercolationPoint> pts;
    for (int L : cfg.sizes) {
        pts.push_back(run_percolation_point(cfg.code.family, L, cfg.realizations, cfg.seed, cfg.threads(),
                                            cfg.tau_s_min, cfg.tau_s_max));
        if (progress) {
            progress("L=" + std::to_string(L) + ": spanning " + csv_double(pts.back().spanning_prob) + ", tau " +
                     csv_double(pts.back().tau.exponent));
        }
    }
    // Exponents across sizes, from sizes where they are defined.
    std::vector<double> ls, paths, lls, largest;
    for (const auto& p : pts) {
        if (std::isfinite(p.mean_min_path) && p.mean_min_path > 0) {
            ls.push_back(p.L);
            paths.push_back(p.mean_min_path);
        }
        if (p.mean_largest > 0) {
            lls.push_back(p.L);
            largest.push_back(p.mean_largest);
        }
    }
    double path_exp = ls.size() >= 2 ? fit_power_law(ls, paths).exponent : kNan;
    double largest_exp = lls.size() >= 2 ? fit_power_law(lls, largest).exponent : kNan;
    CsvTable t({"L", "pi_xz", "pi_yz", "realizations", "spanning_prob", "largest_cluster", "mean_min_path",
                "tau_fit", "tau_err", "path_exponent", "largest_exponent", "seed"});
    for (const auto& p : pts) {
        t.add_row({std::to_string(p.L), csv_double(cfg.code.family.pi_xz), csv_double(cfg.code.family.pi_yz),
                   std::to_string(p.realizations), csv_double(p.spanning_prob), csv_double(p.mean_largest),
                   csv_double(p.mean_min_path), csv_double(p.tau.exponent), csv_double(p.tau.exponent_std_error),
                   csv_double(path_exp), csv_double(largest_exp), std::to_string(cfg.seed)});
    }
    return table_only(std::move(t));
}

ExperimentResult run_cluster(const ExperimentConfig& cfg, const ProgressFn& progress) {
    CsvTable t({"eta", "c", "p_th", "hashing_bound", "mc_samples", "seed"});
    uint64_t k = 0;
    for (double eta : cfg.etas) {
        const double hb = hashing_bound(eta);
        for (int c : cfg.cluster_levels) {
            Rng rng = make_rng(cfg.seed, 13, k++);
            double pth = cluster_threshold(eta, c, cfg.mc_samples, rng);
            t.add_row({format_eta(eta), std::to_string(c), csv_double(pth), csv_double(hb),
                       std::to_string(cfg.mc_samples), std::to_string(cfg.seed)});
            if (progress) progress("eta=" + format_eta(eta) + " c=" + std::to_string(c) + ": " + csv_double(pth));
        }
    }
    return table_only(std::move(t));
}

ExperimentResult run_hashing(const ExperimentConfig& cfg) {
    CsvTable t({"eta", "p_hashing"});
    for (double eta : cfg.etas) t.add_row({format_eta(eta), csv_double(hashing_bound(eta))});
    return table_only(std::move(t));
}

}  // namespace

PercolationPoint run_percolation_point(const FamilyParams& family, int L, size_t realizations, uint64_t seed,
                                       unsigned threads, size_t s_min, size_t s_max) {
    family.validate();
    if (realizations == 0) throw std::invalid_argument("run_percolation_point: need at least one realization");
    const PercolationLattice lattice(L);
    std::vector<ClusterStats> stats(realizations);
    parallel_for(realizations, threads, [&](size_t r) {
        Rng rng = make_rng(seed, static_cast<uint64_t>(L), r);
        stats[r] = percolation_stats(family, lattice, rng);
    });
    PercolationPoint pt;
    pt.L = L;
    pt.realizations = realizations;
    size_t spanning = 0;
    double path_sum = 0.0, largest_sum = 0.0;
    for (const auto& st : stats) {
        if (auto m = st.min_spanning_path()) {
            ++spanning;
            path_sum += static_cast<double>(*m);
        }
        largest_sum += static_cast<double>(st.largest());
        for (const auto* sub : {&st.x, &st.z}) {
            for (auto [s, c] : sub->size_histogram) pt.size_histogram[s] += c;
        }
    }
    pt.spanning_prob = static_cast<double>(spanning) / static_cast<double>(realizations);
    pt.mean_largest = largest_sum / static_cast<double>(realizations);
    pt.mean_min_path = spanning ? path_sum / static_cast<double>(spanning) : kNan;
    if (s_max == 0) s_max = static_cast<size_t>(L) * static_cast<size_t>(L) / 256;
    try {
        pt.tau = fit_fisher_exponent(pt.size_histogram, s_min, s_max);
    } catch (const std::invalid_argument&) {
        // Too few populated bins (small L): no exponent.
        pt.tau.exponent = pt.tau.exponent_std_error = pt.tau.log_prefactor = kNan;
    }
    return pt;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
    switch (cfg.kind) {
        case ExperimentKind::LogicalRate:
        case ExperimentKind::Subthreshold: {
            RateRows rows;
            run_rates(cfg, {cfg.code}, rows, progress);
            return {rows.table, std::nullopt, std::nullopt, rows.trace};
        }
        case ExperimentKind::PhaseScan: {
            std::vector<CodeSpec> codes;
            for (const auto& f : cfg.points) codes.push_back(CodeSpec::of_family(f));
            RateRows rows;
            run_rates(cfg, codes, rows, progress);
            return {rows.table, std::nullopt, std::nullopt, rows.trace};
        }
        case ExperimentKind::Threshold:
            return run_threshold(cfg, progress);
        case ExperimentKind::SmallCodeSweep:
            return run_small_code_sweep(cfg, progress);
        case ExperimentKind::DprimeSweep:
            return run_dprime(cfg, progress);
        case ExperimentKind::Percolation:
            return run_percolation(cfg, progress);
        case ExperimentKind::ClusterThreshold:
            return run_cluster(cfg, progress);
        case ExperimentKind::HashingBound:
            return run_hashing(cfg);
    }
    throw std::logic_error("run_experiment: unhandled kind");
}

std::string fit_path_for(const std::string& out) {
    if (out == "-") return "-";
    const std::string ext = ".csv";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
        return out.substr(0, out.size() - ext.size()) + ".fss.csv";
    }
    return out + ".fss.csv";
}

void write_result(const ExperimentResult& result, const std::string& out, const std::string& trace_path) {
    result.table.write(out);
    if (result.trace && !trace_path.empty()) result.trace->write(trace_path);
    if (result.fit) result.fit->write(fit_path_for(out));
    if (result.fit_error) throw NumericError("threshold fit failed (" + *result.fit_error + ")");
}

}  // namespace cdsc
