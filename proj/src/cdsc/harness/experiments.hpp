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

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "cdsc/harness/config.hpp"
#include "cdsc/harness/csv.hpp"
#include "cdsc/harness/fss.hpp"
#include "cdsc/statmech.hpp"

namespace cdsc {

/// Aggregate of `realizations` percolation runs at one size. Realization r
/// uses make_rng(seed, L, r).
struct PercolationPoint {
    int L = 0;
    size_t realizations = 0;
    double spanning_prob = 0.0;
    double mean_largest = 0.0;
    /// Mean over spanning realizations; NaN if none spans.
    double mean_min_path = 0.0;
    /// Both sublattices, all realizations.
    std::map<size_t, uint64_t> size_histogram;
    /// Count-weighted log-binned fit over [s_min, s_max].
    PowerLawFit tau;
};

/// s_max = 0 selects L^2 / 256, which keeps the fit window below the
/// finite-size cutoff of the largest clusters.
PercolationPoint run_percolation_point(const FamilyParams& family, int L, size_t realizations, uint64_t seed,
                                       unsigned threads, size_t s_min = 16, size_t s_max = 0);

struct ExperimentResult {
    CsvTable table;
    /// Threshold experiments: one fit row per bias.
    std::optional<CsvTable> fit;
    /// Set when a fit failed numerically; the table is still valid.
    std::optional<std::string> fit_error;
    /// Rate experiments with config.trace set: one row per decoded trial.
    std::optional<CsvTable> trace;
};

using ProgressFn = std::function<void(const std::string&)>;

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Writes the table to `out` (or stdout for "-"), the fit table next to it as
/// <stem>.fss.csv, and the trace (if any) to trace_path. Rethrows a recorded
/// fit failure as NumericError after writing.
void write_result(const ExperimentResult& result, const std::string& out, const std::string& trace_path = "");

/// Path of the fit table that accompanies `out`.
std::string fit_path_for(const std::string& out);

}  // namespace cdsc
