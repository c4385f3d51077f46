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

#include <string>
#include <string_view>
#include <vector>

#include "cdsc/harness/csv.hpp"

namespace cdsc {

enum class PlotKind : uint8_t { Subthreshold, Threshold, Phase, Histogram };

PlotKind plot_kind_from_string(std::string_view name);

struct PlotOutput {
    std::string svg;
    std::vector<std::string> warnings;
};

/// Deterministic SVG for a result table:
///   subthreshold: p_logical (log) against L, one series per code and bias;
///   threshold:    p_logical against p, one series per L and bias;
///   phase:        p_logical against p, one series per (pi_xz, pi_yz, L);
///   histogram:    sweep3x3 p_fail counts in 40 log-spaced bins per bias.
/// A table without rows yields empty axes and a warning.
PlotOutput render_plot(const CsvTable& table, PlotKind kind);

/// Reads csv_path, renders, writes svg_path ("-" for stdout).
std::vector<std::string> emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace cdsc
