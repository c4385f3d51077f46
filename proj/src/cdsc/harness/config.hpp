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

#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdsc/code.hpp"
#include "cdsc/decode.hpp"
#include "cdsc/noise.hpp"

namespace cdsc {

enum class ExperimentKind : uint8_t {
    LogicalRate,
    Threshold,
    Subthreshold,
    DprimeSweep,
    PhaseScan,
    Percolation,
    ClusterThreshold,
    SmallCodeSweep,
    HashingBound,
};

/// Accepts the config spelling (logical_rate, small_code_sweep, ...) and the
/// CLI subcommand spelling (rate, sweep3x3, phase-scan, ...).
ExperimentKind experiment_kind_from_string(std::string_view name);
std::string experiment_kind_name(ExperimentKind kind);

/// Which code a run uses: a preset, a random family (a fresh pattern per
/// trial), a pattern file, or a tiled unit cell.
struct CodeSpec {
    enum class Kind : uint8_t { Preset, Family, PatternFile, UnitCell };
    Kind kind = Kind::Preset;
    Preset preset = Preset::CSS;
    FamilyParams family;
    std::string pattern_file;
    std::vector<std::string> unit_cell;

    bool is_family() const { return kind == Kind::Family; }
    /// Pattern for size L; throws std::logic_error for families.
    DeformationPattern fixed_pattern(int L) const;
    std::string label() const;

    static CodeSpec of_preset(Preset p);
    static CodeSpec of_family(FamilyParams f);
    static CodeSpec of_unit_cell(std::vector<std::string> rows);
};

using ConfigTree = boost::property_tree::ptree;

/// INI text with [section] headers and key = value lines; ';' and '#' start
/// comments. Throws ConfigError on syntax errors.
ConfigTree parse_config_text(const std::string& text);
ConfigTree load_config_file(const std::string& path);
/// Applies "section.key=value". Throws ConfigError when malformed.
void apply_override(ConfigTree& tree, std::string_view assignment);

/// Fully resolved run description. Every field has a documented default;
/// see README for the key list.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::LogicalRate;
    uint64_t seed = 1;
    size_t trials = 20000;
    unsigned jobs = 0;  // 0: all hardware threads
    std::string out = "-";
    /// Per-trial decode trace CSV for rate experiments; empty for none.
    std::string trace;

    CodeSpec code;
    std::vector<int> sizes;
    std::vector<double> ps;
    std::vector<double> etas{0.5};
    DecoderSpec decoder;

    std::vector<FamilyParams> points;  // dprime and phase scan grids
    size_t samples = 500;              // dprime realizations per point

    size_t realizations = 100;  // percolation
    size_t tau_s_min = 16;
    size_t tau_s_max = 0;  // 0: L^2 / 256

    std::vector<int> cluster_levels{0, 1, 2};
    size_t mc_samples = 20000;

    unsigned threads() const;
};

/// Validates keys and values. `kind` (from the CLI subcommand) must agree
/// with experiment.kind when both are present. Unknown sections or keys are
/// ConfigErrors.
ExperimentConfig resolve_config(const ConfigTree& tree, std::optional<ExperimentKind> kind);

/// Lists separated by commas and/or whitespace.
std::vector<std::string> split_list(std::string_view text);

}  // namespace cdsc
