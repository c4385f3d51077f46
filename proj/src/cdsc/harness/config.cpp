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

#include "cdsc/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cdsc/error.hpp"
#include "cdsc/parallel.hpp"

namespace cdsc {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"experiment", {"kind", "seed", "trials", "jobs", "out", "trace"}},
        {"code", {"preset", "family", "pattern_file", "unit_cell", "L"}},
        {"noise", {"p", "eta"}},
        {"decoder", {"kind", "chi", "check_convergence"}},
        {"sweep", {"points", "samples"}},
        {"percolation", {"realizations", "tau_s_min", "tau_s_max"}},
        {"cluster", {"c", "mc_samples"}},
    };
    return keys;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

template <typename T>
T parse_number(std::string_view text, const std::string& key) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(key + ": cannot parse '" + std::string(text) + "'");
    }
    return v;
}

double parse_double(std::string_view text, const std::string& key) {
    double v = parse_number<double>(text, key);
    if (!std::isfinite(v)) throw ConfigError(key + ": value must be finite");
    return v;
}

FamilyParams parse_point(std::string_view text, const std::string& key) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError(key + ": expected pi_xz:pi_yz, got '" + std::string(text) + "'");
    }
    FamilyParams f{parse_double(text.substr(0, colon), key), parse_double(text.substr(colon + 1), key)};
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
    return f;
}

class Reader {
   public:
    explicit Reader(const ConfigTree& tree) : tree_(tree) {}

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        auto sec = tree_.get_child_optional(section);
        if (!sec) return std::nullopt;
        auto v = sec->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return *v;
    }

    template <typename T>
    void number(const std::string& section, const std::string& key, T& out) const {
        if (auto v = get(section, key)) out = parse_number<T>(*v, section + "." + key);
    }

   private:
    const ConfigTree& tree_;
};

void check_known(const ConfigTree& tree) {
    for (const auto& [section, child] : tree) {
        auto it = known_keys().find(section);
        if (it == known_keys().end()) {
            if (child.empty()) throw ConfigError("key '" + section + "' must be inside a [section]");
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto& [key, value] : child) {
            if (!it->second.count(key)) throw ConfigError("unknown config key " + section + "." + key);
        }
    }
}

bool needs_code(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::LogicalRate:
        case ExperimentKind::Threshold:
        case ExperimentKind::Subthreshold:
            return true;
        default:
            return false;
    }
}

}  // namespace

ExperimentKind experiment_kind_from_string(std::string_view name) {
    static const std::map<std::string, ExperimentKind, std::less<>> names = {
        {"logical_rate", ExperimentKind::LogicalRate},
        {"rate", ExperimentKind::LogicalRate},
        {"threshold", ExperimentKind::Threshold},
        {"subthreshold", ExperimentKind::Subthreshold},
        {"dprime_sweep", ExperimentKind::DprimeSweep},
        {"dprime", ExperimentKind::DprimeSweep},
        {"phase_scan", ExperimentKind::PhaseScan},
        {"phase-scan", ExperimentKind::PhaseScan},
        {"percolation", ExperimentKind::Percolation},
        {"cluster_threshold", ExperimentKind::ClusterThreshold},
        {"cluster-threshold", ExperimentKind::ClusterThreshold},
        {"small_code_sweep", ExperimentKind::SmallCodeSweep},
        {"sweep3x3", ExperimentKind::SmallCodeSweep},
        {"hashing_bound", ExperimentKind::HashingBound},
        {"hashing-bound", ExperimentKind::HashingBound},
    };
    auto it = names.find(name);
    if (it == names.end()) throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
    return it->second;
}

std::string experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::LogicalRate:
            return "logical_rate";
        case ExperimentKind::Threshold:
            return "threshold";
        case ExperimentKind::Subthreshold:
            return "subthreshold";
        case ExperimentKind::DprimeSweep:
            return "dprime_sweep";
        case ExperimentKind::PhaseScan:
            return "phase_scan";
        case ExperimentKind::Percolation:
            return "percolation";
        case ExperimentKind::ClusterThreshold:
            return "cluster_threshold";
        case ExperimentKind::SmallCodeSweep:
            return "small_code_sweep";
        case ExperimentKind::HashingBound:
            return "hashing_bound";
    }
    return "?";
}

DeformationPattern CodeSpec::fixed_pattern(int L) const {
    switch (kind) {
        case Kind::Preset:
            return preset_pattern(preset, L);
        case Kind::PatternFile:
            return read_pattern_file(pattern_file, L);
        case Kind::UnitCell:
            return tiled_pattern(unit_cell, L);
        case Kind::Family:
            break;
    }
    throw std::logic_error("CodeSpec::fixed_pattern: a family has no fixed pattern");
}

std::string CodeSpec::label() const {
    switch (kind) {
        case Kind::Preset:
            return preset_name(preset);
        case Kind::Family:
            return "family(" + fmt(family.pi_xz) + ";" + fmt(family.pi_yz) + ")";
        case Kind::PatternFile:
            return "file:" + pattern_file;
        case Kind::UnitCell: {
            std::string s = "cell:";
            for (size_t i = 0; i < unit_cell.size(); ++i) s += (i ? "/" : "") + unit_cell[i];
            return s;
        }
    }
    return "?";
}

CodeSpec CodeSpec::of_preset(Preset p) {
    CodeSpec s;
    s.kind = Kind::Preset;
    s.preset = p;
    return s;
}

CodeSpec CodeSpec::of_family(FamilyParams f) {
    f.validate();
    CodeSpec s;
    s.kind = Kind::Family;
    s.family = f;
    return s;
}

CodeSpec CodeSpec::of_unit_cell(std::vector<std::string> rows) {
    CodeSpec s;
    s.kind = Kind::UnitCell;
    s.unit_cell = std::move(rows);
    tiled_pattern(s.unit_cell, 3);  // validates the letters
    return s;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

ConfigTree parse_config_text(const std::string& text) {
    ConfigTree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
    }
    return tree;
}

ConfigTree load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ConfigTree& tree, std::string_view assignment) {
    auto eq = assignment.find('=');
    auto dot = assignment.find('.');
    if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 || dot + 1 == eq) {
        throw ConfigError("override must look like section.key=value, got '" + std::string(assignment) + "'");
    }
    std::string section(assignment.substr(0, dot));
    std::string key(assignment.substr(dot + 1, eq - dot - 1));
    std::string value(assignment.substr(eq + 1));
    // put() would split on '.', so address the section child explicitly.
    auto child = tree.get_child_optional(section);
    if (!child) {
        tree.push_back({section, ConfigTree()});
        child = tree.get_child_optional(section);
    }
    child->put(ConfigTree::path_type(key, '\0'), value);
}

unsigned ExperimentConfig::threads() const { return jobs == 0 ? default_threads() : jobs; }

ExperimentConfig resolve_config(const ConfigTree& tree, std::optional<ExperimentKind> kind) {
    check_known(tree);
    Reader r(tree);
    ExperimentConfig c;

    auto config_kind = r.get("experiment", "kind");
    if (config_kind) c.kind = experiment_kind_from_string(*config_kind);
    if (kind) {
        if (config_kind && c.kind != *kind) {
            throw ConfigError("config says experiment.kind = " + *config_kind + " but the command runs " +
                              experiment_kind_name(*kind));
        }
        c.kind = *kind;
    } else if (!config_kind) {
        throw ConfigError("experiment.kind is required");
    }
    r.number("experiment", "seed", c.seed);
    r.number("experiment", "trials", c.trials);
    r.number("experiment", "jobs", c.jobs);
    if (auto v = r.get("experiment", "out")) c.out = *v;
    if (auto v = r.get("experiment", "trace")) c.trace = *v;

    int code_sources = 0;
    if (auto v = r.get("code", "preset")) {
        try {
            c.code = CodeSpec::of_preset(preset_from_string(*v));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("code.preset: ") + e.what());
        }
        ++code_sources;
    }
    if (auto v = r.get("code", "family")) {
        auto items = split_list(*v);
        if (items.size() != 1) throw ConfigError("code.family: expected one pi_xz:pi_yz pair");
        c.code = CodeSpec::of_family(parse_point(items[0], "code.family"));
        ++code_sources;
    }
    if (auto v = r.get("code", "pattern_file")) {
        c.code.kind = CodeSpec::Kind::PatternFile;
        c.code.pattern_file = *v;
        ++code_sources;
    }
    if (auto v = r.get("code", "unit_cell")) {
        std::string rows = *v;
        for (char& ch : rows) {
            if (ch == '/') ch = ' ';
        }
        try {
            c.code = CodeSpec::of_unit_cell(split_list(rows));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("code.unit_cell: ") + e.what());
        }
        ++code_sources;
    }
    if (code_sources > 1) throw ConfigError("give at most one of code.preset, family, pattern_file, unit_cell");
    if (code_sources == 0 && needs_code(c.kind)) throw ConfigError("this experiment needs a [code] source");

    if (auto v = r.get("code", "L")) {
        for (const auto& item : split_list(*v)) {
            int L = parse_number<int>(item, "code.L");
            if (L < 3 || L % 2 == 0) throw ConfigError("code.L: sizes must be odd and at least 3, got " + item);
            c.sizes.push_back(L);
        }
    }
    if (auto v = r.get("noise", "p")) {
        for (const auto& item : split_list(*v)) {
            double p = parse_double(item, "noise.p");
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("noise.p: rates must lie in [0, 1], got " + item);
            c.ps.push_back(p);
        }
    }
    if (auto v = r.get("noise", "eta")) {
        c.etas.clear();
        for (const auto& item : split_list(*v)) {
            double eta = 0.0;
            try {
                eta = parse_eta(item);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("noise.eta: ") + e.what());
            }
            if (!(eta >= 0.5)) throw ConfigError("noise.eta: bias must be at least 0.5, got " + item);
            c.etas.push_back(eta);
        }
    }
    if (auto v = r.get("decoder", "kind")) {
        try {
            c.decoder.kind = decoder_from_string(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("decoder.kind: ") + e.what());
        }
    }
    if (auto v = r.get("decoder", "chi")) {
        if (*v == "inf" || *v == "unbounded") {
            c.decoder.chi = kUnboundedChi;
        } else {
            c.decoder.chi = parse_number<int>(*v, "decoder.chi");
            if (c.decoder.chi < 1) throw ConfigError("decoder.chi must be positive");
        }
    }
    if (auto v = r.get("decoder", "check_convergence")) {
        if (*v == "true" || *v == "1") {
            c.decoder.check_convergence = true;
        } else if (*v == "false" || *v == "0") {
            c.decoder.check_convergence = false;
        } else {
            throw ConfigError("decoder.check_convergence must be true or false");
        }
    }
    if (auto v = r.get("sweep", "points")) {
        for (const auto& item : split_list(*v)) c.points.push_back(parse_point(item, "sweep.points"));
    }
    r.number("sweep", "samples", c.samples);
    r.number("percolation", "realizations", c.realizations);
    r.number("percolation", "tau_s_min", c.tau_s_min);
    r.number("percolation", "tau_s_max", c.tau_s_max);
    if (auto v = r.get("cluster", "c")) {
        c.cluster_levels.clear();
        for (const auto& item : split_list(*v)) {
            int level = parse_number<int>(item, "cluster.c");
            if (level < 0 || level > 2) throw ConfigError("cluster.c: levels are 0, 1 or 2");
            c.cluster_levels.push_back(level);
        }
    }
    r.number("cluster", "mc_samples", c.mc_samples);

    // Per-kind requirements.
    auto require = [&](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string(what) + " is required for " + experiment_kind_name(c.kind));
    };
    switch (c.kind) {
        case ExperimentKind::LogicalRate:
        case ExperimentKind::Threshold:
        case ExperimentKind::Subthreshold:
            require(!c.sizes.empty(), "code.L");
            require(!c.ps.empty(), "noise.p");
            require(c.trials > 0, "a positive experiment.trials");
            break;
        case ExperimentKind::PhaseScan:
            require(!c.sizes.empty(), "code.L");
            require(!c.ps.empty(), "noise.p");
            require(!c.points.empty(), "sweep.points");
            require(c.trials > 0, "a positive experiment.trials");
            break;
        case ExperimentKind::DprimeSweep:
            require(!c.points.empty(), "sweep.points");
            require(!c.ps.empty(), "noise.p");
            require(c.samples > 0, "a positive sweep.samples");
            break;
        case ExperimentKind::Percolation:
            require(!c.sizes.empty(), "code.L");
            require(c.realizations > 0, "a positive percolation.realizations");
            if (c.code.kind != CodeSpec::Kind::Family) throw ConfigError("percolation needs code.family");
            break;
        case ExperimentKind::SmallCodeSweep:
            require(c.ps.size() == 1, "exactly one noise.p");
            for (double p : c.ps) {
                if (!(p > 0.0 && p < 1.0)) throw ConfigError("small_code_sweep: p must lie in (0, 1)");
            }
            break;
        case ExperimentKind::ClusterThreshold:
        case ExperimentKind::HashingBound:
            break;
    }
    if (c.kind == ExperimentKind::Threshold && (c.sizes.size() < 2 || c.ps.size() < 3)) {
        throw ConfigError("threshold needs at least two sizes in code.L and three rates in noise.p");
    }
    return c;
}

}  // namespace cdsc
