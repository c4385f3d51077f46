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

// Command-line driver. Links only the C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "cdsc.h"

namespace {

int exit_code(cdsc_status s) {
    switch (s) {
        case CDSC_OK:
            return 0;
        case CDSC_ERR_CONFIG:
        case CDSC_ERR_INVALID_ARGUMENT:
            return 2;
        case CDSC_ERR_NUMERIC:
            return 3;
        default:
            return 1;
    }
}

int fail(cdsc_status s) {
    std::fprintf(stderr, "cdsc: %s: %s\n", cdsc_status_name(s), cdsc_last_error());
    return exit_code(s);
}

void print_line(const char* msg, void*) { std::fprintf(stderr, "%s\n", msg); }

void print_warning(const char* msg, void*) { std::fprintf(stderr, "warning: %s\n", msg); }

struct RunOptions {
    std::string config;
    std::vector<std::string> sets;
    bool quiet = false;
};

struct Shortcut {
    const char* flag;
    const char* key;
    const char* help;
};

// One experiment subcommand. Each shortcut flag becomes a section.key=value
// override, applied after the config file and before --set.
class ExperimentCommand {
   public:
    ExperimentCommand(CLI::App& parent, std::string name, std::string kind, std::string description,
                      std::vector<Shortcut> shortcuts)
        : kind_(std::move(kind)), shortcuts_(std::move(shortcuts)), values_(shortcuts_.size()) {
        cmd_ = parent.add_subcommand(std::move(name), std::move(description));
        cmd_->add_option("--config", opts_.config, "INI config file")->check(CLI::ExistingFile);
        cmd_->add_option("--set", opts_.sets, "override section.key=value (repeatable)");
        cmd_->add_flag("--quiet,-q", opts_.quiet, "no progress on stderr");
        for (size_t i = 0; i < shortcuts_.size(); ++i) {
            cmd_->add_option(shortcuts_[i].flag, values_[i], shortcuts_[i].help);
        }
    }

    bool parsed() const { return cmd_->parsed(); }

    int run() {
        cdsc_experiment* exp = nullptr;
        cdsc_status s = opts_.config.empty() ? cdsc_experiment_new(&exp)
                                             : cdsc_experiment_from_file(opts_.config.c_str(), &exp);
        if (s != CDSC_OK) return fail(s);
        std::vector<std::string> assignments;
        for (size_t i = 0; i < shortcuts_.size(); ++i) {
            if (values_[i]) assignments.push_back(std::string(shortcuts_[i].key) + "=" + *values_[i]);
        }
        assignments.insert(assignments.end(), opts_.sets.begin(), opts_.sets.end());
        for (const auto& a : assignments) {
            if ((s = cdsc_experiment_set(exp, a.c_str())) != CDSC_OK) break;
        }
        if (s == CDSC_OK) s = cdsc_experiment_run(exp, kind_.c_str(), opts_.quiet ? nullptr : print_line, nullptr);
        if (s == CDSC_OK) s = cdsc_experiment_write(exp, nullptr);
        cdsc_experiment_free(exp);
        return s == CDSC_OK ? 0 : fail(s);
    }

   private:
    std::string kind_;
    std::vector<Shortcut> shortcuts_;
    std::vector<std::optional<std::string>> values_;
    RunOptions opts_;
    CLI::App* cmd_ = nullptr;
};

const std::vector<Shortcut> kCommon = {
    {"--seed", "experiment.seed", "master seed"},
    {"--out,-o", "experiment.out", "result CSV path ('-' for stdout)"},
    {"--jobs,-j", "experiment.jobs", "worker threads (0: all)"},
};

const std::vector<Shortcut> kNoise = {
    {"--p", "noise.p", "physical error rates (comma separated)"},
    {"--eta", "noise.eta", "biases (comma separated; 'inf' allowed)"},
};

const std::vector<Shortcut> kDecoding = {
    {"--trials", "experiment.trials", "Monte Carlo trials per point"},
    {"--decoder", "decoder.kind", "exact | tn"},
    {"--chi", "decoder.chi", "bond dimension ('inf' for unbounded)"},
    {"--L", "code.L", "odd lattice sizes (comma separated)"},
    {"--trace", "experiment.trace", "per-trial decode trace CSV"},
};

const std::vector<Shortcut> kCode = {
    {"--preset", "code.preset", "CSS | XY | XZZX"},
    {"--family", "code.family", "random family pi_xz:pi_yz"},
    {"--pattern-file", "code.pattern_file", "pattern file of I/H/Y rows"},
    {"--unit-cell", "code.unit_cell", "unit cell rows separated by '/'"},
};

std::vector<Shortcut> join(std::initializer_list<std::vector<Shortcut>> parts) {
    std::vector<Shortcut> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford-deformed surface code simulations"};
    app.set_version_flag("--version", std::string(cdsc_version()));
    app.require_subcommand(1);

    const Shortcut points{"--points", "sweep.points", "family grid as pi_xz:pi_yz pairs"};
    std::vector<ExperimentCommand> commands;
    commands.reserve(10);
    commands.emplace_back(app, "sweep3x3", "sweep3x3", "exact failure probability of every 3x3 pattern",
                          join({kCommon, kNoise}));
    commands.emplace_back(app, "rate", "rate", "logical error rate of one code",
                          join({kCommon, kNoise, kDecoding, kCode}));
    commands.emplace_back(app, "subthreshold", "subthreshold", "logical error rate against L below threshold",
                          join({kCommon, kNoise, kDecoding, kCode}));
    commands.emplace_back(app, "threshold", "threshold", "threshold by finite-size scaling",
                          join({kCommon, kNoise, kDecoding, kCode}));
    commands.emplace_back(app, "dprime", "dprime", "mean d'(5) - d'(3) over a family grid",
                          join({kCommon, kNoise, {points, {"--samples", "sweep.samples", "realizations per point"}}}));
    commands.emplace_back(app, "phase-scan", "phase-scan", "logical error rates over a family grid",
                          join({kCommon, kNoise, kDecoding, {points}}));
    commands.emplace_back(app, "percolation", "percolation", "infinite-bias constraint percolation",
                          join({kCommon,
                                {{"--family", "code.family", "family pi_xz:pi_yz"},
                                 {"--L", "code.L", "lattice sizes"},
                                 {"--realizations", "percolation.realizations", "realizations per size"}}}));
    commands.emplace_back(app, "cluster-threshold", "cluster-threshold", "cluster-method threshold estimates",
                          join({kCommon,
                                {{"--eta", "noise.eta", "biases"},
                                 {"--c", "cluster.c", "cluster levels (0, 1, 2)"},
                                 {"--mc-samples", "cluster.mc_samples", "Monte Carlo samples for c = 2"}}}));
    commands.emplace_back(app, "hashing-bound", "hashing-bound", "hashing bound against bias",
                          join({{{"--out,-o", "experiment.out", "result CSV path"},
                                 {"--eta", "noise.eta", "biases"}}}));

    std::string plot_in, plot_out = "-", plot_kind;
    auto* plot = app.add_subcommand("plot", "render a result CSV as SVG");
    plot->add_option("csv", plot_in, "result CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--kind", plot_kind, "subthreshold | threshold | phase | histogram")->required();
    plot->add_option("--out,-o", plot_out, "SVG path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (plot->parsed()) {
        cdsc_status s = cdsc_plot(plot_in.c_str(), plot_kind.c_str(), plot_out.c_str(), print_warning, nullptr);
        return s == CDSC_OK ? 0 : fail(s);
    }
    for (auto& c : commands) {
        if (c.parsed()) return c.run();
    }
    return 1;
}
