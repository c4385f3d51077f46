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

#include "cdsc.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "cdsc/code.hpp"
#include "cdsc/decode.hpp"
#include "cdsc/error.hpp"
#include "cdsc/harness/config.hpp"
#include "cdsc/harness/experiments.hpp"
#include "cdsc/harness/plot.hpp"
#include "cdsc/metrics.hpp"
#include "cdsc/noise.hpp"

struct cdsc_code {
    cdsc::DeformedCode code;
};

struct cdsc_experiment {
    cdsc::ConfigTree tree;
    std::optional<cdsc::ExperimentConfig> config;
    std::optional<cdsc::ExperimentResult> result;
    std::string csv;
    std::string fit_csv;
};

namespace {

thread_local std::string last_error;

// Runs f, translating exceptions into status codes.
template <typename F>
cdsc_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return CDSC_OK;
    } catch (const cdsc::ConfigError& e) {
        last_error = e.what();
        return CDSC_ERR_CONFIG;
    } catch (const cdsc::NumericError& e) {
        last_error = e.what();
        return CDSC_ERR_NUMERIC;
    } catch (const cdsc::UnsupportedError& e) {
        last_error = e.what();
        return CDSC_ERR_UNSUPPORTED;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return CDSC_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return CDSC_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CDSC_ERR_INTERNAL;
    } catch (const std::ios_base::failure& e) {
        last_error = e.what();
        return CDSC_ERR_IO;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CDSC_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return CDSC_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void copy_out(const std::string& s, char* buf, size_t len) {
    if (len < s.size() + 1) throw std::invalid_argument("output buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
}

cdsc::NoiseField iid_field(const cdsc::DeformedCode& code, double p, double eta) {
    cdsc::BiasedNoiseParams params{p, eta};
    params.validate();
    return cdsc::NoiseField::uniform(cdsc::rates_from(params), code.num_qubits());
}

}  // namespace

extern "C" {

const char* cdsc_version(void) { return "0.1.0"; }

const char* cdsc_last_error(void) { return last_error.c_str(); }

const char* cdsc_status_name(cdsc_status status) {
    switch (status) {
        case CDSC_OK:
            return "ok";
        case CDSC_ERR_INTERNAL:
            return "internal error";
        case CDSC_ERR_CONFIG:
            return "configuration error";
        case CDSC_ERR_NUMERIC:
            return "numeric failure";
        case CDSC_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case CDSC_ERR_UNSUPPORTED:
            return "unsupported";
        case CDSC_ERR_IO:
            return "i/o error";
    }
    return "unknown status";
}

cdsc_status cdsc_code_from_preset(const char* preset, int L, cdsc_code** out) {
    return guarded([&] {
        require(preset && out, "cdsc_code_from_preset: null argument");
        *out = nullptr;
        auto p = cdsc::preset_from_string(preset);
        *out = new cdsc_code{cdsc::DeformedCode(L, cdsc::preset_pattern(p, L))};
    });
}

cdsc_status cdsc_code_from_pattern(const char* pattern, int L, cdsc_code** out) {
    return guarded([&] {
        require(pattern && out, "cdsc_code_from_pattern: null argument");
        *out = nullptr;
        std::string letters;
        for (const char* c = pattern; *c; ++c) {
            if (*c != '/' && !std::isspace(static_cast<unsigned char>(*c))) letters += *c;
        }
        require(L >= 3 && letters.size() == static_cast<size_t>(L) * static_cast<size_t>(L),
                "cdsc_code_from_pattern: pattern needs L*L letters");
        *out = new cdsc_code{cdsc::DeformedCode(L, cdsc::DeformationPattern::from_string(letters))};
    });
}

void cdsc_code_free(cdsc_code* code) { delete code; }

int cdsc_code_L(const cdsc_code* code) { return code ? code->code.L() : 0; }

size_t cdsc_code_num_qubits(const cdsc_code* code) { return code ? code->code.num_qubits() : 0; }

size_t cdsc_code_num_generators(const cdsc_code* code) { return code ? code->code.num_generators() : 0; }

cdsc_status cdsc_code_pattern(const cdsc_code* code, char* buf, size_t buf_len) {
    return guarded([&] {
        require(code && buf, "cdsc_code_pattern: null argument");
        copy_out(code->code.pattern().str(), buf, buf_len);
    });
}

cdsc_status cdsc_code_syndrome(const cdsc_code* code, const char* error, uint8_t* syndrome, size_t syndrome_len) {
    return guarded([&] {
        require(code && error && syndrome, "cdsc_code_syndrome: null argument");
        require(std::strlen(error) == code->code.num_qubits(), "cdsc_code_syndrome: error has the wrong length");
        require(syndrome_len >= code->code.num_generators(), "cdsc_code_syndrome: syndrome buffer too small");
        auto s = code->code.syndrome(cdsc::PauliOp::from_string(error));
        std::copy(s.begin(), s.end(), syndrome);
    });
}

cdsc_status cdsc_code_distance(const cdsc_code* code, size_t* out) {
    return guarded([&] {
        require(code && out, "cdsc_code_distance: null argument");
        *out = cdsc::code_distance(code->code);
    });
}

cdsc_status cdsc_code_decode(const cdsc_code* code, double p, double eta, const uint8_t* syndrome,
                             size_t syndrome_len, const char* decoder, int chi, cdsc_decode_result* result,
                             char* correction, size_t correction_len) {
    return guarded([&] {
        require(code && syndrome && result, "cdsc_code_decode: null argument");
        require(syndrome_len == code->code.num_generators(), "cdsc_code_decode: syndrome has the wrong length");
        cdsc::DecoderSpec spec;
        if (decoder) spec.kind = cdsc::decoder_from_string(decoder);
        spec.chi = chi <= 0 ? cdsc::kUnboundedChi : chi;
        cdsc::Syndrome s(syndrome, syndrome + syndrome_len);
        for (auto& b : s) require(b <= 1, "cdsc_code_decode: syndrome bits must be 0 or 1");
        auto outcome = cdsc::decode(code->code, iid_field(code->code, p, eta), s, spec);
        for (size_t c = 0; c < 4; ++c) result->prob[c] = outcome.cosets.prob[c];
        result->chosen = cdsc::class_char(outcome.chosen);
        result->converged = outcome.converged ? 1 : 0;
        if (correction) copy_out(outcome.correction.str(), correction, correction_len);
    });
}

cdsc_status cdsc_code_effective_distance(const cdsc_code* code, double p, double eta, double* d_prime,
                                         double* t_prime) {
    return guarded([&] {
        require(code && d_prime, "cdsc_code_effective_distance: null argument");
        auto report = cdsc::effective_distance(code->code, {p, eta});
        *d_prime = report.d_prime;
        if (t_prime) *t_prime = report.t_prime.value_or(std::numeric_limits<double>::quiet_NaN());
    });
}

cdsc_status cdsc_hashing_bound(double eta, double* out) {
    return guarded([&] {
        require(out != nullptr, "cdsc_hashing_bound: null argument");
        *out = cdsc::hashing_bound(eta);
    });
}

cdsc_status cdsc_experiment_new(cdsc_experiment** out) {
    return guarded([&] {
        require(out != nullptr, "cdsc_experiment_new: null argument");
        *out = new cdsc_experiment{};
    });
}

cdsc_status cdsc_experiment_from_string(const char* text, cdsc_experiment** out) {
    return guarded([&] {
        require(text && out, "cdsc_experiment_from_string: null argument");
        *out = nullptr;
        auto exp = std::make_unique<cdsc_experiment>();
        exp->tree = cdsc::parse_config_text(text);
        *out = exp.release();
    });
}

cdsc_status cdsc_experiment_from_file(const char* path, cdsc_experiment** out) {
    return guarded([&] {
        require(path && out, "cdsc_experiment_from_file: null argument");
        *out = nullptr;
        auto exp = std::make_unique<cdsc_experiment>();
        exp->tree = cdsc::load_config_file(path);
        *out = exp.release();
    });
}

void cdsc_experiment_free(cdsc_experiment* exp) { delete exp; }

cdsc_status cdsc_experiment_set(cdsc_experiment* exp, const char* assignment) {
    return guarded([&] {
        require(exp && assignment, "cdsc_experiment_set: null argument");
        cdsc::apply_override(exp->tree, assignment);
    });
}

cdsc_status cdsc_experiment_run(cdsc_experiment* exp, const char* kind, cdsc_message_fn progress, void* user) {
    return guarded([&] {
        require(exp != nullptr, "cdsc_experiment_run: null argument");
        exp->result.reset();
        exp->csv.clear();
        exp->fit_csv.clear();
        std::optional<cdsc::ExperimentKind> k;
        if (kind) k = cdsc::experiment_kind_from_string(kind);
        exp->config = cdsc::resolve_config(exp->tree, k);
        cdsc::ProgressFn fn;
        if (progress) fn = [&](const std::string& msg) { progress(msg.c_str(), user); };
        exp->result = cdsc::run_experiment(*exp->config, fn);
        exp->csv = exp->result->table.str();
        if (exp->result->fit) exp->fit_csv = exp->result->fit->str();
    });
}

const char* cdsc_experiment_csv(const cdsc_experiment* exp) {
    return exp && exp->result ? exp->csv.c_str() : nullptr;
}

const char* cdsc_experiment_fit_csv(const cdsc_experiment* exp) {
    return exp && exp->result && exp->result->fit ? exp->fit_csv.c_str() : nullptr;
}

cdsc_status cdsc_experiment_write(const cdsc_experiment* exp, const char* out) {
    return guarded([&] {
        require(exp != nullptr, "cdsc_experiment_write: null argument");
        if (!exp->result) throw std::invalid_argument("cdsc_experiment_write: no result; run the experiment first");
        cdsc::write_result(*exp->result, out ? std::string(out) : exp->config->out, exp->config->trace);
    });
}

cdsc_status cdsc_plot(const char* csv_path, const char* kind, const char* svg_path, cdsc_message_fn warn,
                      void* user) {
    return guarded([&] {
        require(csv_path && kind && svg_path, "cdsc_plot: null argument");
        auto warnings = cdsc::emit_plot(csv_path, cdsc::plot_kind_from_string(kind), svg_path);
        if (warn) {
            for (const auto& w : warnings) warn(w.c_str(), user);
        }
    });
}

}  // extern "C"
