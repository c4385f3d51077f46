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

#ifndef CDSC_H
#define CDSC_H

/*
 * C interface to the cdsc library: deformed surface codes, their decoders
 * and metrics, and the experiment harness.
 *
 * Every fallible call returns a cdsc_status. On failure the message is
 * available from cdsc_last_error() until the next call on the same thread.
 * Handles are opaque and must be released with the matching _free call.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CDSC_API __declspec(dllexport)
#else
#define CDSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdsc_status {
    CDSC_OK = 0,
    CDSC_ERR_INTERNAL = 1,
    CDSC_ERR_CONFIG = 2,
    CDSC_ERR_NUMERIC = 3,
    CDSC_ERR_INVALID_ARGUMENT = 4,
    CDSC_ERR_UNSUPPORTED = 5,
    CDSC_ERR_IO = 6,
} cdsc_status;

CDSC_API const char* cdsc_version(void);
/* Message for the last failed call on this thread; "" if none. */
CDSC_API const char* cdsc_last_error(void);
CDSC_API const char* cdsc_status_name(cdsc_status status);

/* ---- codes ------------------------------------------------------------ */

typedef struct cdsc_code cdsc_code;

/* preset: "CSS", "XY" or "XZZX". L odd, >= 3. */
CDSC_API cdsc_status cdsc_code_from_preset(const char* preset, int L, cdsc_code** out);
/* pattern: L*L letters from {I, H, Y} in row-major order; whitespace and '/'
   between rows are ignored. */
CDSC_API cdsc_status cdsc_code_from_pattern(const char* pattern, int L, cdsc_code** out);
CDSC_API void cdsc_code_free(cdsc_code* code);

CDSC_API int cdsc_code_L(const cdsc_code* code);
CDSC_API size_t cdsc_code_num_qubits(const cdsc_code* code);
CDSC_API size_t cdsc_code_num_generators(const cdsc_code* code);
/* Writes the pattern letters and a terminating NUL; buf needs
   num_qubits + 1 bytes. */
CDSC_API cdsc_status cdsc_code_pattern(const cdsc_code* code, char* buf, size_t buf_len);

/* error: num_qubits letters from {I, X, Y, Z}. syndrome receives
   num_generators bytes of 0/1. */
CDSC_API cdsc_status cdsc_code_syndrome(const cdsc_code* code, const char* error, uint8_t* syndrome,
                                        size_t syndrome_len);

/* Unrestricted code distance (small codes only). */
CDSC_API cdsc_status cdsc_code_distance(const cdsc_code* code, size_t* out);

typedef struct cdsc_decode_result {
    /* Normalized coset probabilities, indexed I, X, Z, Y. */
    double prob[4];
    /* 'I', 'X', 'Z' or 'Y': the most likely class, relative to the
       canonical pure error of the syndrome. */
    char chosen;
    int converged;
} cdsc_decode_result;

/* Maximum-likelihood decoding under iid biased noise (p, eta; eta may be
   INFINITY). decoder: "exact" or "tn"; chi <= 0 means unbounded. If
   correction is non-NULL it receives num_qubits letters and a NUL. */
CDSC_API cdsc_status cdsc_code_decode(const cdsc_code* code, double p, double eta, const uint8_t* syndrome,
                                      size_t syndrome_len, const char* decoder, int chi,
                                      cdsc_decode_result* result, char* correction, size_t correction_len);

/* d' for L <= 5 and t' for L = 3; t_prime is NaN when unavailable. */
CDSC_API cdsc_status cdsc_code_effective_distance(const cdsc_code* code, double p, double eta, double* d_prime,
                                                  double* t_prime);

CDSC_API cdsc_status cdsc_hashing_bound(double eta, double* out);

/* ---- experiments ------------------------------------------------------ */

typedef struct cdsc_experiment cdsc_experiment;

typedef void (*cdsc_message_fn)(const char* message, void* user);

/* An empty configuration, to be filled with cdsc_experiment_set. */
CDSC_API cdsc_status cdsc_experiment_new(cdsc_experiment** out);
/* INI text with [experiment], [code], [noise], [decoder], [sweep],
   [percolation] and [cluster] sections. */
CDSC_API cdsc_status cdsc_experiment_from_string(const char* text, cdsc_experiment** out);
CDSC_API cdsc_status cdsc_experiment_from_file(const char* path, cdsc_experiment** out);
CDSC_API void cdsc_experiment_free(cdsc_experiment* exp);

/* "section.key=value"; overrides the loaded configuration. */
CDSC_API cdsc_status cdsc_experiment_set(cdsc_experiment* exp, const char* assignment);

/* kind: an experiment kind (e.g. "rate", "threshold", "sweep3x3"), or NULL
   to use experiment.kind. progress may be NULL. */
CDSC_API cdsc_status cdsc_experiment_run(cdsc_experiment* exp, const char* kind, cdsc_message_fn progress,
                                         void* user);

/* Result CSV of the last successful run, or NULL before one. Valid until
   the next run or free. */
CDSC_API const char* cdsc_experiment_csv(const cdsc_experiment* exp);
/* Threshold fit CSV of the last run, or NULL if there is none. */
CDSC_API const char* cdsc_experiment_fit_csv(const cdsc_experiment* exp);

/* Writes the result to out ("-" for stdout; NULL for experiment.out), the
   threshold fit to <stem>.fss.csv and the trace to experiment.trace. A
   threshold fit that failed is reported as CDSC_ERR_NUMERIC after the
   tables are written. */
CDSC_API cdsc_status cdsc_experiment_write(const cdsc_experiment* exp, const char* out);

/* ---- plots ------------------------------------------------------------ */

/* kind: "subthreshold", "threshold", "phase" or "histogram". svg_path "-"
   writes to stdout. Warnings go to warn (may be NULL). */
CDSC_API cdsc_status cdsc_plot(const char* csv_path, const char* kind, const char* svg_path, cdsc_message_fn warn,
                               void* user);

#ifdef __cplusplus
}
#endif

#endif /* CDSC_H */
