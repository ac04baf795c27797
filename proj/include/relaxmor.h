/* Copyright (c) 2026 relaxmor developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the relaxmor shared library.
 *
 * The library solves 1D scalar conservation laws through a relaxation
 * system semi-discretized with shifted basis functions, reduces the
 * resulting coefficient dynamics with POD, and ships reference solvers for
 * validation. All state lives behind opaque handles; every function returns
 * a status code and a thread-local message is available via
 * rxm_last_error().
 */
#ifndef RELAXMOR_H
#define RELAXMOR_H

#include <stddef.h>

#if defined(_WIN32)
#define RXM_API __declspec(dllexport)
#else
#define RXM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values match the CLI exit codes. */
enum rxm_status {
    RXM_OK = 0,
    RXM_ERR_CONFIG = 2, /* bad configuration or bad arguments */
    RXM_ERR_SOLVER = 3, /* failure while solving */
    RXM_ERR_IO = 4      /* file system problems */
};

typedef struct rxm_config rxm_config;
typedef struct rxm_report rxm_report;

RXM_API const char* rxm_version(void);

/* Message for the most recent failure on this thread; never NULL. */
RXM_API const char* rxm_last_error(void);

/* ---- configuration ----------------------------------------------------- */

/* Newline-separated list of built-in preset names written into buf. */
RXM_API int rxm_preset_names(char* buf, size_t cap);

RXM_API int rxm_config_preset(const char* name, rxm_config** out);
RXM_API int rxm_config_load(const char* path, rxm_config** out);

/* Applies one `key = value` override (same keys as the config file). */
RXM_API int rxm_config_set(rxm_config* cfg, const char* key, const char* value);

/* Deterministic dump of the resolved configuration. */
RXM_API int rxm_config_echo(const rxm_config* cfg, char* buf, size_t cap);

RXM_API void rxm_config_free(rxm_config* cfg);

/* ---- experiment runs ---------------------------------------------------- */

/* Full-order solve; writes solution/mass/snapshot artifacts into out_dir. */
RXM_API int rxm_run_full(const rxm_config* cfg, const char* out_dir, rxm_report** out);

/* POD of snapshot files found in the training directories (run-full outputs);
 * writes basis matrices and singular_values.csv into out_dir. */
RXM_API int rxm_run_pod(const rxm_config* cfg, const char* const* training_dirs,
                        size_t n_training, const char* out_dir, rxm_report** out);

/* Reduced-order solve with a basis produced by rxm_run_pod. */
RXM_API int rxm_run_reduced(const rxm_config* cfg, const char* basis_dir, const char* out_dir,
                            rxm_report** out);

/* Full (and optionally reduced) solve against the finite-volume reference;
 * basis_dir may be NULL or empty. */
RXM_API int rxm_run_compare_fv(const rxm_config* cfg, const char* basis_dir,
                               const char* out_dir, rxm_report** out);

/* ---- run reports -------------------------------------------------------- */

RXM_API const char* rxm_report_text(const rxm_report* rep);

/* Fetches one named metric; RXM_ERR_CONFIG when the metric is absent. */
RXM_API int rxm_report_metric(const rxm_report* rep, const char* name, double* out);

/* Writes the newline-separated metric names into buf. */
RXM_API int rxm_report_metric_names(const rxm_report* rep, char* buf, size_t cap);

RXM_API void rxm_report_free(rxm_report* rep);

/* ---- direct mass-operator queries (hat basis) --------------------------- */

/* First row of the overlap matrix M(t) for n basis functions; row has n
 * entries. */
RXM_API int rxm_mass_first_row(int n_basis, double lambda, double t, double* row);

/* min |eigenvalue| / max |eigenvalue| of M(t). */
RXM_API int rxm_mass_min_rel_eigenvalue(int n_basis, double lambda, double t, double* out);

/* Singular times t_l <= t_max; writes up to cap entries, total count in
 * *count. */
RXM_API int rxm_singular_times(int n_basis, double lambda, double t_max, double* buf,
                               size_t cap, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* RELAXMOR_H */
