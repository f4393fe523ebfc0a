/**
 * Copyright 2026 The wstar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libwstar: heralded W/Dicke-state distribution over lossy
 * star networks.  Every function returns a wstar_status; on failure
 * wstar_last_error() describes the problem for the calling thread.  Tables
 * returned through wstar_table handles must be released with
 * wstar_table_free().
 */

#ifndef WSTAR_H
#define WSTAR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wstar_status {
    WSTAR_OK = 0,
    WSTAR_ERR_DOMAIN = 1,  /* invalid argument or undefined quantity */
    WSTAR_ERR_USAGE = 2,   /* bad CLI/config-level input */
    WSTAR_ERR_RUNTIME = 3, /* unexpected internal failure */
    WSTAR_ERR_IO = 4       /* filesystem failure */
} wstar_status;

typedef struct wstar_table wstar_table;

const char* wstar_version(void);
/* Message from the most recent failing call on this thread; never NULL. */
const char* wstar_last_error(void);

/* --- ideal heralded protocol --------------------------------------------- */

/* Probability of detector pattern `pattern` (one count per mixer port; the
 * herald photon number is the pattern total).  Source amplitude b, per-arm
 * power transmittance T. */
wstar_status wstar_herald_probability_exact(int n_parties, double source_b, double transmittance,
                                            const int* pattern, size_t pattern_len, double* out);

/* Small-T single-detector rate T^M b^(2M) C(N,M) M! / N^M. */
wstar_status wstar_herald_probability_leading(int n_parties, int herald_photons, double source_b,
                                              double transmittance, double* out);

/* Fidelity of the heralded state with the phase-optimized Dicke target. */
wstar_status wstar_conditional_fidelity(int n_parties, double source_b, double transmittance,
                                        const int* pattern, size_t pattern_len, double* out);

/* Total single-photon click rate at fixed fidelity: N (1 - F^(1/(N-1))) T. */
wstar_status wstar_rate_at_fixed_fidelity(int n_parties, double fidelity, double transmittance,
                                          double* out);

/* Per-party phase flips (0 or pi), written to phases_out[n_parties], for a
 * single-photon detection pattern. */
wstar_status wstar_feedforward_correction(int n_parties, const int* pattern, size_t pattern_len,
                                          double* phases_out);

/* T = 10^(-gamma d / 10). */
wstar_status wstar_transmittance_for_distance(double distance_km, double gamma_db_per_km,
                                              double* out);

/* --- non-repeater baselines ---------------------------------------------- */

wstar_status wstar_direct_rate(int n_parties, double arm_transmittance, double* out);
wstar_status wstar_squashed_bound_w3(double arm_transmittance, double* out);

/* --- Gaussian (two-mode squeezed vacuum) pipeline ------------------------- */

wstar_status wstar_gaussian_click_probability(int n_parties, double squeezing_db,
                                              double distance_km, double gamma_db_per_km,
                                              double dark_count_prob, double det_efficiency,
                                              double* out);

wstar_status wstar_gaussian_w_fidelity(int n_parties, double squeezing_db, double distance_km,
                                       double gamma_db_per_km, double dark_count_prob,
                                       double det_efficiency, double* out);

/* Squeezing whose heralded fidelity equals target_fidelity (larger-r root).
 * Any of the three outputs may be NULL. */
wstar_status wstar_solve_squeezing_for_fidelity(int n_parties, double target_fidelity,
                                                double distance_km, double gamma_db_per_km,
                                                double dark_count_prob, double det_efficiency,
                                                double* r_out, double* squeezing_db_out,
                                                double* click_probability_out);

/* --- sweeps and data files ------------------------------------------------ */

/* config_json is a flat object mirroring the CLI flags, e.g.
 * {"scenario":"ideal_w","n":4,"fidelity":0.95,"dmin_km":0,"dmax_km":300,
 *  "step_km":1}.  On success *out_table owns the result. */
wstar_status wstar_sweep_run_json(const char* config_json, wstar_table** out_table);

/* figure_name is one of fig3, fig5 ... fig13. */
wstar_status wstar_reproduce(const char* figure_name, wstar_table** out_table);

size_t wstar_table_n_rows(const wstar_table* table);
size_t wstar_table_n_cols(const wstar_table* table);
/* NULL when col is out of range. */
const char* wstar_table_column_name(const wstar_table* table, size_t col);
/* 1 for numeric cells, 0 for text cells or out-of-range indices. */
int wstar_table_cell_is_numeric(const wstar_table* table, size_t row, size_t col);
wstar_status wstar_table_cell_numeric(const wstar_table* table, size_t row, size_t col,
                                      double* out);
/* NULL for numeric cells or out-of-range indices. */
const char* wstar_table_cell_text(const wstar_table* table, size_t row, size_t col);
/* format is "csv" or "json"; path "-" writes to stdout. */
wstar_status wstar_table_write(const wstar_table* table, const char* format, const char* path);
void wstar_table_free(wstar_table* table);

#ifdef __cplusplus
}
#endif

#endif /* WSTAR_H */
