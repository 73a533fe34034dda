// Copyright 2026 The starreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STARREG_STARREG_H_
#define STARREG_STARREG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define STARREG_API __declspec(dllexport)
#else
#define STARREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int reports one of these; on a
 * nonzero status starreg_last_error() describes the failure for the calling
 * thread. Values are stable. */
enum starreg_status {
  STARREG_OK = 0,
  STARREG_INVALID_SPEC = 1,
  STARREG_BACKEND_LIMIT = 2,
  STARREG_SHAPE_MISMATCH = 3,
  STARREG_NON_HERMITIAN_OBSERVABLE = 4,
  STARREG_INDEX_OUT_OF_RANGE = 5,
  STARREG_NO_SUCH_ORDER = 6,
  STARREG_UNNORMALIZED_DISTRIBUTION = 7,
  STARREG_SYMMETRY_VIOLATION = 8,
  STARREG_INSUFFICIENT_FILTERS = 9,
  STARREG_MISSING_RELAXATION_TIMES = 10,
  STARREG_DEGENERATE_OBSERVABLE = 11,
  STARREG_ALL_ZERO_PROBABILITIES = 12,
  STARREG_NONPOSITIVE_FISHER = 13,
  STARREG_SERIES_TOO_SHORT = 14,
  STARREG_PARSE_ERROR = 15,
  STARREG_UNKNOWN_KEY = 16,
  STARREG_MISSING_REQUIRED = 17,
  STARREG_COLUMN_MISMATCH = 18,
  STARREG_INVALID_ARGUMENT = 19,
  STARREG_IO_ERROR = 20,
  STARREG_INTERNAL = 100
};

enum starreg_backend { STARREG_BACKEND_SYMMETRIC = 0, STARREG_BACKEND_DENSE = 1 };

/* Collective observables for starreg_state_expectation. */
enum starreg_observable {
  STARREG_IX_CENTRAL = 0,
  STARREG_IY_CENTRAL = 1,
  STARREG_IZ_CENTRAL = 2,
  STARREG_IX_ANCILLA = 3,
  STARREG_IY_ANCILLA = 4,
  STARREG_IZ_ANCILLA = 5
};

typedef struct starreg_register starreg_register;
typedef struct starreg_state starreg_state;
typedef struct starreg_config starreg_config;
typedef struct starreg_result starreg_result;

typedef struct starreg_register_spec {
  int n_total;
  double gamma_c;     /* rad s^-1 T^-1 */
  double gamma_a;     /* rad s^-1 T^-1 */
  double j_ca;        /* Hz */
  double b0;          /* T */
  double temperature; /* K */
  double t1_c;        /* s, <= 0 when unknown */
  double t1_a;        /* s, <= 0 when unknown */
} starreg_register_spec;

STARREG_API const char* starreg_version(void);
STARREG_API const char* starreg_last_error(void);
STARREG_API const char* starreg_status_name(int status);

/* Fills a spec with the library defaults (31P central, 1H ancillas,
 * 11.7 T, 298 K, no relaxation times). */
STARREG_API void starreg_register_spec_default(starreg_register_spec* spec);

STARREG_API int starreg_register_create(const starreg_register_spec* spec, starreg_register** out);
STARREG_API void starreg_register_destroy(starreg_register* reg);
STARREG_API int starreg_register_purity(const starreg_register* reg, double* epsilon_c, double* epsilon_a);

STARREG_API int starreg_thermal_state(const starreg_register* reg, int backend, starreg_state** out);
STARREG_API int starreg_prepare_mssm(const starreg_state* in, starreg_state** out);
STARREG_API void starreg_state_destroy(starreg_state* state);
STARREG_API int starreg_state_expectation(const starreg_state* state, int observable, double* out);
STARREG_API int starreg_state_trace(const starreg_state* state, double* out);
/* Weight of the order-q MSSM coherence sector. */
STARREG_API int starreg_coherence_weight(const starreg_state* state, int q, double* out);

STARREG_API int starreg_config_parse(const char* text, starreg_config** out);
STARREG_API int starreg_config_load(const char* path, starreg_config** out);
/* Overrides one key; section is "" for global keys. */
STARREG_API int starreg_config_set(starreg_config* config, const char* section, const char* key, const char* value);
/* Newly allocated text; release with starreg_string_free. */
STARREG_API int starreg_config_render(const starreg_config* config, int resolved, char** out);
STARREG_API int starreg_config_get_string(const starreg_config* config, const char* section, const char* key,
                                          char** out);
STARREG_API void starreg_config_destroy(starreg_config* config);
STARREG_API void starreg_string_free(char* text);

STARREG_API int starreg_run(const starreg_config* config, starreg_result** out);
STARREG_API int starreg_result_table_count(const starreg_result* result, size_t* out);
STARREG_API int starreg_result_shape(const starreg_result* result, size_t table, size_t* rows, size_t* cols);
/* Borrowed strings, valid until the result is destroyed. */
STARREG_API int starreg_result_table_name(const starreg_result* result, size_t table, const char** out);
STARREG_API int starreg_result_column(const starreg_result* result, size_t table, size_t col, const char** out);
STARREG_API int starreg_result_value(const starreg_result* result, size_t table, size_t row, size_t col, double* out);
/* CSV text of one table; release with starreg_string_free. */
STARREG_API int starreg_result_csv(const starreg_result* result, size_t table, char** out);
/* Writes every table as <name>.csv plus <experiment>.meta into dir. */
STARREG_API int starreg_result_write(const starreg_result* result, const char* dir);
STARREG_API void starreg_result_destroy(starreg_result* result);

/* kind is "line", "heatmap" or "sticks"; svg_path may be NULL to write next
 * to the CSV. */
STARREG_API int starreg_plot_csv(const char* csv_path, const char* kind, const char* svg_path);

#ifdef __cplusplus
}
#endif

#endif /* STARREG_STARREG_H_ */
