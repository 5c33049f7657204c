/*
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
#ifndef AHOLO_AHOLO_H
#define AHOLO_AHOLO_H

/*
 * C interface of the aholo library. Objects are opaque handles released
 * with the matching *_free function. Every call returning aholo_status
 * records a message retrievable with aholo_last_error() on failure; the
 * message is per thread and valid until the next failing call.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AHOLO_API __declspec(dllexport)
#else
#define AHOLO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aholo_status {
  AHOLO_OK = 0,
  AHOLO_ERR_INVALID_ARGUMENT = 1,
  AHOLO_ERR_DIMENSION_MISMATCH = 2,
  AHOLO_ERR_PRECONDITION = 3,
  AHOLO_ERR_INCONCLUSIVE = 4,
  AHOLO_ERR_IO = 5,
  AHOLO_ERR_DIVERGENCE = 6,
  AHOLO_ERR_INTERNAL = 7
} aholo_status;

/* Overall verdict of a report; equal to the CLI exit code. */
typedef enum aholo_verdict {
  AHOLO_PASS = 0,
  AHOLO_FAIL = 1,
  AHOLO_INCONCLUSIVE = 2
} aholo_verdict;

typedef struct aholo_config aholo_config;
typedef struct aholo_report aholo_report;
typedef struct aholo_grid aholo_grid;

AHOLO_API const char* aholo_version(void);
AHOLO_API const char* aholo_last_error(void);

/* Run configuration. Keys are the long CLI flag names without dashes
 * prefix, e.g. "grid-n", "seed", "out". */
AHOLO_API aholo_status aholo_config_new(aholo_config** out);
AHOLO_API void aholo_config_free(aholo_config* cfg);
AHOLO_API aholo_status aholo_config_set(aholo_config* cfg, const char* key, const char* value);
AHOLO_API aholo_status aholo_config_load(aholo_config* cfg, const char* path);
AHOLO_API aholo_status aholo_config_validate(const aholo_config* cfg);
AHOLO_API int aholo_config_timing(const aholo_config* cfg);

/* Runs the configured command. Check failures are not errors: inspect the
 * verdict. */
AHOLO_API aholo_status aholo_run(const aholo_config* cfg, aholo_report** out);
AHOLO_API void aholo_report_free(aholo_report* r);
AHOLO_API aholo_verdict aholo_report_verdict(const aholo_report* r);
AHOLO_API size_t aholo_report_check_count(const aholo_report* r);
/* name is owned by the report. Either output pointer may be NULL. */
AHOLO_API aholo_status aholo_report_check(const aholo_report* r, size_t i, const char** name,
                                          aholo_verdict* verdict, double* gap, double* tolerance);
/* Serialized report ("json" or "csv"); owned by the report. */
AHOLO_API const char* aholo_report_text(aholo_report* r, const char* format);
AHOLO_API void aholo_report_set_duration(aholo_report* r, double seconds);
/* Writes to the configured output (stdout when unset). */
AHOLO_API aholo_status aholo_report_write(const aholo_report* r, const aholo_config* cfg);

/* Lattice grids. fixture: "constant", "identity", "i_x", "trig". */
AHOLO_API aholo_status aholo_grid_fixture(const char* fixture, int32_t N, double L, int periodic,
                                          uint64_t seed, aholo_grid** out);
AHOLO_API aholo_status aholo_grid_read(const char* path, aholo_grid** out);
AHOLO_API aholo_status aholo_grid_write(const aholo_grid* g, const char* path);
AHOLO_API aholo_status aholo_grid_write_csv(const aholo_grid* g, const char* path);
AHOLO_API void aholo_grid_free(aholo_grid* g);
AHOLO_API aholo_status aholo_grid_info(const aholo_grid* g, int32_t* N, int32_t* n,
                                       int* periodic, double* L);
/* L2 norm of the CRF residual C(du) - du. */
AHOLO_API aholo_status aholo_grid_crf_residual(const aholo_grid* g, double* l2);
/* Periodic grids only. */
AHOLO_API aholo_status aholo_grid_energy(const aholo_grid* g, double* energy);

#ifdef __cplusplus
}
#endif

#endif /* AHOLO_AHOLO_H */
