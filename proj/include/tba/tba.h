// Copyright 2026 The TBA Authors
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

#ifndef TBA_TBA_H_
#define TBA_TBA_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TBA_BUILDING)
#    define TBA_API __declspec(dllexport)
#  else
#    define TBA_API __declspec(dllimport)
#  endif
#else
#  define TBA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tba_status {
  TBA_OK = 0,
  TBA_ERR_USAGE = 1,
  TBA_ERR_PARSE = 2,
  TBA_ERR_CAP = 3,
  TBA_ERR_IO = 4,
  TBA_ERR_RANGE = 5,
  TBA_ERR_MODEL = 6,
  TBA_ERR_INTERNAL = 7
} tba_status;

typedef struct tba_options tba_options;
typedef struct tba_problem tba_problem;
typedef struct tba_report tba_report;

/* Receives output text; data is not NUL-terminated. */
typedef void (*tba_write_fn)(const char* data, size_t size, void* user);

TBA_API const char* tba_version(void);

/* Message of the last failing call on this thread, "" if none. */
TBA_API const char* tba_last_error(void);

TBA_API tba_status tba_options_create(tba_options** out);
TBA_API void tba_options_destroy(tba_options* options);
TBA_API tba_status tba_options_set_chunk_bits(tba_options* options, int bits);
/* 0 selects every hardware thread. */
TBA_API tba_status tba_options_set_jobs(tba_options* options, unsigned jobs);
TBA_API tba_status tba_options_set_max_vars(tba_options* options, int max_vars);
/* "bitparallel" or "naive". */
TBA_API tba_status tba_options_set_backend(tba_options* options, const char* backend);

TBA_API tba_status tba_problem_load_file(const char* path, tba_problem** out);
TBA_API tba_status tba_problem_parse(const char* text, size_t size, tba_problem** out);
TBA_API void tba_problem_destroy(tba_problem* problem);
TBA_API int tba_problem_is_theory(const tba_problem* problem);
TBA_API size_t tba_problem_letter_count(const tba_problem* problem);
/* Letters left after the assumptions are applied. */
TBA_API size_t tba_problem_free_count(const tba_problem* problem);

/* Writes the decimal model count. */
TBA_API tba_status tba_count(const tba_problem* problem, const tba_options* options,
                             tba_write_fn write, void* user);
TBA_API tba_status tba_solve_write(const tba_problem* problem, const tba_options* options,
                                   tba_write_fn write, void* user);
/* write may be NULL; otherwise it receives the decimal model count. */
TBA_API tba_status tba_solve_to_file(const tba_problem* problem, const tba_options* options,
                                     const char* path, tba_write_fn write, void* user);
/* Decoded model tables; theory problems only. */
TBA_API tba_status tba_write_models(const tba_problem* problem, const tba_options* options,
                                    tba_write_fn write, void* user);

/* Runs the partition counting procedure on a theory problem. */
TBA_API tba_status tba_run_tba(const tba_problem* problem, const tba_options* options,
                               int keep_models, tba_report** out);
TBA_API void tba_report_destroy(tba_report* report);
TBA_API tba_status tba_report_write_table(const tba_report* report, tba_write_fn write,
                                          void* user);
/* One canonical representative per isomorphism class; needs keep_models. */
TBA_API tba_status tba_report_write_models(const tba_report* report, tba_write_fn write,
                                           void* user);
TBA_API tba_status tba_report_labeled_total(const tba_report* report, tba_write_fn write,
                                            void* user);
TBA_API tba_status tba_report_unlabeled_total(const tba_report* report, tba_write_fn write,
                                              void* user);

#ifdef __cplusplus
}
#endif

#endif  // TBA_TBA_H_
