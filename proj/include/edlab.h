/*
 * edlab C API: scenario evaluation for error-disturbance uncertainty
 * relations on finite-dimensional operator algebras.
 *
 * All functions returning edlab_status leave a human-readable message
 * retrievable through edlab_last_error() on failure. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function. The API is usable from C and C++.
 */

#ifndef EDLAB_H
#define EDLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum edlab_status {
  EDLAB_OK = 0,
  EDLAB_ERROR_INVALID_ARGUMENT = 1,
  EDLAB_ERROR_PARSE = 2,   /* malformed scenario document */
  EDLAB_ERROR_RESOLVE = 3, /* well-formed document that names impossible objects */
  EDLAB_ERROR_INTERNAL = 4
} edlab_status;

/* Opaque collection of evaluated scenario reports. */
typedef struct edlab_report_set edlab_report_set;

typedef struct edlab_sweep_config {
  uint64_t seed;
  int32_t count;
  int32_t dim_max;      /* <= 0 selects the default (4) */
  int32_t outcomes_max; /* <= 0 selects the default (5) */
  int32_t subalgebras;  /* nonzero: sample proper subalgebras too */
  int32_t simultaneous; /* nonzero: two-output joint-measurement mode */
} edlab_sweep_config;

/* Evaluate every scenario in a JSON file / JSON text / named builtin.
 * margin_tolerance <= 0 selects the default 1e-8. */
edlab_status edlab_run_file(const char* path, double margin_tolerance,
                            edlab_report_set** out);
edlab_status edlab_run_text(const char* json_text, double margin_tolerance,
                            edlab_report_set** out);
edlab_status edlab_run_builtin(const char* name, double margin_tolerance,
                               edlab_report_set** out);

/* Deterministic randomized sweep; identical config gives identical reports. */
edlab_status edlab_run_sweep(const edlab_sweep_config* config, double margin_tolerance,
                             edlab_report_set** out);

/* Render reports as "text", "json" or "csv". The string is released with
 * edlab_string_free. */
edlab_status edlab_render(const edlab_report_set* reports, const char* format,
                          char** out_text);

int edlab_report_count(const edlab_report_set* reports);

/* 1 when every checked relation margin in every report is >= -tolerance. */
int edlab_all_margins_pass(const edlab_report_set* reports);

void edlab_report_set_free(edlab_report_set* reports);
void edlab_string_free(char* text);

/* Newline-separated builtin scenario names; release with edlab_string_free. */
edlab_status edlab_builtin_names(char** out_text);

/* Message for the most recent failure on this thread. */
const char* edlab_last_error(void);

const char* edlab_version(void);

#ifdef __cplusplus
}
#endif

#endif /* EDLAB_H */
