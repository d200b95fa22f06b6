#ifndef RAMIFY_RAMIFY_H
#define RAMIFY_RAMIFY_H

/* C interface to libramify: invariants of totally ramified extensions of
 * p-adic fields, their Eisenstein templates, and the forward analyzer.
 * Every call returns a status; on failure ramify_last_error() describes it. */

#include <stddef.h>
#include <stdint.h>

#if defined(RAMIFY_BUILDING)
#define RAMIFY_API __attribute__((visibility("default")))
#else
#define RAMIFY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ramify_status {
  RAMIFY_OK = 0,
  RAMIFY_ERR_INVALID_ARGUMENT = 1,
  RAMIFY_ERR_NOT_EISENSTEIN = 2,
  RAMIFY_ERR_GUARD_EXCEEDED = 3,
  RAMIFY_ERR_RESIDUE_MISMATCH = 4,
  RAMIFY_ERR_PARSE = 5,
  RAMIFY_ERR_INTERNAL = 6,
  /* selftest ran but a cross check failed; the report holds the diff */
  RAMIFY_ERR_CHECK_FAILED = 7
} ramify_status;

typedef enum ramify_level {
  RAMIFY_LEVEL_RAM = 0,
  RAMIFY_LEVEL_FINE = 1,
  RAMIFY_LEVEL_RES = 2,
  RAMIFY_LEVEL_UNIF = 3
} ramify_level;

typedef enum ramify_format { RAMIFY_FORMAT_JSON = 0, RAMIFY_FORMAT_CSV = 1 } ramify_format;

typedef enum ramify_fault { RAMIFY_FAULT_NONE = 0, RAMIFY_FAULT_SKIP_ORE2 = 1 } ramify_fault;

typedef struct ramify_field ramify_field;
typedef struct ramify_report ramify_report;

typedef struct ramify_enumerate_options {
  ramify_level level;
  ramify_format format;
  int reduce;
  int truncate;
  int expand;
  int stats;
  unsigned threads;
} ramify_enumerate_options;

typedef struct ramify_survey_case {
  int64_t n;
  int64_t digit_bound;
} ramify_survey_case;

typedef struct ramify_selftest_options {
  /* NULL / 0 runs the built-in cases over Q_2 and Q_3 and ignores field */
  const ramify_survey_case* cases;
  size_t case_count;
  const ramify_field* field;
  ramify_fault fault;
  unsigned threads;
} ramify_selftest_options;

RAMIFY_API const char* ramify_version(void);

/* Message for the last failing call on this thread; "" if none. */
RAMIFY_API const char* ramify_last_error(void);

/* gamma is a residue-field element ("1", "g", or comma-separated
 * coefficients, constant first); NULL means "1". */
RAMIFY_API ramify_status ramify_field_create(int64_t p, int f, int e, const char* gamma, ramify_field** out);
RAMIFY_API void ramify_field_destroy(ramify_field* field);
RAMIFY_API int64_t ramify_field_order(const ramify_field* field);

RAMIFY_API void ramify_enumerate_options_init(ramify_enumerate_options* opts);
RAMIFY_API ramify_status ramify_enumerate(const ramify_field* field, int64_t degree, const ramify_enumerate_options* opts,
                                          ramify_report** out);

/* polynomial: integer form such as "x^2-2" (Q_p only) or polynomial JSON. */
RAMIFY_API ramify_status ramify_analyze(const ramify_field* field, const char* polynomial, ramify_format format,
                                        ramify_report** out);

RAMIFY_API void ramify_selftest_options_init(ramify_selftest_options* opts);
/* Returns RAMIFY_ERR_CHECK_FAILED with a report when a cross check fails. */
RAMIFY_API ramify_status ramify_selftest(const ramify_selftest_options* opts, ramify_report** out);

/* Main output (JSON document or CSV table). */
RAMIFY_API const char* ramify_report_text(const ramify_report* report);
/* Diff lines, or CSV-mode statistics; may be empty. */
RAMIFY_API const char* ramify_report_diagnostics(const ramify_report* report);
RAMIFY_API uint64_t ramify_report_results(const ramify_report* report);
RAMIFY_API uint64_t ramify_report_branches(const ramify_report* report);
RAMIFY_API void ramify_report_destroy(ramify_report* report);

#ifdef __cplusplus
}
#endif

#endif
