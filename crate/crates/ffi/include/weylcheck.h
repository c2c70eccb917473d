#ifndef WEYLCHECK_H
#define WEYLCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_UTF8 = 2,
  WC_STATUS_PARSE = 3,
  WC_STATUS_INVALID_MATRIX = 4,
  WC_STATUS_NOT_SYMMETRIZABLE = 5,
  WC_STATUS_UNKNOWN_SYMBOL = 6,
  WC_STATUS_STEP_LIMIT = 7,
  WC_STATUS_INVALID_ARGUMENT = 8,
  WC_STATUS_INTERNAL = 9,
  WC_STATUS_PANIC = 10,
} WcStatus;

// Which algebras a verification covers.
typedef enum WcMode {
  WC_MODE_CLASSICAL = 0,
  WC_MODE_QUANTUM = 1,
  WC_MODE_BOTH = 2,
} WcMode;

// A validated generalized Cartan matrix with an optional symmetrizer.
typedef struct WcMatrix WcMatrix;

// The outcome of a verification run.
typedef struct WcReport WcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library on the same thread.
const char *wc_last_error(void);

// Library version as a static NUL-terminated string.
const char *wc_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void wc_string_free(char *s);

// Parses a matrix from text: inline rows separated by `;`, or the file
// format with a size line, one row per line and an optional `d:` line.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum WcStatus wc_matrix_parse(const char *text, struct WcMatrix **out);

// Looks up a built-in matrix by name (`A1`, `A2`, `A1xA1`, `A3`, `B2`,
// `G2`, `A1^(1)`).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum WcStatus wc_matrix_catalog(const char *name, struct WcMatrix **out);

// Overrides the symmetrizer with a comma-separated list of positive integers.
//
// # Safety
// `m` must be a live matrix handle; `d` a NUL-terminated string.
enum WcStatus wc_matrix_set_symmetrizer(struct WcMatrix *m, const char *d);

// Size, rank and corank of the matrix. Any out-pointer may be null.
//
// # Safety
// `m` must be a live matrix handle; non-null out-pointers must be writable.
enum WcStatus wc_matrix_shape(const struct WcMatrix *m, size_t *size, size_t *rank, size_t *corank);

// Releases a matrix. Null is ignored.
//
// # Safety
// `m` must be null or a live matrix handle, not used afterwards.
void wc_matrix_free(struct WcMatrix *m);

// Runs the selected checks. `checks` is a comma-separated list of check
// names, or null for all of them. `degree_bound` bounds the overlap
// search of the rewriting check and must be at least 2.
//
// # Safety
// `m` must be a live matrix handle; `checks` null or a NUL-terminated
// string; `out` writable.
enum WcStatus wc_verify(const struct WcMatrix *m,
                        enum WcMode mode,
                        const char *checks,
                        size_t degree_bound,
                        struct WcReport **out);

// Writes 1 if every check passed, 0 otherwise.
//
// # Safety
// `r` must be a live report handle; `passed` writable.
enum WcStatus wc_report_passed(const struct WcReport *r, int32_t *passed);

// The report as JSON. Timings are omitted when `timings` is 0.
//
// # Safety
// `r` must be a live report handle; `out` writable.
enum WcStatus wc_report_json(const struct WcReport *r, int32_t timings, char **out);

// The report as human-readable text.
//
// # Safety
// `r` must be a live report handle; `out` writable.
enum WcStatus wc_report_text(const struct WcReport *r, char **out);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must be null or a live report handle, not used afterwards.
void wc_report_free(struct WcReport *r);

// Normal form of a word such as `F1*E1` in the classical (`quantum` = 0)
// or quantum rewriting system of the matrix.
//
// # Safety
// `m` must be a live matrix handle; `word` a NUL-terminated string; `out`
// writable.
enum WcStatus wc_rewrite(const struct WcMatrix *m, int32_t quantum, const char *word, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLCHECK_H */
