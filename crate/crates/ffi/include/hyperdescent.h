#ifndef HYPERDESCENT_H
#define HYPERDESCENT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. 0-3 match the command-line exit codes.
 */
typedef enum HdCode {
  HD_CODE_OK = 0,
  HD_CODE_FAIL = 1,
  HD_CODE_INCONCLUSIVE = 2,
  HD_CODE_INPUT_ERROR = 3,
  HD_CODE_NULL_ARGUMENT = 4,
  HD_CODE_INVALID_UTF8 = 5,
  HD_CODE_PANIC = 6,
} HdCode;

/**
 * y^2 = f(x) over a prime field.
 */
typedef struct HdJacobian HdJacobian;

/**
 * A finished report.
 */
typedef struct HdReport HdReport;

/**
 * Run a command ("verify-d5", "verify-d6", "jacobian", "rank-bound", "pillai").
 *
 * `config_json` may be NULL for the built-in defaults. On success `*out` receives a
 * report and the return value is its status. On error `*out` is NULL and
 * `hd_last_error` describes the failure.
 *
 * # Safety
 * `command` must be a NUL-terminated string, `config_json` NULL or NUL-terminated,
 * and `out` a valid pointer.
 */
enum HdCode hd_run(const char *command, const char *config_json, struct HdReport **out);

/**
 * Overall status of a report; NullArgument for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle from `hd_run`.
 */
enum HdCode hd_report_status(const struct HdReport *r);

/**
 * The report as JSON, owned by the handle; NULL for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle from `hd_run`.
 */
const char *hd_report_json(const struct HdReport *r);

/**
 * The report as CSV, owned by the handle; NULL for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle from `hd_run`.
 */
const char *hd_report_csv(const struct HdReport *r);

/**
 * Number of checks in a report (0 for NULL).
 *
 * # Safety
 * `r` must be NULL or a live handle from `hd_run`.
 */
size_t hd_report_check_count(const struct HdReport *r);

/**
 * # Safety
 * `r` must be NULL or a handle from `hd_run` that has not been freed.
 */
void hd_report_free(struct HdReport *r);

/**
 * Build y^2 = f(x) over F_p from integer coefficients, constant term first.
 *
 * # Safety
 * `coeffs` must point to `len` readable values and `out` must be valid.
 */
enum HdCode hd_jacobian_new(uint64_t p, const int64_t *coeffs, size_t len, struct HdJacobian **out);

/**
 * Genus of the curve; 0 for NULL.
 *
 * # Safety
 * `j` must be NULL or a live handle from `hd_jacobian_new`.
 */
size_t hd_jacobian_genus(const struct HdJacobian *j);

/**
 * |J(F_p)| by enumeration, cross-checked against L(1) from point counts.
 * A mismatch returns Fail.
 *
 * # Safety
 * `j` must be a live handle and `order` a valid pointer.
 */
enum HdCode hd_jacobian_order(const struct HdJacobian *j, uint64_t budget, uint64_t *order);

/**
 * # Safety
 * `j` must be NULL or a handle from `hd_jacobian_new` that has not been freed.
 */
void hd_jacobian_free(struct HdJacobian *j);

/**
 * Message for the last error on this thread (empty if none).
 */
const char *hd_last_error(void);

/**
 * Library version.
 */
const char *hd_version(void);

#endif  /* HYPERDESCENT_H */
