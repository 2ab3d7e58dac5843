#ifndef THUEQ_H
#define THUEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum ThueqStatus {
  THUEQ_STATUS_OK = 0,
  /**
   * the run finished but did not prove the theorem for these parameters
   */
  THUEQ_STATUS_INCONCLUSIVE = 1,
  /**
   * the engine failed; see `thueq_last_error`
   */
  THUEQ_STATUS_INTERNAL = 2,
  /**
   * an argument was rejected; see `thueq_last_error`
   */
  THUEQ_STATUS_INVALID_ARGUMENT = 3,
  THUEQ_STATUS_NULL_POINTER = 4,
  THUEQ_STATUS_PANIC = 5,
} ThueqStatus;

/**
 * A rendered JSON report.
 */
typedef struct ThueqReport ThueqReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs every certificate and the final assembly.
 *
 * `tmin` is a decimal or fraction string, NULL for 100. Returns `Ok` when the theorem is
 * proven, `Inconclusive` when a gate fails for these parameters, `Internal` when a gate that
 * does not depend on them fails. A report is produced in all three cases.
 *
 * # Safety
 * `tmin` is NULL or a NUL-terminated string; `out` is valid for writes.
 */
enum ThueqStatus thueq_verify_all(const char *tmin,
                                  uint32_t kmax,
                                  uint32_t rmax,
                                  struct ThueqReport **out);

/**
 * Every `t` for which `F_t` is reducible.
 *
 * # Safety
 * `out` is valid for writes.
 */
enum ThueqStatus thueq_irreducible_list(struct ThueqReport **out);

/**
 * Non-trivial solutions with `min(|x|, |y|) < 3` and `|t| >= tmin`.
 *
 * # Safety
 * `tmin` is a NUL-terminated string; `out` is valid for writes.
 */
enum ThueqStatus thueq_small_solutions(const char *tmin, struct ThueqReport **out);

/**
 * `t0` and `C0` for `|F_t(x, y)| <= C |t|`. `t0` may be NULL for the least certified value.
 *
 * # Safety
 * `c` is a NUL-terminated string, `t0` is NULL or one; `out` is valid for writes.
 */
enum ThueqStatus thueq_corollary_lin(const char *c, const char *t0, struct ThueqReport **out);

/**
 * `t0` for `|F_t(x, y)| <= |t|^(2 - eps)`.
 *
 * # Safety
 * `eps` is a NUL-terminated string; `out` is valid for writes.
 */
enum ThueqStatus thueq_corollary_eps(const char *eps, struct ThueqReport **out);

/**
 * Type `j` of `(x, y)` for `F_t`: the index minimizing `|x - alpha^(j) y|`. Elements of
 * `Q(√-d)` are given by coordinates `a + bω`.
 *
 * # Safety
 * `out_type` is valid for writes.
 */
enum ThueqStatus thueq_classify_type(uint64_t d,
                                     int64_t t_a,
                                     int64_t t_b,
                                     int64_t x_a,
                                     int64_t x_b,
                                     int64_t y_a,
                                     int64_t y_b,
                                     uint8_t *out_type);

/**
 * The report as a NUL-terminated JSON string, owned by the handle. NULL for a NULL handle.
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
const char *thueq_report_json(const struct ThueqReport *report);

/**
 * Length in bytes of the JSON string, excluding the terminator.
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
size_t thueq_report_len(const struct ThueqReport *report);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `report` is NULL or a handle not yet freed.
 */
void thueq_report_free(struct ThueqReport *report);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *thueq_last_error(void);

const char *thueq_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THUEQ_H */
