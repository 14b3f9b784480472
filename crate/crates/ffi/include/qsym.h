#ifndef QSYM_H
#define QSYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four agree with the command line exit codes.
 */
typedef enum QsymStatus {
  QSYM_STATUS_OK = 0,
  QSYM_STATUS_IDENTITY_FAILED = 1,
  QSYM_STATUS_DOMAIN = 2,
  QSYM_STATUS_RESOURCE = 3,
  QSYM_STATUS_DEGENERATE = 4,
  QSYM_STATUS_POLE = 5,
  QSYM_STATUS_DIVISION_BY_ZERO = 6,
  QSYM_STATUS_PARSE = 7,
  QSYM_STATUS_NULL_POINTER = 8,
  QSYM_STATUS_PANIC = 9,
} QsymStatus;

/**
 * Opaque rational function in `q`.
 */
typedef struct QsymRatFun QsymRatFun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next `qsym_*` call on the same thread.
 */
const char *qsym_last_error(void);

/**
 * `beta^{(r)}_{n,q^w}(arg/w)`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QsymStatus qsym_beta_higher(uint32_t n,
                                 uint32_t r,
                                 uint32_t w,
                                 int64_t arg,
                                 struct QsymRatFun **out);

/**
 * Weighted `beta^{(h,r)}_{n,q^w}(arg/w)`; degenerate `h` yields
 * `QSYM_STATUS_DEGENERATE`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QsymStatus qsym_beta_weighted(uint32_t n,
                                   int64_t h,
                                   uint32_t r,
                                   uint32_t w,
                                   int64_t arg,
                                   struct QsymRatFun **out);

/**
 * `T^{(r)}_{n,i}(wlim | q^b)`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QsymStatus qsym_t_sum(uint32_t n,
                           uint32_t i,
                           uint32_t r,
                           uint32_t wlim,
                           uint32_t b,
                           struct QsymRatFun **out);

/**
 * `T^{(h,r)}_{n,i}(wlim | q^b)`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QsymStatus qsym_t_sum_h(uint32_t n,
                             uint32_t i,
                             int64_t h,
                             uint32_t r,
                             uint32_t wlim,
                             uint32_t b,
                             struct QsymRatFun **out);

/**
 * Parses the `{"num": [...], "den": [...]}` JSON form.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for one pointer write.
 */
enum QsymStatus qsym_ratfun_from_json(const char *json, struct QsymRatFun **out);

/**
 * Canonical JSON form; free the result with [`qsym_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` valid for one pointer write.
 */
enum QsymStatus qsym_ratfun_to_json(const struct QsymRatFun *f, char **out);

/**
 * Human-readable form such as `-1/(1+q)`; free with [`qsym_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` valid for one pointer write.
 */
enum QsymStatus qsym_ratfun_to_pretty(const struct QsymRatFun *f, char **out);

/**
 * Equality as rational functions.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` valid for one write.
 */
enum QsymStatus qsym_ratfun_eq(const struct QsymRatFun *a, const struct QsymRatFun *b, bool *out);

/**
 * `a + b` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` valid for one pointer write.
 */
enum QsymStatus qsym_ratfun_add(const struct QsymRatFun *a,
                                const struct QsymRatFun *b,
                                struct QsymRatFun **out);

/**
 * `a * b` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` valid for one pointer write.
 */
enum QsymStatus qsym_ratfun_mul(const struct QsymRatFun *a,
                                const struct QsymRatFun *b,
                                struct QsymRatFun **out);

/**
 * Exact value at `q = q0`, both given as rational strings.
 *
 * # Safety
 * `f` must be a live handle, `q0` a nul-terminated string and `out` valid
 * for one pointer write.
 */
enum QsymStatus qsym_ratfun_eval(const struct QsymRatFun *f, const char *q0, char **out);

/**
 * Checks one identity at one parameter point; unused parameters are
 * ignored. `*holds` receives the verdict and, when `report` is non-null,
 * `*report` the JSON report line including both sides.
 *
 * # Safety
 * `identity` must be a nul-terminated string, `holds` valid for one write
 * and `report` null or valid for one pointer write.
 */
enum QsymStatus qsym_check(const char *identity,
                           uint32_t n,
                           uint32_t r,
                           int64_t h,
                           uint32_t w1,
                           uint32_t w2,
                           int64_t x,
                           bool *holds,
                           char **report);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void qsym_ratfun_free(struct QsymRatFun *f);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void qsym_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSYM_H */
