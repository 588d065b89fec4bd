#ifndef LAMBDADET_H
#define LAMBDADET_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Evaluation methods for [`ld_compute`].
 */
typedef enum {
  LD_METHOD_DODGSON = 0,
  LD_METHOD_TSYSTEM = 1,
  LD_METHOD_ASM = 2,
  LD_METHOD_STATISTICS = 3,
  LD_METHOD_LGV = 4,
} ld_method;

/**
 * Status codes.
 */
typedef enum {
  LD_STATUS_OK = 0,
  LD_STATUS_NULL_POINTER = 1,
  LD_STATUS_INVALID_ARGUMENT = 2,
  LD_STATUS_PARSE = 3,
  LD_STATUS_ZERO_DIVISION = 4,
  LD_STATUS_WINDOW_TOO_SMALL = 5,
  LD_STATUS_CAP_EXCEEDED = 6,
  LD_STATUS_NOT_ASM = 7,
  LD_STATUS_MISMATCH = 8,
  LD_STATUS_ALGEBRA = 9,
  LD_STATUS_IO = 10,
  LD_STATUS_PANIC = 11,
} ld_status;

/**
 * Coefficient sequences `λ_a`, `μ_b` on a finite window.
 */
typedef struct ld_coeffs ld_coeffs;

/**
 * Square matrix of rationals.
 */
typedef struct ld_matrix ld_matrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *ld_version(void);

/**
 * Message of the last failure on this thread; valid until the next failing
 * call on the same thread. Never NULL.
 */
const char *ld_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer obtained from this library and not yet freed.
 */
void ld_string_free(char *s);

/**
 * `n × n` zero matrix.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
ld_status ld_matrix_new(size_t n, ld_matrix **out);

/**
 * Matrix from JSON `{"n": N, "entries": [[...]]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
ld_status ld_matrix_from_json(const char *json, ld_matrix **out);

/**
 * # Safety
 * `m` must be NULL or a handle from this library not yet freed.
 */
void ld_matrix_free(ld_matrix *m);

/**
 * Number of rows, or 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t ld_matrix_size(const ld_matrix *m);

/**
 * Sets entry `(i, j)` (0-based) from a rational string.
 *
 * # Safety
 * `m` must be a live handle and `value` a NUL-terminated string.
 */
ld_status ld_matrix_set(ld_matrix *m, size_t i, size_t j, const char *value);

/**
 * Entry `(i, j)` (0-based) as a newly allocated string.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
ld_status ld_matrix_get(const ld_matrix *m, size_t i, size_t j, char **out);

/**
 * Constant coefficients on `[1−n, n−1]`.
 *
 * # Safety
 * String arguments must be NUL-terminated and `out` a valid pointer.
 */
ld_status ld_coeffs_homogeneous(size_t n, const char *lambda, const char *mu, ld_coeffs **out);

/**
 * `λ_a = μ_a = q^a` on `[1−n, n−1]`.
 *
 * # Safety
 * `q` must be NUL-terminated and `out` a valid pointer.
 */
ld_status ld_coeffs_q_power(size_t n, const char *q, ld_coeffs **out);

/**
 * Coefficients from JSON `{"lambda": {"-1": "1/2", ...}, "mu": {...}}`.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` a valid pointer.
 */
ld_status ld_coeffs_from_json(const char *json, ld_coeffs **out);

/**
 * # Safety
 * `c` must be NULL or a handle from this library not yet freed.
 */
void ld_coeffs_free(ld_coeffs *c);

/**
 * Lambda-determinant by one method, as a newly allocated rational string.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
ld_status ld_compute(const ld_matrix *m, const ld_coeffs *c, ld_method method, char **out);

/**
 * Runs all five methods and writes the report as JSON (no timings).
 * Returns `LD_STATUS_MISMATCH` when methods disagree or fail; the report is
 * written either way.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
ld_status ld_cross_check_json(const ld_matrix *m, const ld_coeffs *c, char **out);

/**
 * Number of `n × n` alternating sign matrices, by enumeration.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
ld_status ld_asm_count(size_t n, size_t *out);

/**
 * Generic Lambda-determinant of size `n` as Laurent-polynomial JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
ld_status ld_symbolic_json(size_t n, bool allow_large, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDADET_H */
