#ifndef NCLUSTER_H
#define NCLUSTER_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The nonzero values match the exit codes of the `ncluster` binary.
 */
typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_INTERNAL = 1,
  NC_STATUS_VALIDATION = 2,
  NC_STATUS_RESOURCE_CAP = 3,
  NC_STATUS_MISMATCH = 4,
  NC_STATUS_NULL_ARGUMENT = 5,
  NC_STATUS_PANIC = 6,
} NcStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct NcPoly NcPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes `x_{n-1}` from the families on `D_n`. `family_cap == 0` selects the default cap.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum NcStatus ncluster_compute_x(uint32_t r, uint32_t n, uint64_t family_cap, struct NcPoly **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void ncluster_poly_free(struct NcPoly *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void ncluster_string_free(char *s);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcStatus ncluster_poly_term_count(const struct NcPoly *p, size_t *out);

/**
 * Sum of all coefficients as a decimal string.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcStatus ncluster_poly_coeff_sum(const struct NcPoly *p, char **out);

/**
 * Canonical JSON dump, identical to `ncluster compute --format json`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcStatus ncluster_poly_to_json(const struct NcPoly *p, char **out);

/**
 * Coefficient of a word given in token (`x y^-2`) or matrix (`[1 -1; 0 2]`) form,
 * as a decimal string.
 *
 * # Safety
 * `p` must be a live handle, `word` a NUL-terminated string and `out` writable.
 */
enum NcStatus ncluster_poly_coeff(const struct NcPoly *p, const char *word, char **out);

/**
 * Checks the formula against the certified oracle. `*passed` is set on success;
 * a disagreement is reported through `passed`, not through the status.
 *
 * # Safety
 * `passed` must be writable.
 */
enum NcStatus ncluster_verify_theorem(uint32_t r,
                                      uint32_t n,
                                      int64_t margin,
                                      uint64_t family_cap,
                                      bool *passed);

/**
 * Number of families of `set` (`F`, `Ftilde`, `Tgeq<u>`, `Tband<u>`) on `D_n`, as a decimal string.
 *
 * # Safety
 * `set` must be a NUL-terminated string and `out` writable.
 */
enum NcStatus ncluster_count_families(uint32_t r, uint32_t n, const char *set, char **out);

/**
 * Message for the last failure on this thread, or null. Owned by the library; valid
 * until the next call.
 */
const char *ncluster_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCLUSTER_H */
