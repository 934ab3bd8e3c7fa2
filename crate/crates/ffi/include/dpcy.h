#ifndef DPCY_H
#define DPCY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DpcyStatus {
  DPCY_STATUS_OK = 0,
  DPCY_STATUS_NULL_POINTER = 1,
  DPCY_STATUS_INVALID_UTF8 = 2,
  DPCY_STATUS_PARSE = 3,
  DPCY_STATUS_INVALID_INPUT = 4,
  DPCY_STATUS_DEGENERATE = 5,
  DPCY_STATUS_UNKNOWN_CASE = 6,
  DPCY_STATUS_UNSUPPORTED = 7,
  DPCY_STATUS_PANIC = 8,
} DpcyStatus;

typedef enum DpcySurface {
  DPCY_SURFACE_D6 = 0,
  DPCY_SURFACE_D7 = 1,
  DPCY_SURFACE_D8 = 2,
  DPCY_SURFACE_F1 = 3,
} DpcySurface;

/**
 * Opaque ideal handle.
 */
typedef struct DpcyIdeal DpcyIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *dpcy_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *dpcy_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void dpcy_string_free(char *s);

/**
 * # Safety
 * `ideal` must be NULL or a handle returned by this library, not yet freed.
 */
void dpcy_ideal_free(struct DpcyIdeal *ideal);

/**
 * Parses `{"ring": {"vars": [...], "char": p}, "gens": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_from_json(const char *json, struct DpcyIdeal **out);

/**
 * The anticanonical model of a del Pezzo surface, projected `projections`
 * times from general points.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum DpcyStatus dpcy_surface_new(enum DpcySurface surface,
                                 size_t projections,
                                 uint64_t seed,
                                 uint32_t prime,
                                 struct DpcyIdeal **out);

/**
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_to_json(const struct DpcyIdeal *ideal, char **out);

/**
 * Number of variables of the ambient ring.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_nvars(const struct DpcyIdeal *ideal, size_t *out);

/**
 * Minimal generator counts as a JSON object `{"degree": count}`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_census(const struct DpcyIdeal *ideal, char **out);

/**
 * Number of minimal generators of degree `degree`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_generator_count(const struct DpcyIdeal *ideal,
                                           uint32_t degree,
                                           size_t *out);

/**
 * Projective dimension and degree of the zero set.
 *
 * # Safety
 * `ideal` must be a live handle; `dim` and `degree` writable pointers.
 */
enum DpcyStatus dpcy_ideal_dimension_degree(const struct DpcyIdeal *ideal,
                                            int64_t *dim,
                                            int64_t *degree);

/**
 * `dim (R/I)_d`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_hilbert_function(const struct DpcyIdeal *ideal,
                                            uint32_t degree,
                                            uint64_t *out);

/**
 * Graded Betti table as JSON `{"entries": {"i,j": n}, "complete": bool}`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a writable pointer.
 */
enum DpcyStatus dpcy_ideal_betti(const struct DpcyIdeal *ideal, char **out);

/**
 * Singular points of a general complete intersection of the given degrees
 * through the zero set of `ideal`.
 *
 * # Safety
 * `ideal` must be a live handle, `degrees` must point to `ndegrees` values,
 * and `nodes`, `on_surface` must be writable.
 */
enum DpcyStatus dpcy_count_nodes(const struct DpcyIdeal *ideal,
                                 const uint32_t *degrees,
                                 size_t ndegrees,
                                 uint64_t seed,
                                 int64_t *nodes,
                                 bool *on_surface);

/**
 * Runs a case of the built-in registry at `seed`; the JSON report is stored
 * in `report` and `passed` tells whether it matched.
 *
 * # Safety
 * `case_id` must be a NUL-terminated string; `report` and `passed` writable.
 */
enum DpcyStatus dpcy_run_case(const char *case_id, uint64_t seed, char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPCY_H */
