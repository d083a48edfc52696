#ifndef ABCLAB_H
#define ABCLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbclabStatus {
  ABCLAB_STATUS_OK = 0,
  ABCLAB_STATUS_NULL_POINTER = 1,
  ABCLAB_STATUS_INVALID_UTF8 = 2,
  ABCLAB_STATUS_INVALID_INPUT = 3,
  ABCLAB_STATUS_FACTOR_TIMEOUT = 4,
  ABCLAB_STATUS_REDUCIBLE_MIN_POLY = 5,
  ABCLAB_STATUS_DEGREE_CAP_EXCEEDED = 6,
  ABCLAB_STATUS_INDEX_DIVISOR_UNSUPPORTED = 7,
  ABCLAB_STATUS_UNSUPPORTED = 8,
  ABCLAB_STATUS_PRECISION_EXHAUSTED = 9,
  ABCLAB_STATUS_ZERO_COORDINATE = 10,
  ABCLAB_STATUS_DEGENERATE_POINT = 11,
  ABCLAB_STATUS_ZERO_RADICAL = 12,
  ABCLAB_STATUS_BUDGET_EXCEEDED = 13,
  ABCLAB_STATUS_UNBOUND_CONSTANT = 14,
  ABCLAB_STATUS_DOMAIN_ERROR = 15,
  ABCLAB_STATUS_HYPOTHESIS_NOT_MET = 16,
  ABCLAB_STATUS_INEXACT_DISCRIMINANT = 17,
  ABCLAB_STATUS_NON_MONOTONE_CONSTANT = 18,
  ABCLAB_STATUS_INVARIANT_VIOLATED = 19,
  ABCLAB_STATUS_NON_RATIONAL_BRANCH_POINT = 20,
  ABCLAB_STATUS_DEGREE_OVERFLOW = 21,
  ABCLAB_STATUS_CRITICAL_FIBER = 22,
  ABCLAB_STATUS_PANIC = 99,
} AbclabStatus;

typedef struct AbclabBelyi AbclabBelyi;

typedef struct AbclabField AbclabField;

typedef struct AbclabProfile AbclabProfile;

typedef struct AbclabTriple AbclabTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *abclab_last_error(void);

/**
 * Library version as a static string.
 */
const char *abclab_version(void);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void abclab_string_free(char *s);

/**
 * `spec` is `Q`, `Q(i)`, `Q(sqrt(d))` or a monic polynomial in x.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AbclabStatus abclab_field_new(const char *spec,
                                   size_t degree_cap,
                                   struct AbclabField **out_field);

/**
 * # Safety
 * `f` must come from `abclab_field_new`, or be NULL.
 */
void abclab_field_free(struct AbclabField *f);

/**
 * # Safety
 * `f` must be a live field handle; `out` a valid pointer.
 */
enum AbclabStatus abclab_field_degree(const struct AbclabField *f, size_t *out_degree);

/**
 * Field data as JSON.
 *
 * # Safety
 * `f` must be a live field handle; `out` a valid pointer.
 */
enum AbclabStatus abclab_field_json(const struct AbclabField *f, char **out_json);

/**
 * An abc triple a + b = c over the field; entries are written in the
 * generator `w` (or `i` over Q(i)).
 *
 * # Safety
 * Strings must be NUL-terminated; `f` live; `out` valid.
 */
enum AbclabStatus abclab_triple_new(const struct AbclabField *f,
                                    const char *a,
                                    const char *b,
                                    const char *c,
                                    struct AbclabTriple **out_triple);

/**
 * # Safety
 * `t` must come from `abclab_triple_new`, or be NULL.
 */
void abclab_triple_free(struct AbclabTriple *t);

/**
 * Certified enclosure [lo, hi] of h/rad.
 *
 * # Safety
 * `t` live; `lo`, `hi` valid.
 */
enum AbclabStatus abclab_triple_quality(const struct AbclabTriple *t,
                                        uint32_t precision,
                                        double *lo,
                                        double *hi);

/**
 * Height, radical and quality as JSON.
 *
 * # Safety
 * `t` live; `out` valid.
 */
enum AbclabStatus abclab_triple_report_json(const struct AbclabTriple *t,
                                            uint32_t precision,
                                            char **out_json);

/**
 * All u with u and 1 − u S-units over Q and h(u) ≤ log `height`, as JSON.
 *
 * # Safety
 * `primes` must point to `n` values; `out` valid.
 */
enum AbclabStatus abclab_sunit_search_json(const uint64_t *primes,
                                           size_t n,
                                           uint64_t height,
                                           char **out_json);

/**
 * # Safety
 * `name` NUL-terminated; `out` valid.
 */
enum AbclabStatus abclab_profile_builtin(const char *name, struct AbclabProfile **out_profile);

/**
 * # Safety
 * `p` must come from `abclab_profile_builtin`, or be NULL.
 */
void abclab_profile_free(struct AbclabProfile *p);

/**
 * Binds a constant to a rational such as `3/2` (user-hypothetical).
 *
 * # Safety
 * `p` live and not shared across threads during the call; strings NUL-terminated.
 */
enum AbclabStatus abclab_profile_set_constant(struct AbclabProfile *p,
                                              const char *name,
                                              const char *value);

/**
 * Certified enclosure of B(u, v, w, z, d); `env` is `u,v,w,z,d` with rational entries.
 *
 * # Safety
 * `p` live; `env` NUL-terminated; `lo`, `hi` valid.
 */
enum AbclabStatus abclab_profile_eval(const struct AbclabProfile *p,
                                      const char *env,
                                      uint32_t precision,
                                      double *lo,
                                      double *hi);

/**
 * Mason–Stothers check of a + b over `base` (`Q` or `F<p>`), polynomials in t.
 *
 * # Safety
 * Strings NUL-terminated; `out` valid.
 */
enum AbclabStatus abclab_mason_check_json(const char *base,
                                          const char *a,
                                          const char *b,
                                          char **out_json);

/**
 * Builds and certifies a Belyi map for a branch set such as `0,1,inf,1/3`.
 *
 * # Safety
 * `branch` NUL-terminated; `out` valid.
 */
enum AbclabStatus abclab_belyi_build(const char *branch,
                                     uint64_t degree_cap,
                                     struct AbclabBelyi **out_map);

/**
 * # Safety
 * `m` must come from `abclab_belyi_build`, or be NULL.
 */
void abclab_belyi_free(struct AbclabBelyi *m);

/**
 * # Safety
 * `m` live; `out` valid.
 */
enum AbclabStatus abclab_belyi_degree(const struct AbclabBelyi *m, uint64_t *out_degree);

/**
 * The certificate (map, trace, witnesses, critical values) as JSON.
 *
 * # Safety
 * `m` live; `out` valid.
 */
enum AbclabStatus abclab_belyi_json(const struct AbclabBelyi *m, char **out_json);

/**
 * Fiber fields over a rational `y`; `primes` is a comma-separated S.
 *
 * # Safety
 * `m` live; strings NUL-terminated; `out` valid.
 */
enum AbclabStatus abclab_belyi_fiber_json(const struct AbclabBelyi *m,
                                          const char *y,
                                          const char *primes,
                                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABCLAB_H */
