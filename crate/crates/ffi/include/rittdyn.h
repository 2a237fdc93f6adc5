#ifndef RITTDYN_H
#define RITTDYN_H

#pragma once

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Degree cap applied to iterates requested through this interface.
 */
#define RD_DEGREE_CAP 5000

typedef enum RdStatus {
  RD_STATUS_OK = 0,
  RD_STATUS_NULL_ARGUMENT = 1,
  RD_STATUS_INVALID_UTF8 = 2,
  RD_STATUS_PARSE = 3,
  /**
   * A degree, conductor, step or orbit budget was exhausted.
   */
  RD_STATUS_BUDGET = 4,
  /**
   * Inputs violate a documented requirement (non-commuting, unequal degree, ...).
   */
  RD_STATUS_PRECONDITION = 5,
  /**
   * An exact self-check failed.
   */
  RD_STATUS_INTERNAL = 6,
  RD_STATUS_PANIC = 7,
} RdStatus;

/**
 * Opaque rational map.
 */
typedef struct RdMap RdMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a map literal such as `(z^2-4)/(z-1)` over Q(ζ_conductor).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RdStatus rd_map_parse(const char *text, uint32_t conductor, struct RdMap **out);

/**
 * Releases a map; null is ignored.
 *
 * # Safety
 * `map` must come from this library and not be used afterwards.
 */
void rd_map_free(struct RdMap *map);

/**
 * Writes the display form of `map`; release it with `rd_string_free`.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum RdStatus rd_map_to_string(const struct RdMap *map, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rd_string_free(char *s);

/**
 * Message for the last failure on this thread, or null.  Owned by the
 * library and valid until the next call on the same thread.
 */
const char *rd_last_error(void);

/**
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum RdStatus rd_map_degree(const struct RdMap *map, size_t *out);

/**
 * `out` receives f∘g.
 *
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum RdStatus rd_map_compose(const struct RdMap *f, const struct RdMap *g, struct RdMap **out);

/**
 * `out` receives the n-th iterate, subject to `RD_DEGREE_CAP`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum RdStatus rd_map_iterate(const struct RdMap *f, uint32_t n, struct RdMap **out);

/**
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum RdStatus rd_map_equal(const struct RdMap *f, const struct RdMap *g, bool *out);

/**
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum RdStatus rd_commutes(const struct RdMap *f, const struct RdMap *g, bool *out);

/**
 * Chebyshev map T_d (sign +1) or −T_d (sign −1).
 *
 * # Safety
 * `out` must be writable.
 */
enum RdStatus rd_chebyshev(uint32_t d, int8_t sign, struct RdMap **out);

/**
 * Least p with f^p = g^p, for commuting maps of equal degree.
 *
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum RdStatus rd_common_iterate(const struct RdMap *f, const struct RdMap *g, uint32_t *out);

/**
 * Number of points of period dividing n, with multiplicity, ∞ included.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum RdStatus rd_periodic_count(const struct RdMap *f, uint32_t n, size_t *out);

/**
 * Exact multiplier-spectrum divisibility check for commuting f, g.
 *
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum RdStatus rd_multiplier_identity(const struct RdMap *f,
                                     const struct RdMap *g,
                                     uint32_t n,
                                     uint32_t p,
                                     bool *out);

/**
 * Commutator identity for g, h at exponent n.
 *
 * # Safety
 * `g`, `h` must be live handles; `out` must be writable.
 */
enum RdStatus rd_identity_eq8(const struct RdMap *g, const struct RdMap *h, uint32_t n, bool *out);

/**
 * Monte Carlo Lyapunov exponent estimate and its standard error.
 *
 * # Safety
 * `f` must be a live handle; `mean`, `standard_error` must be writable.
 */
enum RdStatus rd_lyapunov(const struct RdMap *f,
                          size_t depth,
                          size_t breadth,
                          uint64_t seed,
                          double *mean,
                          double *standard_error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RITTDYN_H */
