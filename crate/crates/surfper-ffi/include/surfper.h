#ifndef SURFPER_H
#define SURFPER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SurfperOrientation {
  SURFPER_ORIENTATION_PRESERVING = 0,
  SURFPER_ORIENTATION_REVERSING = 1,
} SurfperOrientation;

/**
 * How much is known about a minimum period.
 */
typedef enum SurfperPeriodKind {
  /**
   * `lower == upper` is the value.
   */
  SURFPER_PERIOD_KIND_EXACT = 0,
  /**
   * Some iterate never has a fixed point.
   */
  SURFPER_PERIOD_KIND_INFINITE = 1,
  /**
   * The value lies in `[lower, upper]`.
   */
  SURFPER_PERIOD_KIND_INTERVAL = 2,
} SurfperPeriodKind;

typedef enum SurfperStatus {
  SURFPER_STATUS_OK = 0,
  SURFPER_STATUS_NULL_POINTER = 1,
  SURFPER_STATUS_INVALID_ARGUMENT = 2,
  SURFPER_STATUS_INVALID_TYPE = 3,
  SURFPER_STATUS_BUFFER_TOO_SMALL = 4,
  SURFPER_STATUS_OVERFLOW = 5,
  SURFPER_STATUS_INTERNAL = 6,
} SurfperStatus;

/**
 * Opaque minimum-period result.
 */
typedef struct SurfperMinPeriod SurfperMinPeriod;

/**
 * Opaque finite-order type.
 */
typedef struct SurfperType SurfperType;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never NULL; do not free.
 */
const char *surfper_status_message(enum SurfperStatus status);

/**
 * Computes the largest minimum period over homeomorphisms of the surface of
 * genus `genus` with `boundary` boundary components.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SurfperStatus surfper_min_period(uint64_t genus,
                                      uint64_t boundary,
                                      enum SurfperOrientation orientation,
                                      struct SurfperMinPeriod **out);

/**
 * Reads the kind and bounds of a result. For `Infinite` both bounds are 0.
 *
 * # Safety
 * `result` must come from [`surfper_min_period`] and not be freed; the
 * output pointers must be valid.
 */
enum SurfperStatus surfper_min_period_bounds(const struct SurfperMinPeriod *result,
                                             enum SurfperPeriodKind *kind,
                                             uint64_t *lower,
                                             uint64_t *upper);

/**
 * Writes the result, with its provenance, as NUL-terminated JSON into
 * `buf`. `needed` receives the required size including the terminator, also
 * when the buffer is too small. `buf` may be NULL when `len` is 0.
 *
 * # Safety
 * `result` must be a live handle, `needed` valid, and `buf` writable for
 * `len` bytes.
 */
enum SurfperStatus surfper_min_period_json(const struct SurfperMinPeriod *result,
                                           char *buf,
                                           size_t len,
                                           size_t *needed);

/**
 * Releases a result. NULL is ignored.
 *
 * # Safety
 * `result` must come from [`surfper_min_period`] and not be freed twice.
 */
void surfper_min_period_free(struct SurfperMinPeriod *result);

/**
 * Parses a type written `n;B;p1,p2,...` (reversing) or `n;p1,p2,...`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` writable.
 */
enum SurfperStatus surfper_type_parse(const char *text,
                                      enum SurfperOrientation orientation,
                                      struct SurfperType **out);

/**
 * Whether a map of this type exists on the closed surface of genus `genus`.
 *
 * # Safety
 * `ty` must be a live handle and `exists` writable.
 */
enum SurfperStatus surfper_type_exists(const struct SurfperType *ty, uint64_t genus, bool *exists);

/**
 * Writes `L(f), ..., L(f^len)` for a map of this type on the closed surface
 * of genus `genus`.
 *
 * # Safety
 * `ty` must be a live handle and `values` writable for `len` elements.
 */
enum SurfperStatus surfper_type_lefschetz(const struct SurfperType *ty,
                                          uint64_t genus,
                                          int64_t *values,
                                          size_t len);

/**
 * Releases a type. NULL is ignored.
 *
 * # Safety
 * `ty` must come from [`surfper_type_parse`] and not be freed twice.
 */
void surfper_type_free(struct SurfperType *ty);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURFPER_H */
