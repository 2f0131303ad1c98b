#ifndef BEREZIN_H
#define BEREZIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BzStatus {
  BZ_STATUS_OK = 0,
  BZ_STATUS_NULL_POINTER = 1,
  BZ_STATUS_PARSE = 2,
  BZ_STATUS_INVALID_ARGUMENT = 3,
  BZ_STATUS_OUTSIDE_DISC = 4,
  BZ_STATUS_UNSUPPORTED = 5,
  BZ_STATUS_BUFFER_TOO_SMALL = 6,
  BZ_STATUS_PANIC = 7,
} BzStatus;

typedef enum BzShape {
  BZ_SHAPE_CLOSED_INTERVAL = 0,
  /**
   * `[lo, hi)`
   */
  BZ_SHAPE_HALF_OPEN_INTERVAL = 1,
  /**
   * `(lo, hi]`
   */
  BZ_SHAPE_LEFT_OPEN_INTERVAL = 2,
  /**
   * `[lo, inf)`; `hi` is infinite.
   */
  BZ_SHAPE_RAY = 3,
  BZ_SHAPE_CLOSED_DISC = 4,
  BZ_SHAPE_OPEN_DISC = 5,
  /**
   * Image of the disc under a polynomial symbol; no numeric fields.
   */
  BZ_SHAPE_IMAGE_SET = 6,
  /**
   * Only a bound is known: the range lies in `|w| <= radius`.
   */
  BZ_SHAPE_CONTAINED_IN_DISC = 7,
} BzShape;

typedef enum BzVerdict {
  BZ_VERDICT_CONVEX = 0,
  BZ_VERDICT_NOT_CONVEX = 1,
  BZ_VERDICT_INCONCLUSIVE = 2,
} BzVerdict;

/**
 * Parsed operator. Create with [`bz_operator_parse`], release with
 * [`bz_operator_free`].
 */
typedef struct BzOperator BzOperator;

typedef struct BzComplex {
  double re;
  double im;
} BzComplex;

/**
 * Predicted range. Interval shapes fill `lo` and `hi`; disc shapes fill
 * `center` and `radius`. Unused fields are NaN.
 */
typedef struct BzRange {
  enum BzShape shape;
  double lo;
  double hi;
  struct BzComplex center;
  double radius;
} BzRange;

/**
 * Summary of a convexity classification. The witness fields are NaN when
 * `has_witness` is 0.
 */
typedef struct BzConvexity {
  enum BzVerdict verdict;
  double deficiency;
  double max_gap;
  int32_t has_witness;
  struct BzComplex witness_p;
  struct BzComplex witness_q;
  struct BzComplex witness_midpoint;
  double witness_distance;
} BzConvexity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `text` (NUL-terminated UTF-8) into a new operator handle.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum BzStatus bz_operator_parse(const char *text, struct BzOperator **out);

/**
 * Releases a handle from [`bz_operator_parse`]. Null is ignored.
 *
 * # Safety
 * `op` must be null or a handle not yet freed.
 */
void bz_operator_free(struct BzOperator *op);

/**
 * Writes the canonical text of `op` into `buf` (NUL-terminated) and the
 * required size, including the NUL, into `needed` when it is not null.
 * Returns [`BzStatus::BufferTooSmall`] if `len` is too short; pass a null
 * `buf` with `len` 0 to query the size.
 *
 * # Safety
 * `buf` must point to `len` writable bytes or be null with `len` 0.
 */
enum BzStatus bz_operator_render(const struct BzOperator *op,
                                 char *buf,
                                 size_t len,
                                 size_t *needed);

/**
 * Closed-form Berezin transform of `op` at `lambda` on `H_gamma`.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum BzStatus bz_berezin_transform(const struct BzOperator *op,
                                   double gamma,
                                   struct BzComplex lambda,
                                   struct BzComplex *out);

/**
 * Berezin transform through power series truncated after `depth` terms.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum BzStatus bz_berezin_via_series(const struct BzOperator *op,
                                    double gamma,
                                    struct BzComplex lambda,
                                    size_t depth,
                                    struct BzComplex *out);

/**
 * Predicted Berezin range of `op` on `H_gamma`.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum BzStatus bz_predict_range(const struct BzOperator *op, double gamma, struct BzRange *out);

/**
 * Samples the range on a polar grid and classifies its convexity with
 * relative tolerance `tol`.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum BzStatus bz_classify(const struct BzOperator *op,
                          double gamma,
                          size_t n_radial,
                          size_t n_angular,
                          double r_max,
                          double tol,
                          struct BzConvexity *out);

/**
 * Reproducing kernel `k_lambda(z) = (1 - conj(lambda) z)^(-gamma)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BzStatus bz_kernel_value(double gamma,
                              struct BzComplex lambda,
                              struct BzComplex z,
                              struct BzComplex *out);

/**
 * Message of the last failing call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *bz_last_error_message(void);

/**
 * Library version as a static C string.
 */
const char *bz_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEREZIN_H */
