#ifndef ASTAR_DEHN_H
#define ASTAR_DEHN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AdStatus {
  AD_STATUS_OK = 0,
  AD_STATUS_NULL_POINTER = 1,
  AD_STATUS_INVALID_INPUT = 2,
  AD_STATUS_DEGENERATE_SHAPE = 3,
  AD_STATUS_NO_CONVERGENCE = 4,
  AD_STATUS_DEGENERATE_JACOBIAN = 5,
  AD_STATUS_STEP_COLLAPSE = 6,
  AD_STATUS_SINGULAR_SYSTEM = 7,
  AD_STATUS_NOT_PRIMITIVE = 8,
  AD_STATUS_DEGENERATE_TRIANGLE = 9,
  AD_STATUS_OUT_OF_RANGE = 10,
  AD_STATUS_PANIC = 11,
} AdStatus;

typedef enum AdSide {
  AD_SIDE_ALPHA = 0,
  AD_SIDE_BETA = 1,
} AdSide;

/**
 * Shapes of the eight simplices at one parameter point.
 */
typedef struct AdShapes AdShapes;

/**
 * Result of one Newton solve.
 */
typedef struct AdSolution AdSolution;

typedef struct AdComplex {
  double re;
  double im;
} AdComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ad_version(void);

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *ad_last_error_message(void);

/**
 * `Λ(θ)`. NaN for non-finite input.
 */
double ad_lobachevsky(double theta);

/**
 * Build the shapes at `(alpha, beta)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum AdStatus ad_shapes_new(struct AdComplex alpha, struct AdComplex beta, struct AdShapes **out);

/**
 * Shape of simplex `index`, in the order z1, z2, z3, z4, w1, w2, w3, w4.
 *
 * # Safety
 * `h` must come from [`ad_shapes_new`] and not be freed; `out` must be writable.
 */
enum AdStatus ad_shapes_get(const struct AdShapes *h, size_t index, struct AdComplex *out);

/**
 * Signed hyperbolic volume of the eight simplices.
 *
 * # Safety
 * `h` must come from [`ad_shapes_new`] and not be freed; `out` must be writable.
 */
enum AdStatus ad_shapes_volume(const struct AdShapes *h, double *out);

/**
 * # Safety
 * `h` must be null or come from [`ad_shapes_new`]; it must not be used afterwards.
 */
void ad_shapes_free(struct AdShapes *h);

/**
 * Solve the `(p, q)` filling equation on one side. `tol <= 0` selects the
 * default tolerance.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum AdStatus ad_solve(enum AdSide side, double p, double q, double tol, struct AdSolution **out);

/**
 * # Safety
 * `h` must come from [`ad_solve`] and not be freed; `out` must be writable.
 */
enum AdStatus ad_solution_param(const struct AdSolution *h, struct AdComplex *out);

/**
 * Continued logarithms of meridian (`u`) and longitude (`v`).
 *
 * # Safety
 * `h` must come from [`ad_solve`] and not be freed; `u` and `v` must be writable.
 */
enum AdStatus ad_solution_logs(const struct AdSolution *h,
                               struct AdComplex *u,
                               struct AdComplex *v);

/**
 * # Safety
 * `h` must come from [`ad_solve`] and not be freed; outputs must be writable.
 */
enum AdStatus ad_solution_stats(const struct AdSolution *h, double *residual, size_t *iterations);

/**
 * # Safety
 * `h` must be null or come from [`ad_solve`]; it must not be used afterwards.
 */
void ad_solution_free(struct AdSolution *h);

/**
 * Real `(p, q)` with `p u + q v = 2πi` at `x`, continuing along the straight
 * path (with detours) from the complete structure.
 *
 * # Safety
 * `p` and `q` must be writable.
 */
enum AdStatus ad_filling_from_param(enum AdSide side, struct AdComplex x, double *p, double *q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASTAR_DEHN_H */
