#ifndef WFSCOPE_H
#define WFSCOPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WFS_STATUS_OK = 0,
  WFS_STATUS_NULL_POINTER = 1,
  WFS_STATUS_INVALID_ARGUMENT = 2,
  WFS_STATUS_INVALID_GRID = 3,
  WFS_STATUS_COVERAGE = 4,
  WFS_STATUS_RESOLUTION = 5,
  WFS_STATUS_DIVERGENCE = 6,
  WFS_STATUS_DOMAIN = 7,
  WFS_STATUS_DEGENERATE_FIT = 8,
  WFS_STATUS_PANIC = 99,
} WfsStatus;

typedef enum {
  WFS_SCHEME_STRANG_SPLIT = 0,
  WFS_SCHEME_MEHLER_EXACT = 1,
} WfsScheme;

typedef enum {
  WFS_VERDICT_SINGULAR = 0,
  WFS_VERDICT_SMOOTH = 1,
  WFS_VERDICT_INDETERMINATE = 2,
} WfsVerdict;

// Sampled field on a uniform periodic grid.
typedef struct WfsField WfsField;

// Perturbation `v(x)` of the harmonic oscillator.
typedef struct WfsPotential WfsPotential;

// Analysis window, possibly scaled and evolved.
typedef struct WfsWindow WfsWindow;

typedef struct {
  double re;
  double im;
} WfsComplex;

typedef struct {
  double x;
  double xi;
} WfsPhasePoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *wfs_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *wfs_version(void);

// Copies `n` samples on `[x_min, x_max)` into a new field.
//
// # Safety
// `values` must point to `n` readable elements; `out` must be writable.
WfsStatus wfs_field_from_samples(double x_min,
                                 double x_max,
                                 size_t n,
                                 const WfsComplex *values,
                                 WfsField **out);

// Samples a JSON-described signal on `n` points of `[x_min, x_max)`.
//
// # Safety
// `signal_json` must be a NUL-terminated string; `out` must be writable.
WfsStatus wfs_field_sample_signal(const char *signal_json,
                                  double x_min,
                                  double x_max,
                                  size_t n,
                                  WfsField **out);

// Number of samples, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
size_t wfs_field_len(const WfsField *field);

// Copies the samples into `out`, which holds `len` elements.
//
// # Safety
// `field` must be a live handle and `out` must have room for `len` values.
WfsStatus wfs_field_values(const WfsField *field, WfsComplex *out, size_t len);

// # Safety
// `field` must be null or a handle not yet freed.
void wfs_field_free(WfsField *field);

// `φ_{0,λ}` for the Gaussian `exp(−a₀x²/2)`.
//
// # Safety
// `out` must be writable.
WfsStatus wfs_window_gaussian(double b, double lambda, WfsComplex a0, WfsWindow **out);

// `φ_{0,λ}` for the first Hermite function `x exp(−x²/2)`.
//
// # Safety
// `out` must be writable.
WfsStatus wfs_window_hermite1(double b, double lambda, WfsWindow **out);

// Free harmonic-oscillator evolution of a closed-form window by `t`.
//
// # Safety
// `window` must be a live handle; `out` must be writable.
WfsStatus wfs_window_evolve(const WfsWindow *window, double t, WfsWindow **out);

// `φ(z)`.
//
// # Safety
// `window` must be a live handle; `out` must be writable.
WfsStatus wfs_window_eval(const WfsWindow *window, double z, WfsComplex *out);

// # Safety
// `window` must be null or a handle not yet freed.
void wfs_window_free(WfsWindow *window);

// `W_φ f(x, ξ)` for sampled data.
//
// # Safety
// `field` and `window` must be live handles; `out` must be writable.
WfsStatus wfs_wpt_point_field(const WfsField *field,
                              const WfsWindow *window,
                              double x,
                              double xi,
                              WfsComplex *out);

// `W_φ f(x, ξ)` for a JSON-described signal, by adaptive quadrature.
//
// # Safety
// `signal_json` must be a NUL-terminated string, `window` a live handle and
// `out` writable.
WfsStatus wfs_wpt_point_signal(const char *signal_json,
                               const WfsWindow *window,
                               double x,
                               double xi,
                               WfsComplex *out);

// # Safety
// `out` must be writable.
WfsStatus wfs_potential_zero(WfsPotential **out);

// `c (1 + x²)^{ρ/2}` with `0 ≤ ρ < 2`.
//
// # Safety
// `out` must be writable.
WfsStatus wfs_potential_power(double coefficient, double exponent, WfsPotential **out);

// `a √(x² + ε²)`.
//
// # Safety
// `out` must be writable.
WfsStatus wfs_potential_smoothed_abs(double coefficient, double epsilon, WfsPotential **out);

// # Safety
// `pot` must be null or a handle not yet freed.
void wfs_potential_free(WfsPotential *pot);

// Unperturbed flow from `p` at time `t0` to time `s`.
WfsPhasePoint wfs_exact_ho_flow(double t0, double s, WfsPhasePoint p);

// State at time 0 of the flow through `(x, λξ)` at `t0`. `n_steps = 0`
// picks the default resolution.
//
// # Safety
// `pot` must be a live handle; `out` must be writable.
WfsStatus wfs_backward_endpoint(const WfsPotential *pot,
                                double t0,
                                double x,
                                double xi,
                                double lambda,
                                size_t n_steps,
                                WfsPhasePoint *out);

// Solution at `t1` of the perturbed oscillator started from `field` at `t0`,
// on the field's own grid.
//
// # Safety
// `field` and `pot` must be live handles, `scheme` one of the declared
// values and `out` writable.
WfsStatus wfs_evolve(const WfsField *field,
                     const WfsPotential *pot,
                     double t0,
                     double t1,
                     double dt,
                     WfsScheme scheme,
                     WfsField **out);

// Decay order of `sup ≈ C λ^{−N}` from the upper half of the schedule.
//
// # Safety
// `lambdas` and `sups` must hold `n` values; `order` and `residual` must be
// writable.
WfsStatus wfs_fit_order(const double *lambdas,
                        const double *sups,
                        size_t n,
                        double *order,
                        double *residual);

// Verdict for `(x0, ξ0)` with a Gaussian window and the default detector
// settings capped at `lambda_max`. With a null `pot` the data itself is
// scanned; otherwise the solution at `t0` is.
//
// # Safety
// `signal_json` must be a NUL-terminated string, `pot` null or a live handle,
// `verdict` and `order` writable.
WfsStatus wfs_detect_point(const char *signal_json,
                           double b,
                           double lambda_max,
                           const WfsPotential *pot,
                           double t0,
                           double x0,
                           double xi0,
                           WfsVerdict *verdict,
                           double *order);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WFSCOPE_H */
