/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef QSL_H
#define QSL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QslStatus {
  QSL_STATUS_OK = 0,
  QSL_STATUS_NULL_POINTER = 1,
  QSL_STATUS_INVALID_ARGUMENT = 2,
  QSL_STATUS_NUMERICAL = 3,
  QSL_STATUS_OUT_OF_RANGE = 4,
  QSL_STATUS_PANIC = 5,
} QslStatus;

typedef enum QslBathKind {
  QSL_BATH_KIND_FERMIONIC = 0,
  QSL_BATH_KIND_BOSONIC = 1,
} QslBathKind;

typedef enum QslGammaConvention {
  QSL_GAMMA_CONVENTION_HALF = 0,
  QSL_GAMMA_CONVENTION_FULL = 1,
} QslGammaConvention;

typedef enum QslScanAxis {
  QSL_SCAN_AXIS_S = 0,
  QSL_SCAN_AXIS_TAU = 1,
  QSL_SCAN_AXIS_B = 2,
} QslScanAxis;

typedef enum QslBathSelection {
  QSL_BATH_SELECTION_FERMIONIC = 0,
  QSL_BATH_SELECTION_BOSONIC = 1,
  QSL_BATH_SELECTION_BOTH = 2,
} QslBathSelection;

// Opaque bath handle.
typedef struct QslBath QslBath;

// Opaque scan table handle.
typedef struct QslScan QslScan;

// Environment parameters. `kind` is a `QslBathKind`, `convention` a
// `QslGammaConvention`.
typedef struct QslBathParams {
  uint32_t kind;
  double s;
  double gamma0;
  double b_field;
  double n_sc;
  double epsilon;
  uint32_t convention;
} QslBathParams;

typedef struct QslBloch {
  double x;
  double y;
  double z;
} QslBloch;

typedef struct QslResult {
  double ml;
  double mt;
  double unified;
  double f_rel_purity;
  double alpha_tau;
  double alpha_target;
  double ml_denominator;
  double mt_denominator;
} QslResult;

// `axis` is a `QslScanAxis`, `baths` a `QslBathSelection`.
typedef struct QslScanSpec {
  uint32_t axis;
  double lo;
  double hi;
  size_t points;
  uint32_t baths;
  double tau;
  double tau_d;
} QslScanSpec;

// One scan row. When `status` is not `QSL_STATUS_OK` the result fields are
// zero and the row's message is available from `qsl_scan_row_error`.
typedef struct QslScanRow {
  double value;
  uint32_t kind;
  enum QslStatus status;
  struct QslResult result;
} QslScanRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Defaults: fermionic, s = 1, Γ₀ = 1, B = 0, N_sc = 1, ε = 1, half convention.
struct QslBathParams qsl_bath_params_default(void);

// Validates `params` and stores a new handle in `*out`.
//
// # Safety
// `params` must be null or point to a `QslBathParams`; `out` must be null or
// writable.
enum QslStatus qsl_bath_new(const struct QslBathParams *params, struct QslBath **out);

// # Safety
// `bath` must be null or a handle from `qsl_bath_new` not yet freed.
void qsl_bath_free(struct QslBath *bath);

// α(t).
//
// # Safety
// `bath` must be a live handle; `out` must be writable.
enum QslStatus qsl_bath_alpha(const struct QslBath *bath, double t, double *out);

// dα/dt.
//
// # Safety
// `bath` must be a live handle; `out` must be writable.
enum QslStatus qsl_bath_alpha_dot(const struct QslBath *bath, double t, double *out);

// Bounds over `[tau, tau + tau_d]` for the initial Bloch vector `v0`
// (null selects the maximally coherent state).
//
// # Safety
// `bath` must be a live handle, `v0` null or valid, `out` writable.
enum QslStatus qsl_compute(const struct QslBath *bath,
                           const struct QslBloch *v0,
                           double tau,
                           double tau_d,
                           struct QslResult *out);

// Closed-form bound for the maximally coherent initial state.
//
// # Safety
// `bath` must be a live handle; `out` must be writable.
enum QslStatus qsl_closed_form_max_coherent(const struct QslBath *bath,
                                            double tau,
                                            double tau_d,
                                            double *out);

// Sweeps `spec->axis` for the maximally coherent state; `params` supplies
// every other bath parameter (its `kind` is ignored).
//
// # Safety
// `params` and `spec` must be valid; `out` must be writable.
enum QslStatus qsl_scan_new(const struct QslBathParams *params,
                            const struct QslScanSpec *spec,
                            struct QslScan **out);

// Number of rows; 0 for a null handle.
//
// # Safety
// `scan` must be null or a live handle.
size_t qsl_scan_len(const struct QslScan *scan);

// Copies row `index` into `*out`.
//
// # Safety
// `scan` must be a live handle; `out` must be writable.
enum QslStatus qsl_scan_row(const struct QslScan *scan, size_t index, struct QslScanRow *out);

// Error message of a failed row, or null if the row succeeded or does not
// exist. Valid until the scan is freed.
//
// # Safety
// `scan` must be null or a live handle.
const char *qsl_scan_row_error(const struct QslScan *scan, size_t index);

// # Safety
// `scan` must be null or a handle from `qsl_scan_new` not yet freed.
void qsl_scan_free(struct QslScan *scan);

// Message for the last failing call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *qsl_last_error_message(void);

// Static, NUL-terminated name of a status code (a `QslStatus` value).
const char *qsl_status_str(uint32_t status);

// Library version, NUL-terminated.
const char *qsl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSL_H */
