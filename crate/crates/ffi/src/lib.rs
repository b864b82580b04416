//! C ABI over `qsl-core`.
//!
//! Baths and scan tables are opaque heap handles released with their
//! `_free` function. Every call returns a [`QslStatus`]; on failure a
//! description is available from [`qsl_last_error_message`] on the same
//! thread. Enumerations are passed as `uint32_t` so out-of-range values are
//! reported instead of being undefined behaviour.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qsl_core::bath::{BathKind, BathParams, Decay, GammaConvention};
use qsl_core::qsl::{self, QslError, QuadratureControl, ScanAxis, ScanSpec, ScanTable, Window};
use qsl_core::qubit::BlochVector;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    OutOfRange = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslBathKind {
    Fermionic = 0,
    Bosonic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslGammaConvention {
    Half = 0,
    Full = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslScanAxis {
    S = 0,
    Tau = 1,
    B = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslBathSelection {
    Fermionic = 0,
    Bosonic = 1,
    Both = 2,
}

/// Environment parameters. `kind` is a `QslBathKind`, `convention` a
/// `QslGammaConvention`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QslBathParams {
    pub kind: u32,
    pub s: f64,
    pub gamma0: f64,
    pub b_field: f64,
    pub n_sc: f64,
    pub epsilon: f64,
    pub convention: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QslBloch {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QslResult {
    pub ml: f64,
    pub mt: f64,
    pub unified: f64,
    pub f_rel_purity: f64,
    pub alpha_tau: f64,
    pub alpha_target: f64,
    pub ml_denominator: f64,
    pub mt_denominator: f64,
}

/// `axis` is a `QslScanAxis`, `baths` a `QslBathSelection`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QslScanSpec {
    pub axis: u32,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub baths: u32,
    pub tau: f64,
    pub tau_d: f64,
}

/// One scan row. When `status` is not `QSL_STATUS_OK` the result fields are
/// zero and the row's message is available from `qsl_scan_row_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QslScanRow {
    pub value: f64,
    pub kind: u32,
    pub status: QslStatus,
    pub result: QslResult,
}

/// Opaque bath handle.
pub struct QslBath {
    decay: Decay,
}

/// Opaque scan table handle.
pub struct QslScan {
    table: ScanTable,
    errors: Vec<Option<CString>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: QslStatus, msg: impl Into<String>) -> QslStatus {
    set_error(msg);
    status
}

fn status_of(e: &QslError) -> QslStatus {
    if e.is_numerical() {
        QslStatus::Numerical
    } else {
        QslStatus::InvalidArgument
    }
}

fn from_core(e: QslError) -> QslStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning a panic into `QSL_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> QslStatus) -> QslStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(QslStatus::Panic, "internal panic"),
    }
}

fn bath_kind(raw: u32) -> Result<BathKind, QslStatus> {
    match raw {
        0 => Ok(BathKind::Fermionic),
        1 => Ok(BathKind::Bosonic),
        _ => Err(fail(QslStatus::InvalidArgument, format!("unknown bath kind {raw}"))),
    }
}

fn raw_kind(kind: BathKind) -> u32 {
    match kind {
        BathKind::Fermionic => QslBathKind::Fermionic as u32,
        BathKind::Bosonic => QslBathKind::Bosonic as u32,
    }
}

fn to_params(p: &QslBathParams) -> Result<BathParams, QslStatus> {
    let convention = match p.convention {
        0 => GammaConvention::HalfArg,
        1 => GammaConvention::FullArg,
        raw => {
            return Err(fail(
                QslStatus::InvalidArgument,
                format!("unknown gamma convention {raw}"),
            ))
        }
    };
    Ok(BathParams::new(bath_kind(p.kind)?, p.s)
        .with_gamma0(p.gamma0)
        .with_b_field(p.b_field)
        .with_conformal(p.n_sc, p.epsilon)
        .with_convention(convention))
}

fn to_result(r: &qsl::QslResult) -> QslResult {
    QslResult {
        ml: r.ml,
        mt: r.mt,
        unified: r.unified,
        f_rel_purity: r.f_rel_purity,
        alpha_tau: r.alpha_at_tau,
        alpha_target: r.alpha_at_target,
        ml_denominator: r.ml_denominator,
        mt_denominator: r.mt_denominator,
    }
}

macro_rules! deref {
    ($p:expr, $name:literal) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(QslStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

macro_rules! deref_mut {
    ($p:expr, $name:literal) => {
        match unsafe { $p.as_mut() } {
            Some(v) => v,
            None => return fail(QslStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Defaults: fermionic, s = 1, Γ₀ = 1, B = 0, N_sc = 1, ε = 1, half convention.
#[no_mangle]
pub extern "C" fn qsl_bath_params_default() -> QslBathParams {
    QslBathParams {
        kind: QslBathKind::Fermionic as u32,
        s: 1.0,
        gamma0: 1.0,
        b_field: 0.0,
        n_sc: 1.0,
        epsilon: 1.0,
        convention: QslGammaConvention::Half as u32,
    }
}

/// Validates `params` and stores a new handle in `*out`.
///
/// # Safety
/// `params` must be null or point to a `QslBathParams`; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_bath_new(params: *const QslBathParams, out: *mut *mut QslBath) -> QslStatus {
    guard(|| {
        let params = deref!(params, "params");
        let out = deref_mut!(out, "out");
        *out = ptr::null_mut();
        let p = try_status!(to_params(params));
        let decay = try_status!(Decay::new(&p).map_err(|e| from_core(e.into())));
        *out = Box::into_raw(Box::new(QslBath { decay }));
        QslStatus::Ok
    })
}

/// # Safety
/// `bath` must be null or a handle from `qsl_bath_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsl_bath_free(bath: *mut QslBath) {
    if !bath.is_null() {
        drop(unsafe { Box::from_raw(bath) });
    }
}

/// α(t).
///
/// # Safety
/// `bath` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_bath_alpha(bath: *const QslBath, t: f64, out: *mut f64) -> QslStatus {
    guard(|| {
        let bath = deref!(bath, "bath");
        let out = deref_mut!(out, "out");
        *out = try_status!(bath.decay.alpha(t).map_err(|e| from_core(e.into())));
        QslStatus::Ok
    })
}

/// dα/dt.
///
/// # Safety
/// `bath` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_bath_alpha_dot(bath: *const QslBath, t: f64, out: *mut f64) -> QslStatus {
    guard(|| {
        let bath = deref!(bath, "bath");
        let out = deref_mut!(out, "out");
        *out = try_status!(bath.decay.alpha_dot(t).map_err(|e| from_core(e.into())));
        QslStatus::Ok
    })
}

/// Bounds over `[tau, tau + tau_d]` for the initial Bloch vector `v0`
/// (null selects the maximally coherent state).
///
/// # Safety
/// `bath` must be a live handle, `v0` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_compute(
    bath: *const QslBath,
    v0: *const QslBloch,
    tau: f64,
    tau_d: f64,
    out: *mut QslResult,
) -> QslStatus {
    guard(|| {
        let bath = deref!(bath, "bath");
        let out = deref_mut!(out, "out");
        let v0 = match unsafe { v0.as_ref() } {
            Some(v) => BlochVector { x: v.x, y: v.y, z: v.z },
            None => BlochVector::maximally_coherent(),
        };
        let w = try_status!(Window::new(tau, tau_d).map_err(from_core));
        let r = try_status!(
            qsl::qsl_unified(bath.decay.params(), &v0, &w, &QuadratureControl::default()).map_err(from_core)
        );
        *out = to_result(&r);
        QslStatus::Ok
    })
}

/// Closed-form bound for the maximally coherent initial state.
///
/// # Safety
/// `bath` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_closed_form_max_coherent(
    bath: *const QslBath,
    tau: f64,
    tau_d: f64,
    out: *mut f64,
) -> QslStatus {
    guard(|| {
        let bath = deref!(bath, "bath");
        let out = deref_mut!(out, "out");
        let w = try_status!(Window::new(tau, tau_d).map_err(from_core));
        *out = try_status!(
            qsl::qsl_closed_form_max_coherent(bath.decay.params(), &w, &QuadratureControl::default())
                .map_err(from_core)
        );
        QslStatus::Ok
    })
}

/// Sweeps `spec->axis` for the maximally coherent state; `params` supplies
/// every other bath parameter (its `kind` is ignored).
///
/// # Safety
/// `params` and `spec` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_scan_new(
    params: *const QslBathParams,
    spec: *const QslScanSpec,
    out: *mut *mut QslScan,
) -> QslStatus {
    guard(|| {
        let params = deref!(params, "params");
        let spec = deref!(spec, "spec");
        let out = deref_mut!(out, "out");
        *out = ptr::null_mut();
        let template = try_status!(to_params(params));
        let axis = match spec.axis {
            0 => ScanAxis::OhmicS,
            1 => ScanAxis::InitialTau,
            2 => ScanAxis::BField,
            raw => return fail(QslStatus::InvalidArgument, format!("unknown scan axis {raw}")),
        };
        let baths: &[BathKind] = match spec.baths {
            0 => &[BathKind::Fermionic],
            1 => &[BathKind::Bosonic],
            2 => &BathKind::ALL,
            raw => return fail(QslStatus::InvalidArgument, format!("unknown bath selection {raw}")),
        };
        let window = try_status!(Window::new(spec.tau, spec.tau_d).map_err(from_core));
        let scan_spec = ScanSpec {
            axis,
            lo: spec.lo,
            hi: spec.hi,
            points: spec.points,
        };
        let table = try_status!(qsl::scan(
            &template,
            &BlochVector::maximally_coherent(),
            &window,
            &scan_spec,
            baths,
            &QuadratureControl::default(),
        )
        .map_err(from_core));
        let errors = table
            .rows
            .iter()
            .map(|r| {
                r.result
                    .as_ref()
                    .err()
                    .and_then(|e| CString::new(e.to_string().replace('\0', " ")).ok())
            })
            .collect();
        *out = Box::into_raw(Box::new(QslScan { table, errors }));
        QslStatus::Ok
    })
}

/// Number of rows; 0 for a null handle.
///
/// # Safety
/// `scan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_scan_len(scan: *const QslScan) -> usize {
    unsafe { scan.as_ref() }.map_or(0, |s| s.table.rows.len())
}

/// Copies row `index` into `*out`.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsl_scan_row(scan: *const QslScan, index: usize, out: *mut QslScanRow) -> QslStatus {
    guard(|| {
        let scan = deref!(scan, "scan");
        let out = deref_mut!(out, "out");
        let Some(row) = scan.table.rows.get(index) else {
            return fail(
                QslStatus::OutOfRange,
                format!("row {index} of {}", scan.table.rows.len()),
            );
        };
        let (status, result) = match &row.result {
            Ok(r) => (QslStatus::Ok, to_result(r)),
            Err(e) => (status_of(e), QslResult::default()),
        };
        *out = QslScanRow {
            value: row.axis_value,
            kind: raw_kind(row.kind),
            status,
            result,
        };
        QslStatus::Ok
    })
}

/// Error message of a failed row, or null if the row succeeded or does not
/// exist. Valid until the scan is freed.
///
/// # Safety
/// `scan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_scan_row_error(scan: *const QslScan, index: usize) -> *const c_char {
    unsafe { scan.as_ref() }
        .and_then(|s| s.errors.get(index))
        .and_then(|e| e.as_ref())
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `scan` must be null or a handle from `qsl_scan_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsl_scan_free(scan: *mut QslScan) {
    if !scan.is_null() {
        drop(unsafe { Box::from_raw(scan) });
    }
}

/// Message for the last failing call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qsl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static, NUL-terminated name of a status code (a `QslStatus` value).
#[no_mangle]
pub extern "C" fn qsl_status_str(status: u32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"invalid argument",
        3 => c"numerical failure",
        4 => c"index out of range",
        5 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Library version, NUL-terminated.
#[no_mangle]
pub extern "C" fn qsl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
