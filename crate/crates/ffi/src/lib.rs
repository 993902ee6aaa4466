//! C ABI over `wfscope`.
//!
//! Every entry point returns a [`WfsStatus`]; on failure the message is kept
//! per thread and read with [`wfs_last_error_message`]. Handles are opaque and
//! owned by the caller, who releases them with the matching `_free` function.
//! Signals are passed as JSON objects in the `SignalSpec` layout, for example
//! `{"kind":"heaviside_gaussian","jump_point":0.5,"width":1.0}`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use wfscope::detector::{classify, decay_profile_of, fit_order, DetectionConfig};
use wfscope::grid::{Grid1D, SampledField};
use wfscope::hamflow::{backward_endpoint, default_steps, exact_ho_flow, PhasePoint, Potential};
use wfscope::propagator::{PropagatorConfig, Scheme};
use wfscope::signal::{sample, SignalSpec};
use wfscope::window::{scaled_window, WindowBase, WindowInstance, WindowSpec};
use wfscope::window_dynamics::{evolve_gaussian_window, WindowCache};
use wfscope::wpt::{wpt_point, wpt_point_with, FieldRef, QuadratureOptions};
use wfscope::WfError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WfsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGrid = 3,
    Coverage = 4,
    Resolution = 5,
    Divergence = 6,
    Domain = 7,
    DegenerateFit = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WfsVerdict {
    Singular = 0,
    Smooth = 1,
    Indeterminate = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WfsScheme {
    StrangSplit = 0,
    MehlerExact = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WfsComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for WfsComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WfsPhasePoint {
    pub x: f64,
    pub xi: f64,
}

impl From<PhasePoint> for WfsPhasePoint {
    fn from(p: PhasePoint) -> Self {
        Self { x: p.x, xi: p.xi }
    }
}

/// Sampled field on a uniform periodic grid.
pub struct WfsField(SampledField);

/// Analysis window, possibly scaled and evolved.
pub struct WfsWindow(WindowInstance);

/// Perturbation `v(x)` of the harmonic oscillator.
pub struct WfsPotential(Potential);

type Failure = (WfsStatus, String);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &WfError) -> WfsStatus {
    match e {
        WfError::InvalidGrid(_) | WfError::GridMismatch(_) => WfsStatus::InvalidGrid,
        WfError::Coverage { .. } | WfError::DomainTooSmall { .. } => WfsStatus::Coverage,
        WfError::Resolution(_) => WfsStatus::Resolution,
        WfError::Divergence { .. } | WfError::NonFinite { .. } | WfError::BranchTracking { .. } => {
            WfsStatus::Divergence
        }
        WfError::Domain(_) | WfError::OrthogonalWindows(_) => WfsStatus::Domain,
        WfError::DegenerateFit(_) => WfsStatus::DegenerateFit,
        WfError::Config(_) => WfsStatus::InvalidArgument,
    }
}

fn fail(e: WfError) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (WfsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WfsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            WfsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            WfsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

unsafe fn parse_signal(json: *const c_char) -> Result<SignalSpec, Failure> {
    if json.is_null() {
        return Err(null("signal json"));
    }
    let text = CStr::from_ptr(json).to_str().map_err(|e| {
        (
            WfsStatus::InvalidArgument,
            format!("signal json is not utf-8: {e}"),
        )
    })?;
    let spec: SignalSpec = serde_json::from_str(text).map_err(|e| {
        (
            WfsStatus::InvalidArgument,
            format!("invalid signal json: {e}"),
        )
    })?;
    spec.validate().map_err(fail)?;
    Ok(spec)
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wfs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wfs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies `n` samples on `[x_min, x_max)` into a new field.
///
/// # Safety
/// `values` must point to `n` readable elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_field_from_samples(
    x_min: f64,
    x_max: f64,
    n: usize,
    values: *const WfsComplex,
    out: *mut *mut WfsField,
) -> WfsStatus {
    guard(|| {
        let grid = Grid1D::new(x_min, x_max, n).map_err(fail)?;
        let v = slice(values, n, "values")?
            .iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect();
        let field = SampledField::new(grid, v).map_err(fail)?;
        store(out, WfsField(field))
    })
}

/// Samples a JSON-described signal on `n` points of `[x_min, x_max)`.
///
/// # Safety
/// `signal_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_field_sample_signal(
    signal_json: *const c_char,
    x_min: f64,
    x_max: f64,
    n: usize,
    out: *mut *mut WfsField,
) -> WfsStatus {
    guard(|| {
        let spec = parse_signal(signal_json)?;
        let grid = Grid1D::new(x_min, x_max, n).map_err(fail)?;
        store(out, WfsField(sample(&spec, &grid).map_err(fail)?))
    })
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wfs_field_len(field: *const WfsField) -> usize {
    field.as_ref().map_or(0, |f| f.0.values().len())
}

/// Copies the samples into `out`, which holds `len` elements.
///
/// # Safety
/// `field` must be a live handle and `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn wfs_field_values(
    field: *const WfsField,
    out: *mut WfsComplex,
    len: usize,
) -> WfsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let v = f.0.values();
        if len < v.len() {
            return Err((
                WfsStatus::InvalidArgument,
                format!("buffer holds {len} values, field has {}", v.len()),
            ));
        }
        if out.is_null() {
            return Err(null("output buffer"));
        }
        for (i, z) in v.iter().enumerate() {
            *out.add(i) = (*z).into();
        }
        Ok(())
    })
}

/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wfs_field_free(field: *mut WfsField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// `φ_{0,λ}` for the Gaussian `exp(−a₀x²/2)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_window_gaussian(
    b: f64,
    lambda: f64,
    a0: WfsComplex,
    out: *mut *mut WfsWindow,
) -> WfsStatus {
    guard(|| {
        let spec = WindowSpec {
            base: WindowBase::Gaussian {
                a0: Complex64::new(a0.re, a0.im),
            },
            b,
        };
        store(out, WfsWindow(scaled_window(&spec, lambda).map_err(fail)?))
    })
}

/// `φ_{0,λ}` for the first Hermite function `x exp(−x²/2)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_window_hermite1(
    b: f64,
    lambda: f64,
    out: *mut *mut WfsWindow,
) -> WfsStatus {
    guard(|| {
        let w = scaled_window(&WindowSpec::hermite1(b), lambda).map_err(fail)?;
        store(out, WfsWindow(w))
    })
}

/// Free harmonic-oscillator evolution of a closed-form window by `t`.
///
/// # Safety
/// `window` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_window_evolve(
    window: *const WfsWindow,
    t: f64,
    out: *mut *mut WfsWindow,
) -> WfsStatus {
    guard(|| {
        let w = deref(window, "window")?;
        store(
            out,
            WfsWindow(evolve_gaussian_window(&w.0, t).map_err(fail)?),
        )
    })
}

/// `φ(z)`.
///
/// # Safety
/// `window` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_window_eval(
    window: *const WfsWindow,
    z: f64,
    out: *mut WfsComplex,
) -> WfsStatus {
    guard(|| {
        let w = deref(window, "window")?;
        write(out, w.0.eval(z).into())
    })
}

/// # Safety
/// `window` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wfs_window_free(window: *mut WfsWindow) {
    if !window.is_null() {
        drop(Box::from_raw(window));
    }
}

/// `W_φ f(x, ξ)` for sampled data.
///
/// # Safety
/// `field` and `window` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_wpt_point_field(
    field: *const WfsField,
    window: *const WfsWindow,
    x: f64,
    xi: f64,
    out: *mut WfsComplex,
) -> WfsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let w = deref(window, "window")?;
        let v = wpt_point(FieldRef::Sampled(&f.0), &w.0, x, xi).map_err(fail)?;
        write(out, v.into())
    })
}

/// `W_φ f(x, ξ)` for a JSON-described signal, by adaptive quadrature.
///
/// # Safety
/// `signal_json` must be a NUL-terminated string, `window` a live handle and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_wpt_point_signal(
    signal_json: *const c_char,
    window: *const WfsWindow,
    x: f64,
    xi: f64,
    out: *mut WfsComplex,
) -> WfsStatus {
    guard(|| {
        let spec = parse_signal(signal_json)?;
        let w = deref(window, "window")?;
        let v = wpt_point(FieldRef::Analytic(&spec), &w.0, x, xi).map_err(fail)?;
        write(out, v.into())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_potential_zero(out: *mut *mut WfsPotential) -> WfsStatus {
    guard(|| store(out, WfsPotential(Potential::zero())))
}

/// `c (1 + x²)^{ρ/2}` with `0 ≤ ρ < 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_potential_power(
    coefficient: f64,
    exponent: f64,
    out: *mut *mut WfsPotential,
) -> WfsStatus {
    guard(|| {
        let p = Potential::power(coefficient, exponent).map_err(fail)?;
        store(out, WfsPotential(p))
    })
}

/// `a √(x² + ε²)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_potential_smoothed_abs(
    coefficient: f64,
    epsilon: f64,
    out: *mut *mut WfsPotential,
) -> WfsStatus {
    guard(|| {
        let p = Potential::smoothed_abs(coefficient, epsilon).map_err(fail)?;
        store(out, WfsPotential(p))
    })
}

/// # Safety
/// `pot` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wfs_potential_free(pot: *mut WfsPotential) {
    if !pot.is_null() {
        drop(Box::from_raw(pot));
    }
}

/// Unperturbed flow from `p` at time `t0` to time `s`.
#[no_mangle]
pub extern "C" fn wfs_exact_ho_flow(t0: f64, s: f64, p: WfsPhasePoint) -> WfsPhasePoint {
    exact_ho_flow(t0, s, PhasePoint::new(p.x, p.xi)).into()
}

/// State at time 0 of the flow through `(x, λξ)` at `t0`. `n_steps = 0`
/// picks the default resolution.
///
/// # Safety
/// `pot` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_backward_endpoint(
    pot: *const WfsPotential,
    t0: f64,
    x: f64,
    xi: f64,
    lambda: f64,
    n_steps: usize,
    out: *mut WfsPhasePoint,
) -> WfsStatus {
    guard(|| {
        let v = deref(pot, "potential")?;
        let steps = if n_steps == 0 {
            default_steps(t0)
        } else {
            n_steps
        };
        let end = backward_endpoint(&v.0, t0, x, xi, lambda, steps).map_err(fail)?;
        write(out, end.into())
    })
}

/// Solution at `t1` of the perturbed oscillator started from `field` at `t0`,
/// on the field's own grid.
///
/// # Safety
/// `field` and `pot` must be live handles, `scheme` one of the declared
/// values and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_evolve(
    field: *const WfsField,
    pot: *const WfsPotential,
    t0: f64,
    t1: f64,
    dt: f64,
    scheme: WfsScheme,
    out: *mut *mut WfsField,
) -> WfsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let v = deref(pot, "potential")?;
        let cfg = PropagatorConfig {
            grid: *f.0.grid(),
            dt,
            scheme: match scheme {
                WfsScheme::StrangSplit => Scheme::StrangSplit,
                WfsScheme::MehlerExact => Scheme::MehlerExact,
            },
        };
        let u = cfg.evolve(&f.0, &v.0, t0, t1).map_err(fail)?;
        store(out, WfsField(u))
    })
}

/// Decay order of `sup ≈ C λ^{−N}` from the upper half of the schedule.
///
/// # Safety
/// `lambdas` and `sups` must hold `n` values; `order` and `residual` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_fit_order(
    lambdas: *const f64,
    sups: *const f64,
    n: usize,
    order: *mut f64,
    residual: *mut f64,
) -> WfsStatus {
    guard(|| {
        let l = slice(lambdas, n, "lambdas")?;
        let s = slice(sups, n, "sups")?;
        let (o, r, _) = fit_order(l, s).map_err(fail)?;
        write(order, o)?;
        write(residual, r)
    })
}

/// Verdict for `(x0, ξ0)` with a Gaussian window and the default detector
/// settings capped at `lambda_max`. With a null `pot` the data itself is
/// scanned; otherwise the solution at `t0` is.
///
/// # Safety
/// `signal_json` must be a NUL-terminated string, `pot` null or a live handle,
/// `verdict` and `order` writable.
#[no_mangle]
pub unsafe extern "C" fn wfs_detect_point(
    signal_json: *const c_char,
    b: f64,
    lambda_max: f64,
    pot: *const WfsPotential,
    t0: f64,
    x0: f64,
    xi0: f64,
    verdict: *mut WfsVerdict,
    order: *mut f64,
) -> WfsStatus {
    guard(|| {
        let spec = parse_signal(signal_json)?;
        let cfg = DetectionConfig::new(b).with_lambda_max(lambda_max);
        let wspec = WindowSpec::gaussian(b);
        let p = PhasePoint::new(x0, xi0);
        let profile = match pot.as_ref() {
            None => {
                cfg.validate().map_err(fail)?;
                decay_profile_of(&spec, &wspec, p, &cfg).map_err(fail)?
            }
            Some(v) => {
                cfg.validate_for_rho(v.0.rho()).map_err(fail)?;
                let cache = WindowCache::new(wspec, None).map_err(fail)?;
                let steps = default_steps(t0);
                let opts = QuadratureOptions::default();
                wfscope::detector::profile_from(p, &cfg, |lambda, x, xi| {
                    let w = cache.get(lambda, -t0)?;
                    let end = backward_endpoint(&v.0, t0, x, xi, lambda, steps)?;
                    wpt_point_with(FieldRef::Analytic(&spec), &w, end.x, end.xi, &opts)
                })
                .map_err(fail)?
            }
        };
        let v = match classify(profile.fitted_order, &cfg) {
            wfscope::detector::Verdict::Singular => WfsVerdict::Singular,
            wfscope::detector::Verdict::Smooth => WfsVerdict::Smooth,
            wfscope::detector::Verdict::Indeterminate => WfsVerdict::Indeterminate,
        };
        write(verdict, v)?;
        write(order, profile.fitted_order)
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(wfs_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn errors_set_message_and_success_clears_it() {
        let mut w = ptr::null_mut();
        let s = unsafe { wfs_window_gaussian(0.3, 0.5, WfsComplex { re: 1.0, im: 0.0 }, &mut w) };
        assert_ne!(s, WfsStatus::Ok);
        assert!(w.is_null());
        assert!(!last_error().is_empty());
        let s = unsafe { wfs_window_gaussian(0.3, 2.0, WfsComplex { re: 1.0, im: 0.0 }, &mut w) };
        assert_eq!(s, WfsStatus::Ok);
        assert!(last_error().is_empty());
        unsafe { wfs_window_free(w) };
    }

    #[test]
    fn panics_are_caught() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, WfsStatus::Panic);
        assert_eq!(last_error(), "panic: boom");
    }

    #[test]
    fn null_output_is_reported() {
        let s = unsafe { wfs_potential_zero(ptr::null_mut()) };
        assert_eq!(s, WfsStatus::NullPointer);
    }

    #[test]
    fn status_mapping() {
        assert_eq!(
            status_of(&WfError::Divergence {
                step: 1,
                x: 0.0,
                xi: 0.0
            }),
            WfsStatus::Divergence
        );
        assert_eq!(
            status_of(&WfError::Config("x".into())),
            WfsStatus::InvalidArgument
        );
    }
}
