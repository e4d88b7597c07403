//! C ABI over `astar-dehn`.
//!
//! Every fallible function returns an [`AdStatus`]; on failure a description
//! is available from [`ad_last_error_message`] on the same thread. Objects are
//! opaque handles created by `*_new`/`ad_solve` and released by the matching
//! `*_free`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use astar_dehn::shapes::shapes_from_params;
use astar_dehn::surgery::filling_from_param;
use astar_dehn::{
    lobachevsky, volume, Cplx, Filling, FillingSolver, ParamPoint, PathSpec, ShapeVector, Side,
    SolveResult, SurgeryError,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Cplx> for AdComplex {
    fn from(z: Cplx) -> Self {
        AdComplex { re: z.re, im: z.im }
    }
}

impl From<AdComplex> for Cplx {
    fn from(z: AdComplex) -> Self {
        Cplx::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DegenerateShape = 3,
    NoConvergence = 4,
    DegenerateJacobian = 5,
    StepCollapse = 6,
    SingularSystem = 7,
    NotPrimitive = 8,
    DegenerateTriangle = 9,
    OutOfRange = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdSide {
    Alpha = 0,
    Beta = 1,
}

impl From<AdSide> for Side {
    fn from(s: AdSide) -> Self {
        match s {
            AdSide::Alpha => Side::Alpha,
            AdSide::Beta => Side::Beta,
        }
    }
}

/// Shapes of the eight simplices at one parameter point.
pub struct AdShapes(ShapeVector);

/// Result of one Newton solve.
pub struct AdSolution(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &SurgeryError) -> AdStatus {
    match e {
        SurgeryError::DegenerateShape(_) => AdStatus::DegenerateShape,
        SurgeryError::NoConvergence { .. } => AdStatus::NoConvergence,
        SurgeryError::DegenerateJacobian(_) => AdStatus::DegenerateJacobian,
        SurgeryError::StepCollapse { .. } => AdStatus::StepCollapse,
        SurgeryError::SingularSystem(_) => AdStatus::SingularSystem,
        SurgeryError::NotPrimitive { .. } => AdStatus::NotPrimitive,
        SurgeryError::DegenerateTriangle(_) => AdStatus::DegenerateTriangle,
        SurgeryError::InvalidInput(_) => AdStatus::InvalidInput,
    }
}

fn fail(status: AdStatus, msg: impl Into<String>) -> AdStatus {
    set_error(msg.into());
    status
}

/// Run `f`, turning errors and panics into status codes.
fn guard<F>(f: F) -> AdStatus
where
    F: FnOnce() -> Result<(), (AdStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AdStatus::Ok
        }
        Ok(Err((s, msg))) => fail(s, msg),
        Err(_) => fail(AdStatus::Panic, "internal panic"),
    }
}

fn lift(e: SurgeryError) -> (AdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (AdStatus, String) {
    (AdStatus::NullPointer, "null pointer argument".to_string())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ad_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `Λ(θ)`. NaN for non-finite input.
#[no_mangle]
pub extern "C" fn ad_lobachevsky(theta: f64) -> f64 {
    catch_unwind(|| lobachevsky(theta)).unwrap_or(f64::NAN)
}

/// Build the shapes at `(alpha, beta)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ad_shapes_new(
    alpha: AdComplex,
    beta: AdComplex,
    out: *mut *mut AdShapes,
) -> AdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = ParamPoint::new(alpha.into(), beta.into()).map_err(lift)?;
        let s = shapes_from_params(&p).map_err(lift)?;
        *out = Box::into_raw(Box::new(AdShapes(s)));
        Ok(())
    })
}

/// Shape of simplex `index`, in the order z1, z2, z3, z4, w1, w2, w3, w4.
///
/// # Safety
/// `h` must come from [`ad_shapes_new`] and not be freed; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_shapes_get(
    h: *const AdShapes,
    index: usize,
    out: *mut AdComplex,
) -> AdStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return Err(null());
        }
        let arr = (*h).0.as_array();
        let s = arr.get(index).ok_or((
            AdStatus::OutOfRange,
            format!("simplex index {index} not in 0..8"),
        ))?;
        *out = s.z().into();
        Ok(())
    })
}

/// Signed hyperbolic volume of the eight simplices.
///
/// # Safety
/// `h` must come from [`ad_shapes_new`] and not be freed; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_shapes_volume(h: *const AdShapes, out: *mut f64) -> AdStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return Err(null());
        }
        *out = volume(&(*h).0);
        Ok(())
    })
}

/// # Safety
/// `h` must be null or come from [`ad_shapes_new`]; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ad_shapes_free(h: *mut AdShapes) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Solve the `(p, q)` filling equation on one side. `tol <= 0` selects the
/// default tolerance.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ad_solve(
    side: AdSide,
    p: f64,
    q: f64,
    tol: f64,
    out: *mut *mut AdSolution,
) -> AdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let solver = if tol > 0.0 {
            FillingSolver::with_tol(tol)
        } else {
            FillingSolver::default()
        };
        let f = Filling::coeffs(p, q).map_err(lift)?;
        let r = solver.solve(&f, side.into(), None, None).map_err(lift)?;
        *out = Box::into_raw(Box::new(AdSolution(r)));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`ad_solve`] and not be freed; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_solution_param(h: *const AdSolution, out: *mut AdComplex) -> AdStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return Err(null());
        }
        *out = (*h).0.param.into();
        Ok(())
    })
}

/// Continued logarithms of meridian (`u`) and longitude (`v`).
///
/// # Safety
/// `h` must come from [`ad_solve`] and not be freed; `u` and `v` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_solution_logs(
    h: *const AdSolution,
    u: *mut AdComplex,
    v: *mut AdComplex,
) -> AdStatus {
    guard(|| {
        if h.is_null() || u.is_null() || v.is_null() {
            return Err(null());
        }
        let lh = &(*h).0.log_hol;
        *u = lh.u.into();
        *v = lh.v.into();
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`ad_solve`] and not be freed; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_solution_stats(
    h: *const AdSolution,
    residual: *mut f64,
    iterations: *mut usize,
) -> AdStatus {
    guard(|| {
        if h.is_null() || residual.is_null() || iterations.is_null() {
            return Err(null());
        }
        *residual = (*h).0.residual;
        *iterations = (*h).0.iterations;
        Ok(())
    })
}

/// # Safety
/// `h` must be null or come from [`ad_solve`]; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ad_solution_free(h: *mut AdSolution) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Real `(p, q)` with `p u + q v = 2πi` at `x`, continuing along the straight
/// path (with detours) from the complete structure.
///
/// # Safety
/// `p` and `q` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_filling_from_param(
    side: AdSide,
    x: AdComplex,
    p: *mut f64,
    q: *mut f64,
) -> AdStatus {
    guard(|| {
        if p.is_null() || q.is_null() {
            return Err(null());
        }
        let x: Cplx = x.into();
        let path = PathSpec::straight(x).map_err(lift)?;
        let f = filling_from_param(x, side.into(), &path).map_err(lift)?;
        *p = f.p;
        *q = f.q;
        Ok(())
    })
}
