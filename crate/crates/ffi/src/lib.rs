//! C ABI for `lambdadet`.
//!
//! Conventions:
//! - Every fallible function returns an [`LdStatus`]; `LD_STATUS_OK` is 0.
//! - Results come back through out-pointers. Strings returned this way are
//!   owned by the caller and must be released with [`ld_string_free`].
//! - Handles ([`LdMatrix`], [`LdCoeffs`]) are opaque and released with their
//!   `_free` function. Passing NULL to a `_free` function is a no-op.
//! - On failure a description is kept per thread and read with
//!   [`ld_last_error`].
//! - Rational numbers cross the boundary as strings `"p/q"` or `"p"`.

use lambdadet::asm6v::count_asm;
use lambdadet::exact::{Matrix, Rational};
use lambdadet::lambdadet::{cross_check, symbolic_lambda_det, Method};
use lambdadet::tsystem::{full_range, CoeffWindow};
use lambdadet::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    ZeroDivision = 4,
    WindowTooSmall = 5,
    CapExceeded = 6,
    NotAsm = 7,
    Mismatch = 8,
    Algebra = 9,
    Io = 10,
    Panic = 11,
}

/// Evaluation methods for [`ld_compute`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LdMethod {
    Dodgson = 0,
    Tsystem = 1,
    Asm = 2,
    Statistics = 3,
    Lgv = 4,
}

impl From<LdMethod> for Method {
    fn from(m: LdMethod) -> Self {
        match m {
            LdMethod::Dodgson => Method::Dodgson,
            LdMethod::Tsystem => Method::Tsystem,
            LdMethod::Asm => Method::Asm,
            LdMethod::Statistics => Method::Statistics,
            LdMethod::Lgv => Method::Lgv,
        }
    }
}

/// Square matrix of rationals.
pub struct LdMatrix(Matrix<Rational>);

/// Coefficient sequences `λ_a`, `μ_b` on a finite window.
pub struct LdCoeffs(CoeffWindow<Rational>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LdStatus {
    match e {
        Error::DivisionByZero | Error::ZeroDivision(_) | Error::ZeroFaceLabel(..) | Error::ZeroEntryAtMinus(..) => {
            LdStatus::ZeroDivision
        }
        Error::WindowMiss { .. } | Error::WindowTooSmall { .. } => LdStatus::WindowTooSmall,
        Error::CapExceeded { .. } => LdStatus::CapExceeded,
        Error::NotAsm { .. } | Error::InvalidGrid(_) | Error::UnclassifiableTriangle(..) => LdStatus::NotAsm,
        Error::Mismatch { .. } | Error::OrderDependence(_) => LdStatus::Mismatch,
        Error::Parse(_) | Error::Schema { .. } => LdStatus::Parse,
        Error::Io(_) => LdStatus::Io,
        Error::NonMonomialDivisor(_)
        | Error::InexactDivision(_)
        | Error::VariableMismatch
        | Error::ZeroAtNegativeExponent(_)
        | Error::UnassignedVariable(_)
        | Error::UnknownVariable(_) => LdStatus::Algebra,
        Error::InvalidArgument(_) => LdStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (LdStatus, String)>) -> LdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LdStatus::Panic
        }
    }
}

fn lib<T>(r: lambdadet::Result<T>) -> Result<T, (LdStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LdStatus, String) {
    (LdStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (LdStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (LdStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn read_rational(s: *const c_char, what: &str) -> Result<Rational, (LdStatus, String)> {
    lib(read_str(s, what)?.trim().parse())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (LdStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (LdStatus::InvalidArgument, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, v: T) -> Result<(), (LdStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (LdStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ld_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread; valid until the next failing
/// call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn ld_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `n × n` zero matrix.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_new(n: usize, out: *mut *mut LdMatrix) -> LdStatus {
    guard(|| write_handle(out, LdMatrix(Matrix::zeros(&Rational::zero(), n, n))))
}

/// Matrix from JSON `{"n": N, "entries": [[...]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_from_json(json: *const c_char, out: *mut *mut LdMatrix) -> LdStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let v = serde_json::from_str(text).map_err(|e| (LdStatus::Parse, e.to_string()))?;
        let m = lib(lambdadet::cli::parse_matrix(&v))?;
        write_handle(out, LdMatrix(m))
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_free(m: *mut LdMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of rows, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_size(m: *const LdMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Sets entry `(i, j)` (0-based) from a rational string.
///
/// # Safety
/// `m` must be a live handle and `value` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_set(m: *mut LdMatrix, i: usize, j: usize, value: *const c_char) -> LdStatus {
    guard(|| {
        let m = m.as_mut().ok_or_else(|| null("matrix"))?;
        let n = m.0.rows();
        if i >= n || j >= n {
            return Err((LdStatus::InvalidArgument, format!("index ({i},{j}) outside {n}x{n}")));
        }
        let v = read_rational(value, "value")?;
        m.0.set(i, j, v);
        Ok(())
    })
}

/// Entry `(i, j)` (0-based) as a newly allocated string.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_matrix_get(m: *const LdMatrix, i: usize, j: usize, out: *mut *mut c_char) -> LdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        let n = m.0.rows();
        if i >= n || j >= n {
            return Err((LdStatus::InvalidArgument, format!("index ({i},{j}) outside {n}x{n}")));
        }
        write_string(out, m.0.get(i, j).to_string())
    })
}

/// Constant coefficients on `[1−n, n−1]`.
///
/// # Safety
/// String arguments must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_coeffs_homogeneous(
    n: usize,
    lambda: *const c_char,
    mu: *const c_char,
    out: *mut *mut LdCoeffs,
) -> LdStatus {
    guard(|| {
        let l = read_rational(lambda, "lambda")?;
        let m = read_rational(mu, "mu")?;
        write_handle(out, LdCoeffs(lib(CoeffWindow::homogeneous(n, l, m))?))
    })
}

/// `λ_a = μ_a = q^a` on `[1−n, n−1]`.
///
/// # Safety
/// `q` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_coeffs_q_power(n: usize, q: *const c_char, out: *mut *mut LdCoeffs) -> LdStatus {
    guard(|| {
        let q = read_rational(q, "q")?;
        write_handle(out, LdCoeffs(lib(CoeffWindow::q_power(full_range(n), &q))?))
    })
}

/// Coefficients from JSON `{"lambda": {"-1": "1/2", ...}, "mu": {...}}`.
///
/// # Safety
/// `json` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_coeffs_from_json(json: *const c_char, out: *mut *mut LdCoeffs) -> LdStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let v = serde_json::from_str(text).map_err(|e| (LdStatus::Parse, e.to_string()))?;
        write_handle(out, LdCoeffs(lib(lambdadet::cli::parse_coeffs(&v))?))
    })
}

/// # Safety
/// `c` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ld_coeffs_free(c: *mut LdCoeffs) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Lambda-determinant by one method, as a newly allocated rational string.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_compute(
    m: *const LdMatrix,
    c: *const LdCoeffs,
    method: LdMethod,
    out: *mut *mut c_char,
) -> LdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        let c = borrow(c, "coefficients")?;
        let v = lib(Method::from(method).evaluate(&m.0, &c.0))?;
        write_string(out, v.to_string())
    })
}

/// Runs all five methods and writes the report as JSON (no timings).
/// Returns `LD_STATUS_MISMATCH` when methods disagree or fail; the report is
/// written either way.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_cross_check_json(
    m: *const LdMatrix,
    c: *const LdCoeffs,
    out: *mut *mut c_char,
) -> LdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        let c = borrow(c, "coefficients")?;
        let rep = cross_check(&m.0, &c.0, &Method::ALL).without_timings();
        let json = serde_json::to_string(&rep).map_err(|e| (LdStatus::Io, e.to_string()))?;
        write_string(out, json)?;
        if rep.passed() {
            Ok(())
        } else {
            Err((LdStatus::Mismatch, "methods disagree or failed".into()))
        }
    })
}

/// Number of `n × n` alternating sign matrices, by enumeration.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_asm_count(n: usize, out: *mut usize) -> LdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = lib(count_asm(n))?;
        Ok(())
    })
}

/// Generic Lambda-determinant of size `n` as Laurent-polynomial JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_symbolic_json(n: usize, allow_large: bool, out: *mut *mut c_char) -> LdStatus {
    guard(|| {
        let (_, poly) = lib(symbolic_lambda_det(n, allow_large))?;
        let json = serde_json::to_string(&poly).map_err(|e| (LdStatus::Io, e.to_string()))?;
        write_string(out, json)
    })
}
