//! C ABI for `pfsym`.
//!
//! Every fallible call returns a [`PfStatus`]; on failure the message is
//! available from [`pf_last_error`] on the same thread. Objects come back as
//! opaque handles and strings as heap copies; release them with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pfsym::matching::matching_count;
use pfsym::pfaffian::{symbolic_pfaffian, AnyArray, AnyScalar, ArrayFile, Settings};
use pfsym::poly::{rational_to_f64, Poly};
use pfsym::suite::{run_suite, Check, Outcome, SuiteOptions};
use pfsym::symmetry::{symmetry_group_with, ActionMode};
use pfsym::Error;

/// Result codes. `PF_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Schema = 4,
    OddSize = 5,
    CapExceeded = 6,
    WrongMode = 7,
    InvalidArgument = 8,
    Panic = 9,
}

/// A triangular array read from JSON.
pub struct PfArray {
    inner: AnyArray,
}

/// An exact polynomial.
pub struct PfPoly {
    inner: Poly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(PfStatus, String);

fn status_of(e: &Error) -> PfStatus {
    match e {
        Error::Parse(_) | Error::UnnormalizedGenerator(..) | Error::MissingVariable(_) => PfStatus::Parse,
        Error::Schema { .. } => PfStatus::Schema,
        Error::OddSize(_) => PfStatus::OddSize,
        Error::CapExceeded { .. } => PfStatus::CapExceeded,
        Error::WrongMode { .. } | Error::NonNumericKernel(_) => PfStatus::WrongMode,
        _ => PfStatus::InvalidArgument,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            PfStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {message}"));
            PfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

fn settings() -> Settings {
    Settings {
        caps: pfsym::caps::Caps::from_env(),
        parallel: false,
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an array file (`{"two_n": .., "mode": .., "entries": {..}}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_array_from_json(json: *const c_char, out: *mut *mut PfArray) -> PfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner = ArrayFile::parse(text)?;
        write_out(out, Box::into_raw(Box::new(PfArray { inner })), "out")
    })
}

/// # Safety
/// `arr` must come from [`pf_array_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pf_array_free(arr: *mut PfArray) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// Order of the array, or 0 for null.
///
/// # Safety
/// `arr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_array_order(arr: *const PfArray) -> usize {
    arr.as_ref().map_or(0, |a| a.inner.order())
}

unsafe fn scalar_text(
    arr: *const PfArray,
    out: *mut *mut c_char,
    eval: impl FnOnce(&AnyArray) -> pfsym::Result<AnyScalar>,
) -> PfStatus {
    guard(|| {
        let arr = arr.as_ref().ok_or_else(|| null("arr"))?;
        let value = eval(&arr.inner)?;
        write_out(out, into_c_string(value.to_text()), "out")
    })
}

/// Pfaffian as text: a rational, a float, or a polynomial.
///
/// # Safety
/// `arr` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_array_pfaffian(arr: *const PfArray, out: *mut *mut c_char) -> PfStatus {
    scalar_text(arr, out, |a| a.pfaffian(&settings()))
}

/// Pfaffian of a numeric array as a double.
///
/// # Safety
/// `arr` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_array_pfaffian_f64(arr: *const PfArray, out: *mut f64) -> PfStatus {
    guard(|| {
        let arr = arr.as_ref().ok_or_else(|| null("arr"))?;
        let value = match arr.inner.pfaffian(&settings())? {
            AnyScalar::Rational(c) => rational_to_f64(&c),
            AnyScalar::Float(v) => v,
            AnyScalar::Symbolic(_) => {
                return Err(Failure(PfStatus::WrongMode, "array has symbolic entries".into()))
            }
        };
        write_out(out, value, "out")
    })
}

/// Determinant of the completed matrix, as text.
///
/// # Safety
/// `arr` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_array_determinant(arr: *const PfArray, out: *mut *mut c_char) -> PfStatus {
    scalar_text(arr, out, |a| a.determinant())
}

fn new_poly(inner: Poly) -> *mut PfPoly {
    Box::into_raw(Box::new(PfPoly { inner }))
}

/// The generic pfaffian of order `two_n` in generators `a(i,j)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_expand(two_n: usize, out: *mut *mut PfPoly) -> PfStatus {
    guard(|| {
        let p = symbolic_pfaffian(two_n, &settings())?;
        write_out(out, new_poly(p), "out")
    })
}

/// Parses a polynomial such as `"a(1,2)a(3,4) - 2x1^2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_parse(text: *const c_char, out: *mut *mut PfPoly) -> PfStatus {
    guard(|| {
        let p: Poly = read_str(text, "text")?.parse()?;
        write_out(out, new_poly(p), "out")
    })
}

/// Reads a polynomial from its JSON term list.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_from_json(json: *const c_char, out: *mut *mut PfPoly) -> PfStatus {
    guard(|| {
        let p: Poly = serde_json::from_str(read_str(json, "json")?).map_err(Error::from)?;
        write_out(out, new_poly(p), "out")
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_free(p: *mut PfPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Juxtaposed text form, e.g. `a(1,2)a(3,4) - a(1,3)a(2,4) + a(1,4)a(2,3)`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_to_text(p: *const PfPoly, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        write_out(out, into_c_string(p.inner.pretty()), "out")
    })
}

/// JSON term list.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_to_json(p: *const PfPoly, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        let json = serde_json::to_string(&p.inner).map_err(Error::from)?;
        write_out(out, into_c_string(json), "out")
    })
}

/// 1 if equal, 0 if not, -1 if either handle is null.
///
/// # Safety
/// Both arguments must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_equal(a: *const PfPoly, b: *const PfPoly) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(a.inner == b.inner),
        _ => -1,
    }
}

/// Number of terms, or 0 for null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_term_count(p: *const PfPoly) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// `(two_n - 1)!!`, the number of perfect matchings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_matching_count(two_n: usize, out: *mut u64) -> PfStatus {
    guard(|| {
        if two_n % 2 == 1 {
            return Err(Error::OddSize(two_n).into());
        }
        // 35!! no longer fits in 64 bits.
        if two_n > 34 {
            return Err(Failure(PfStatus::CapExceeded, format!("two_n {two_n} overflows the count")));
        }
        write_out(out, matching_count(two_n), "out")
    })
}

/// Brute-force symmetry group of `p` inside `S_m` as JSON
/// (`{"degree", "order", "equals_dihedral", "elements", ...}`). With
/// `skew` nonzero generators satisfy `a(j,i) = -a(i,j)`; with `is_signed`
/// nonzero the group keeps `p -> sign(σ) p` instead of `p -> p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_symmetry_group_json(
    p: *const PfPoly,
    m: usize,
    skew: c_int,
    is_signed: c_int,
    out: *mut *mut c_char,
) -> PfStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        let mode = if skew != 0 {
            ActionMode::SkewGens
        } else {
            ActionMode::SymmetricGens
        };
        let report = symmetry_group_with(&p.inner, m, mode, is_signed != 0, &settings())?;
        let json = serde_json::to_string(&report).map_err(Error::from)?;
        write_out(out, into_c_string(json), "out")
    })
}

/// Runs a named check (or `"all"`) for `n_min..=n_max` and writes a JSON
/// array of reports. A failing check is not an error: `*all_passed` is set
/// to 0 instead. Skipped cases are omitted.
///
/// # Safety
/// `check` must be a NUL-terminated string; `out` and `all_passed` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pf_verify(
    check: *const c_char,
    n_min: usize,
    n_max: usize,
    seed: u64,
    expensive: c_int,
    out: *mut *mut c_char,
    all_passed: *mut c_int,
) -> PfStatus {
    guard(|| {
        let name = read_str(check, "check")?;
        let checks: Vec<Check> = if name == "all" {
            Check::ALL.to_vec()
        } else {
            let check = name
                .parse()
                .map_err(|e: Error| Failure(PfStatus::InvalidArgument, e.to_string()))?;
            vec![check]
        };
        if n_min > n_max {
            return Err(Failure(PfStatus::InvalidArgument, format!("empty range {n_min}..{n_max}")));
        }
        let opts = SuiteOptions {
            seed,
            tol: None,
            expensive: expensive != 0,
            settings: settings(),
        };
        let reports: Vec<_> = run_suite(&checks, n_min..=n_max, &opts)?
            .into_iter()
            .filter_map(|o| match o {
                Outcome::Ran(r) => Some(r),
                Outcome::Skipped { .. } => None,
            })
            .collect();
        let passed = reports.iter().all(|r| r.pass);
        let json = serde_json::to_string(&reports).map_err(Error::from)?;
        write_out(all_passed, c_int::from(passed), "all_passed")?;
        write_out(out, into_c_string(json), "out")
    })
}
