//! C ABI over `nhmf`.
//!
//! Forms are opaque heap handles (`NhmfForm *`), released with
//! [`nhmf_form_free`]. Strings returned through `char **out` are owned by the
//! caller and released with [`nhmf_string_free`]. Every fallible call returns
//! an [`NhmfStatus`]; on failure [`nhmf_last_error`] describes what went wrong
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nhmf::json::{decomposition_to_json, form_from_json, form_to_json};
use nhmf::qseries::format_rational;
use nhmf::{Complex64, Error, NearlyForm};

/// Status codes; the nonzero library errors match the command line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NhmfStatus {
    Ok = 0,
    Structural = 1,
    TruncationTooSmall = 2,
    Parse = 3,
    NotInSpace = 4,
    Domain = 5,
    /// Null pointer or invalid UTF-8 argument.
    InvalidArgument = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// Opaque nearly holomorphic form.
pub struct NhmfForm(NearlyForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> NhmfStatus {
    match err {
        Error::TruncationTooSmall { .. } => NhmfStatus::TruncationTooSmall,
        Error::Parse(_) => NhmfStatus::Parse,
        Error::NotInSpace(_) => NhmfStatus::NotInSpace,
        Error::Domain(_) => NhmfStatus::Domain,
        Error::Structural(_) => NhmfStatus::Structural,
    }
}

enum Failure {
    Lib(Error),
    Arg(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NhmfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            NhmfStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Arg(msg))) => {
            set_last_error(msg);
            NhmfStatus::InvalidArgument
        }
        Err(_) => {
            set_last_error("internal panic");
            NhmfStatus::Internal
        }
    }
}

unsafe fn form_ref<'a>(f: *const NhmfForm) -> Result<&'a NearlyForm, Failure> {
    f.as_ref()
        .map(|f| &f.0)
        .ok_or(Failure::Arg("null form handle"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Arg("null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Arg("string argument is not UTF-8"))
}

unsafe fn put_form(out: *mut *mut NhmfForm, f: NearlyForm) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("null output pointer"));
    }
    *out = Box::into_raw(Box::new(NhmfForm(f)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("null output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Failure::Arg("interior NUL"))?
        .into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn nhmf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library (or be null).
#[no_mangle]
pub unsafe extern "C" fn nhmf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `f` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_free(f: *mut NhmfForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Parse a form document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_from_json(
    json: *const c_char,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, form_from_json(text(json)?)?))
}

/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_to_json(
    f: *const NhmfForm,
    out: *mut *mut c_char,
) -> NhmfStatus {
    guard(|| put_string(out, form_to_json(form_ref(f)?)))
}

/// `one`, `e2`, `e2star`, `delta` or `e<k>`, truncated at `q^truncation`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_named(
    name: *const c_char,
    truncation: usize,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, nhmf::named_form(text(name)?, truncation)?))
}

/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_raise(
    f: *const NhmfForm,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, form_ref(f)?.raise()))
}

/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_lower(
    f: *const NhmfForm,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, form_ref(f)?.lower()))
}

/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_casimir(
    f: *const NhmfForm,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, form_ref(f)?.casimir()))
}

/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_mul(
    a: *const NhmfForm,
    b: *const NhmfForm,
    out: *mut *mut NhmfForm,
) -> NhmfStatus {
    guard(|| put_form(out, form_ref(a)?.mul(form_ref(b)?)))
}

/// Weight of `f`; 0 for a null handle.
///
/// # Safety
/// `f` is a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_weight(f: *const NhmfForm) -> i64 {
    f.as_ref().map_or(0, |f| f.0.weight())
}

/// X-degree of `f`, -1 for the zero form or a null handle.
///
/// # Safety
/// `f` is a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_degree(f: *const NhmfForm) -> i64 {
    f.as_ref().map_or(-1, |f| f.0.degree())
}

/// Double-precision value at `tau = re + i im`.
///
/// # Safety
/// `f` is a live handle; `out_re`, `out_im` are writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_form_evaluate(
    f: *const NhmfForm,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> NhmfStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(Failure::Arg("null output pointer"));
        }
        let v = form_ref(f)?.evaluate(Complex64::new(re, im))?;
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}

/// Decomposition document of `f` in `N_k^degree` (or its cusp forms).
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_decompose_json(
    f: *const NhmfForm,
    degree: usize,
    cuspidal: bool,
    out: *mut *mut c_char,
) -> NhmfStatus {
    guard(|| {
        let f = form_ref(f)?;
        let d = if cuspidal {
            nhmf::decompose_cuspidal(f, degree)?
        } else {
            nhmf::decompose(f, degree)?
        };
        put_string(out, decomposition_to_json(&d))
    })
}

#[no_mangle]
pub extern "C" fn nhmf_dim_n(k: i64, p: usize) -> usize {
    nhmf::dim_n(k, p)
}

/// Ladder constant `c_{k,v}` as a rational string.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_petersson_constant(
    k: i64,
    v: usize,
    out: *mut *mut c_char,
) -> NhmfStatus {
    guard(|| put_string(out, format_rational(&nhmf::petersson_constant(k, v)?)))
}

/// JSON report on the truncated Verma module `N(lambda)`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_verma_report_json(
    lambda: i64,
    depth: usize,
    out: *mut *mut c_char,
) -> NhmfStatus {
    guard(|| {
        put_string(
            out,
            serde_json::to_string(&nhmf::verma_report(lambda, depth)).expect("serializable"),
        )
    })
}

/// JSON report on the module generated by `E2*`; `Structural` if it does not
/// match the dual Verma module (the report is still written).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nhmf_e2_module_report_json(
    depth: usize,
    out: *mut *mut c_char,
) -> NhmfStatus {
    guard(|| {
        let report = nhmf::e2_module_structure(depth)?;
        put_string(out, serde_json::to_string(&report).expect("serializable"))?;
        if report.is_match() {
            Ok(())
        } else {
            Err(Error::Structural("E2* module does not match N(0)^dual".into()).into())
        }
    })
}
