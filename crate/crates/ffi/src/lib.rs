//! C interface to `zwtick`.
//!
//! Diagrams and matrices cross the boundary as opaque heap handles released
//! with their `_free` function. Strings returned through `char **` are owned
//! by the caller and released with `zwt_string_free`. Every call returns a
//! status code; on failure `zwt_last_error` holds a message for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zwtick::matrix::Psd;
use zwtick::normalform::{canonical_of_map, diagrams_equal};
use zwtick::{qinfo, rules, semantics, Diagram, Error, Matrix};

pub const ZWT_OK: c_int = 0;
pub const ZWT_ERR_NULL: c_int = 1;
pub const ZWT_ERR_UTF8: c_int = 2;
pub const ZWT_ERR_PARSE: c_int = 3;
pub const ZWT_ERR_ARITY: c_int = 4;
pub const ZWT_ERR_TICKED: c_int = 5;
pub const ZWT_ERR_DIMENSION: c_int = 6;
pub const ZWT_ERR_INVALID: c_int = 7;
pub const ZWT_ERR_TOO_LARGE: c_int = 8;
pub const ZWT_ERR_ARITHMETIC: c_int = 9;
pub const ZWT_ERR_IO: c_int = 10;
pub const ZWT_ERR_PANIC: c_int = 11;

/// Complete positivity could not be decided numerically.
pub const ZWT_CP_UNKNOWN: c_int = -1;

/// Opaque diagram handle.
pub struct ZwtDiagram {
    inner: Diagram,
}

/// Opaque matrix handle with exact entries.
pub struct ZwtMatrix {
    inner: Matrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(e: &Error) -> c_int {
    match e {
        Error::Parse { .. } => ZWT_ERR_PARSE,
        Error::Arity { .. } => ZWT_ERR_ARITY,
        Error::Ticked => ZWT_ERR_TICKED,
        Error::Dimension(_) => ZWT_ERR_DIMENSION,
        Error::TooLarge(_) => ZWT_ERR_TOO_LARGE,
        Error::DivisionByZero | Error::Overflow => ZWT_ERR_ARITHMETIC,
        Error::Io(_) => ZWT_ERR_IO,
        _ => ZWT_ERR_INVALID,
    }
}

struct Fail(c_int, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ZWT_ERR_NULL, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZWT_OK
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            ZWT_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(ZWT_ERR_UTF8, format!("{what}: {e}")))
}

unsafe fn diagram<'a>(d: *const ZwtDiagram, what: &str) -> Result<&'a Diagram, Fail> {
    d.as_ref().map(|d| &d.inner).ok_or_else(|| null(what))
}

unsafe fn matrix<'a>(m: *const ZwtMatrix, what: &str) -> Result<&'a Matrix, Fail> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(ZWT_ERR_INVALID, e.to_string()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_diagram(out: *mut *mut ZwtDiagram, d: Diagram) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(ZwtDiagram { inner: d })))
}

unsafe fn put_matrix(out: *mut *mut ZwtMatrix, m: Matrix) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(ZwtMatrix { inner: m })))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn zwt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zwt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a diagram term.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_parse(src: *const c_char, out: *mut *mut ZwtDiagram) -> c_int {
    guard(|| {
        let d = Diagram::parse(text(src, "source")?)?;
        put_diagram(out, d)
    })
}

/// # Safety
/// `d` comes from this library and has not been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_free(d: *mut ZwtDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of input and output wires.
///
/// # Safety
/// Handles are live; output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_arity(d: *const ZwtDiagram, inputs: *mut usize, outputs: *mut usize) -> c_int {
    guard(|| {
        let (n, m) = diagram(d, "diagram")?.arity();
        put(inputs, n)?;
        put(outputs, m)
    })
}

/// Canonical text of the diagram.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_print(d: *const ZwtDiagram, out: *mut *mut c_char) -> c_int {
    guard(|| put_string(out, diagram(d, "diagram")?.print()))
}

/// `after ∘ before`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_compose(
    after: *const ZwtDiagram,
    before: *const ZwtDiagram,
    out: *mut *mut ZwtDiagram,
) -> c_int {
    guard(|| {
        let d = Diagram::compose(diagram(after, "after")?, diagram(before, "before")?)?;
        put_diagram(out, d)
    })
}

/// `top ⊗ bottom`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_tensor(
    top: *const ZwtDiagram,
    bottom: *const ZwtDiagram,
    out: *mut *mut ZwtDiagram,
) -> c_int {
    guard(|| put_diagram(out, Diagram::tensor(diagram(top, "top")?, diagram(bottom, "bottom")?)))
}

/// Whether two diagrams denote the same superoperator.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_equal(a: *const ZwtDiagram, b: *const ZwtDiagram, out: *mut bool) -> c_int {
    guard(|| put(out, diagrams_equal(diagram(a, "left")?, diagram(b, "right")?)?))
}

/// Pure interpretation of a tick-free diagram.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_interp(d: *const ZwtDiagram, out: *mut *mut ZwtMatrix) -> c_int {
    guard(|| put_matrix(out, semantics::interp(diagram(d, "diagram")?)?))
}

/// Choi matrix; `proper` bends the inputs through ticked caps.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_choi(d: *const ZwtDiagram, proper: bool, out: *mut *mut ZwtMatrix) -> c_int {
    guard(|| {
        let d = diagram(d, "diagram")?;
        let f = if proper { semantics::proper_choi(d)? } else { semantics::choi(d)? };
        put_matrix(out, f)
    })
}

/// Applies the superoperator of `d` to `rho`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_apply(
    d: *const ZwtDiagram,
    rho: *const ZwtMatrix,
    out: *mut *mut ZwtMatrix,
) -> c_int {
    guard(|| put_matrix(out, semantics::apply_superop(diagram(d, "diagram")?, matrix(rho, "rho")?)?))
}

/// Canonical normal form of the map, in the text format of `zwt nf`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_normal_form(d: *const ZwtDiagram, out: *mut *mut c_char) -> c_int {
    guard(|| put_string(out, canonical_of_map(diagram(d, "diagram")?)?.to_text()))
}

/// Hermiticity preservation, and complete positivity as 1, 0 or
/// `ZWT_CP_UNKNOWN`.
///
/// # Safety
/// Handles are live; output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_diagram_classify(d: *const ZwtDiagram, hp: *mut bool, cp: *mut c_int) -> c_int {
    guard(|| {
        let f = semantics::choi(diagram(d, "diagram")?)?;
        let h = f.is_hermitian();
        let c = if !h {
            0
        } else {
            match f.psd() {
                Psd::Yes => 1,
                Psd::No => 0,
                Psd::Indeterminate => ZWT_CP_UNKNOWN,
            }
        };
        put(hp, h)?;
        put(cp, c)
    })
}

/// Parses a matrix: a "rows cols" header, then one row per line.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_matrix_parse(src: *const c_char, out: *mut *mut ZwtMatrix) -> c_int {
    guard(|| {
        let m = Matrix::parse_text(text(src, "source")?)?;
        put_matrix(out, m)
    })
}

/// # Safety
/// `m` comes from this library and has not been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zwt_matrix_free(m: *mut ZwtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// Handles are live; output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_matrix_dims(m: *const ZwtMatrix, rows: *mut usize, cols: *mut usize) -> c_int {
    guard(|| {
        let m = matrix(m, "matrix")?;
        put(rows, m.rows())?;
        put(cols, m.cols())
    })
}

/// Entry `(r, c)` as a double-precision complex number.
///
/// # Safety
/// Handles are live; output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_matrix_entry(
    m: *const ZwtMatrix,
    r: usize,
    c: usize,
    re: *mut f64,
    im: *mut f64,
) -> c_int {
    guard(|| {
        let m = matrix(m, "matrix")?;
        if r >= m.rows() || c >= m.cols() {
            return Err(Fail(
                ZWT_ERR_DIMENSION,
                format!("entry ({r}, {c}) outside {}x{}", m.rows(), m.cols()),
            ));
        }
        let z = m.get(r, c).to_complex()?;
        put(re, z.re)?;
        put(im, z.im)
    })
}

/// Text form, exact unless `float` is set.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_matrix_to_text(m: *const ZwtMatrix, float: bool, out: *mut *mut c_char) -> c_int {
    guard(|| put_string(out, matrix(m, "matrix")?.to_text(float)?))
}

/// Positive-partial-transpose test with the first `split` qubits transposed.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_ppt(rho: *const ZwtMatrix, split: usize, out: *mut bool) -> c_int {
    guard(|| put(out, qinfo::ppt_check(matrix(rho, "rho")?, split)?))
}

/// Checks every rule schema on the sample grid plus `extra` random samples
/// per schema drawn from `seed`.
///
/// # Safety
/// Output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn zwt_check_axioms(extra: usize, seed: u64, total: *mut usize, failed: *mut usize) -> c_int {
    guard(|| {
        let report = rules::check_soundness(&rules::schemas(), extra, seed)?;
        put(total, report.total())?;
        put(failed, report.failed())
    })
}
