//! C ABI over the `gorenstein` crate.
//!
//! Every function returns a [`GsStatus`]; results go through out-pointers.
//! On failure, `gs_last_error` returns a message for the calling thread.
//! Strings returned by the library are freed with `gs_string_free`,
//! polytope handles with `gs_polytope_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gorenstein::cli::{parse_polytope_file, report_from_text, CommandName, Options};
use gorenstein::duality::dual_gorenstein;
use gorenstein::ehrhart::{classify, hstar_profile};
use gorenstein::joins::is_irreducible;
use gorenstein::stringy::stringy_e;
use gorenstein::{Error, Polytope};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    InputError = 1,
    TheoremViolation = 2,
    ConjectureFailure = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque polytope handle.
pub struct GsPolytope {
    inner: Polytope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn from_error(e: &Error) -> GsStatus {
    set_error(e.to_string());
    if e.is_theorem_violation() {
        GsStatus::TheoremViolation
    } else {
        GsStatus::InputError
    }
}

fn guarded(f: impl FnOnce() -> GsStatus) -> GsStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            GsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, GsStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(GsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        GsStatus::InvalidUtf8
    })
}

unsafe fn handle<'a>(p: *const GsPolytope) -> Result<&'a Polytope, GsStatus> {
    if p.is_null() {
        set_error("null polytope handle");
        return Err(GsStatus::NullPointer);
    }
    Ok(&(*p).inner)
}

fn give_string(s: String, out: *mut *mut c_char) -> GsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            GsStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            GsStatus::Panic
        }
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(&e),
        }
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a polytope file (JSON text) into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_polytope_from_json(json: *const c_char, out: *mut *mut GsPolytope) -> GsStatus {
    guarded(|| {
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        let text = tri!(read_str(json));
        let file = lib!(parse_polytope_file(text));
        let p = lib!(file.polytope());
        *out = Box::into_raw(Box::new(GsPolytope { inner: p }));
        GsStatus::Ok
    })
}

/// Builds a polytope from `n` integral points stored row-major in `coords`
/// (`n * ambient_dim` entries).
///
/// # Safety
/// `coords` must point to `n * ambient_dim` integers and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_polytope_from_points(
    ambient_dim: usize,
    coords: *const i64,
    n: usize,
    out: *mut *mut GsPolytope,
) -> GsStatus {
    guarded(|| {
        if out.is_null() || (coords.is_null() && n * ambient_dim > 0) {
            set_error("null pointer argument");
            return GsStatus::NullPointer;
        }
        let flat: &[i64] = if n * ambient_dim == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(coords, n * ambient_dim)
        };
        let pts = (0..n).map(|i| flat[i * ambient_dim..(i + 1) * ambient_dim].to_vec()).collect();
        let p = lib!(Polytope::from_points(ambient_dim, pts));
        *out = Box::into_raw(Box::new(GsPolytope { inner: p }));
        GsStatus::Ok
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn gs_polytope_free(p: *mut GsPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Dimension of the polytope (`-1` when empty).
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gs_polytope_dim(p: *const GsPolytope, out: *mut i64) -> GsStatus {
    guarded(|| {
        let p = tri!(handle(p));
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        *out = p.dim() as i64;
        GsStatus::Ok
    })
}

/// Writes the h*-coefficients (constant term first) into `coeffs`. `len`
/// receives the number of coefficients; when it exceeds `cap` nothing is
/// written and `BufferTooSmall` is returned.
///
/// # Safety
/// `coeffs` must hold `cap` integers; `p` and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_hstar(p: *const GsPolytope, coeffs: *mut i64, cap: usize, len: *mut usize) -> GsStatus {
    guarded(|| {
        let p = tri!(handle(p));
        if len.is_null() {
            return GsStatus::NullPointer;
        }
        let h = lib!(hstar_profile(p)).hstar;
        let c = h.coeffs();
        *len = c.len();
        if c.len() > cap {
            set_error(format!("{} coefficients do not fit in {cap}", c.len()));
            return GsStatus::BufferTooSmall;
        }
        if !c.is_empty() {
            if coeffs.is_null() {
                return GsStatus::NullPointer;
            }
            ptr::copy_nonoverlapping(c.as_ptr(), coeffs, c.len());
        }
        GsStatus::Ok
    })
}

/// Gorenstein index, or 0 when the polytope is not Gorenstein.
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gs_gorenstein_index(p: *const GsPolytope, out: *mut usize) -> GsStatus {
    guarded(|| {
        let p = tri!(handle(p));
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        *out = lib!(classify(p)).gorenstein_index.unwrap_or(0);
        GsStatus::Ok
    })
}

/// Irreducibility of a Gorenstein polytope.
///
/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gs_is_irreducible(p: *const GsPolytope, out: *mut bool) -> GsStatus {
    guarded(|| {
        let p = tri!(handle(p));
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        let pair = lib!(dual_gorenstein(p));
        *out = lib!(is_irreducible(&pair));
        GsStatus::Ok
    })
}

/// The stringy E-function as JSON `[[i, j, c], ..]` for `c·u^i v^j`.
///
/// # Safety
/// `p` must be a live handle and `out` valid; free the result with
/// `gs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gs_stringy_e_json(p: *const GsPolytope, out: *mut *mut c_char) -> GsStatus {
    guarded(|| {
        let p = tri!(handle(p));
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        let pair = lib!(dual_gorenstein(p));
        let e = lib!(stringy_e(&pair)).e_st;
        give_string(serde_json::to_string(&e).expect("monomials serialize"), out)
    })
}

/// Runs a command-line command (`info`, `stringy`, `nef-build`, ..) on the
/// text of one input file and returns its JSON report line. The status
/// mirrors the report's exit code.
///
/// # Safety
/// `command` and `input` must be NUL-terminated strings, `out` valid; free
/// the result with `gs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gs_run_command(command: *const c_char, input: *const c_char, out: *mut *mut c_char) -> GsStatus {
    guarded(|| {
        if out.is_null() {
            return GsStatus::NullPointer;
        }
        let cmd = tri!(read_str(command));
        let text = tri!(read_str(input));
        let Ok(cmd) = <CommandName as clap::ValueEnum>::from_str(cmd, false) else {
            set_error(format!("unknown command {cmd:?}"));
            return GsStatus::InputError;
        };
        let opts = Options {
            repro_dir: std::env::temp_dir(),
            ..Options::default()
        };
        let report = report_from_text(cmd, &opts, text, "input".into(), None);
        if let Some(e) = &report.error {
            set_error(e.message.clone());
        }
        let status = match report.status.exit_code() {
            0 => GsStatus::Ok,
            1 => GsStatus::InputError,
            2 => GsStatus::TheoremViolation,
            _ => GsStatus::ConjectureFailure,
        };
        let s = give_string(report.to_json_line(), out);
        if s == GsStatus::Ok {
            status
        } else {
            s
        }
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
