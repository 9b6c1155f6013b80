//! C ABI over the opkit core: opaque matrix handles, integer status codes,
//! and a thread-local last-error message.
//!
//! Conventions
//! - Matrices cross the boundary as `OpkitMatrix*` handles created by
//!   `opkit_matrix_new` (or returned through out-parameters) and released
//!   with `opkit_matrix_free`. Entry data is row-major, split into separate
//!   real and imaginary arrays; a null imaginary pointer means all zeros.
//! - Every fallible call returns an `OpkitStatus`. On any non-`Ok` status
//!   the out-parameters are left untouched and a human-readable message is
//!   available via `opkit_last_error`.
//! - Handles are not synchronized; a handle must not be used from two
//!   threads at once. Distinct handles are independent.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;

use opkit::funcalc::{spectral_projection_resolvent, QuadratureConfig};
use opkit::io::{detect_format, read_matrix, write_matrix};
use opkit::matrix::c;
use opkit::polar::polar;
use opkit::sectorial::{kato_decompose, power_accretive, sectorial_certificate};
use opkit::verify::run_suite;
use opkit::CMatrix;

/// Opaque dense complex matrix handle.
pub struct OpkitMatrix(CMatrix);

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpkitStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Dimensions were zero, inconsistent, or overflowed.
    InvalidDimensions = 2,
    /// The underlying computation refused the input or failed; see
    /// `opkit_last_error`.
    ComputeError = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// A verification suite ran to completion but some check failed.
    VerificationFailed = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).expect("NUL bytes stripped above");
    });
}

fn fail(e: opkit::OpError) -> OpkitStatus {
    set_error(&e.to_string());
    OpkitStatus::ComputeError
}

/// Copies the message for the most recent failure on this thread into `buf`
/// (NUL-terminated, truncated to `cap` bytes) and returns the full message
/// length in bytes, excluding the terminator. `buf` may be null to query the
/// length alone.
///
/// # Safety
/// `buf`, when non-null, must point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn opkit_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn opkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a `rows`×`cols` matrix from row-major entry arrays. `im` may be
/// null for a real matrix. Returns null (with the error recorded) on bad
/// arguments.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `rows * cols` readable f64s.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_new(
    rows: usize,
    cols: usize,
    re: *const f64,
    im: *const f64,
) -> *mut OpkitMatrix {
    if re.is_null() {
        set_error("re must not be null");
        return std::ptr::null_mut();
    }
    let Some(len) = rows.checked_mul(cols).filter(|&l| l > 0) else {
        set_error("rows * cols must be positive and not overflow");
        return std::ptr::null_mut();
    };
    let re_s = std::slice::from_raw_parts(re, len);
    let im_s = (!im.is_null()).then(|| std::slice::from_raw_parts(im, len));
    let m = CMatrix::from_fn(rows, cols, |i, j| {
        let k = i * cols + j;
        c(re_s[k], im_s.map_or(0.0, |s| s[k]))
    });
    Box::into_raw(Box::new(OpkitMatrix(m)))
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_free(h: *mut OpkitMatrix) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Row count of the matrix behind `h`, or 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_rows(h: *const OpkitMatrix) -> usize {
    h.as_ref().map_or(0, |m| m.0.nrows())
}

/// Column count of the matrix behind `h`, or 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_cols(h: *const OpkitMatrix) -> usize {
    h.as_ref().map_or(0, |m| m.0.ncols())
}

/// Copies the entries of `h` into row-major `re`/`im` arrays. Either output
/// may be null to skip that part.
///
/// # Safety
/// Non-null outputs must point to `rows * cols` writable f64s.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_copy_data(
    h: *const OpkitMatrix,
    re: *mut f64,
    im: *mut f64,
) -> OpkitStatus {
    let Some(m) = h.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    let (rows, cols) = (m.0.nrows(), m.0.ncols());
    for i in 0..rows {
        for j in 0..cols {
            let k = i * cols + j;
            let z = m.0[(i, j)];
            if !re.is_null() {
                *re.add(k) = z.re;
            }
            if !im.is_null() {
                *im.add(k) = z.im;
            }
        }
    }
    OpkitStatus::Ok
}

/// Reads a matrix from a Matrix Market (`.mtx`) or JSON file, detecting the
/// format from the extension. Returns null on failure.
///
/// # Safety
/// `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_read(path: *const c_char) -> *mut OpkitMatrix {
    let Some(p) = cstr_path(path) else {
        return std::ptr::null_mut();
    };
    match read_matrix(Path::new(&p), detect_format(Path::new(&p))) {
        Ok(m) => Box::into_raw(Box::new(OpkitMatrix(m))),
        Err(e) => {
            set_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Writes the matrix behind `h` to `path`, detecting the format from the
/// extension.
///
/// # Safety
/// `h` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn opkit_matrix_write(
    h: *const OpkitMatrix,
    path: *const c_char,
) -> OpkitStatus {
    let Some(m) = h.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    let Some(p) = cstr_path(path) else {
        return OpkitStatus::InvalidUtf8;
    };
    match write_matrix(&m.0, Path::new(&p), detect_format(Path::new(&p))) {
        Ok(()) => OpkitStatus::Ok,
        Err(e) => fail(e),
    }
}

unsafe fn cstr_path(path: *const c_char) -> Option<String> {
    if path.is_null() {
        set_error("path must not be null");
        return None;
    }
    match CStr::from_ptr(path).to_str() {
        Ok(s) => Some(s.to_owned()),
        Err(_) => {
            set_error("path must be valid UTF-8");
            None
        }
    }
}

unsafe fn give(out: *mut *mut OpkitMatrix, m: CMatrix) {
    *out = Box::into_raw(Box::new(OpkitMatrix(m)));
}

/// Polar decomposition T = U |T| = |T*| U. Any of the three outputs may be
/// null to skip it. `rank_tol` = 0 selects the default numerical-rank
/// threshold.
///
/// # Safety
/// `t` must be a live handle; non-null outputs must be writable pointer
/// slots. Each returned handle must be freed with `opkit_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn opkit_polar(
    t: *const OpkitMatrix,
    rank_tol: f64,
    u: *mut *mut OpkitMatrix,
    abs_t: *mut *mut OpkitMatrix,
    abs_t_star: *mut *mut OpkitMatrix,
) -> OpkitStatus {
    let Some(m) = t.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    match polar(&m.0, rank_tol) {
        Ok(f) => {
            if !u.is_null() {
                give(u, f.u);
            }
            if !abs_t.is_null() {
                give(abs_t, f.abs_t);
            }
            if !abs_t_star.is_null() {
                give(abs_t_star, f.abs_t_star);
            }
            OpkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Fractional power A^alpha of an accretive matrix, alpha in (0, 1].
///
/// # Safety
/// `a` must be a live handle; `out` a writable pointer slot. The returned
/// handle must be freed with `opkit_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn opkit_frac_power(
    a: *const OpkitMatrix,
    alpha: f64,
    out: *mut *mut OpkitMatrix,
) -> OpkitStatus {
    let Some(m) = a.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    if out.is_null() {
        set_error("out must not be null");
        return OpkitStatus::NullArgument;
    }
    match power_accretive(&m.0, alpha, false) {
        Ok(p) => {
            give(out, p);
            OpkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Spectral projection E(lambda) of a Hermitian matrix onto eigenvalues
/// <= lambda, computed by resolvent quadrature at relative tolerance
/// `rel_tol` (pass 0 for the default).
///
/// # Safety
/// `h` must be a live handle; `out` a writable pointer slot. The returned
/// handle must be freed with `opkit_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn opkit_spectral_projection(
    h: *const OpkitMatrix,
    lambda: f64,
    rel_tol: f64,
    out: *mut *mut OpkitMatrix,
) -> OpkitStatus {
    let Some(m) = h.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    if out.is_null() {
        set_error("out must not be null");
        return OpkitStatus::NullArgument;
    }
    let cfg = if rel_tol > 0.0 {
        QuadratureConfig::with_rel_tol(rel_tol)
    } else {
        QuadratureConfig::projection_default()
    };
    match spectral_projection_resolvent(&m.0, lambda, &cfg) {
        Ok(p) => {
            give(out, p);
            OpkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Sectorial factorization A = A_R^{1/2} (I + iX) A_R^{1/2}. Either output
/// may be null to skip it. `rank_tol` = 0 selects the default numerical-rank
/// threshold for the Hermitian-part square root.
///
/// # Safety
/// `a` must be a live handle; non-null outputs must be writable pointer
/// slots. Each returned handle must be freed with `opkit_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn opkit_kato_factor(
    a: *const OpkitMatrix,
    rank_tol: f64,
    a_r: *mut *mut OpkitMatrix,
    x: *mut *mut OpkitMatrix,
) -> OpkitStatus {
    let Some(m) = a.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    match kato_decompose(&m.0, rank_tol) {
        Ok(kd) => {
            if !a_r.is_null() {
                give(a_r, kd.a_r);
            }
            if !x.is_null() {
                give(x, kd.x);
            }
            OpkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Numerical-range sectoriality test: writes the semi-angle (radians) to
/// `theta` and whether the matrix is sectorial with vertex 0 to `sectorial`
/// (either may be null).
///
/// # Safety
/// `a` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn opkit_sectorial_semi_angle(
    a: *const OpkitMatrix,
    theta: *mut f64,
    sectorial: *mut bool,
) -> OpkitStatus {
    let Some(m) = a.as_ref() else {
        set_error("matrix handle must not be null");
        return OpkitStatus::NullArgument;
    };
    match sectorial_certificate(&m.0, 256) {
        Ok(cert) => {
            if !theta.is_null() {
                *theta = cert.semi_angle_theta;
            }
            if !sectorial.is_null() {
                *sectorial = cert.sectorial;
            }
            OpkitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Runs one named verification suite (see the CLI's `verify --suite` values)
/// with the given seed. Returns `Ok` when every check passes,
/// `VerificationFailed` when the suite ran but a check failed.
///
/// # Safety
/// `name` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn opkit_verify_suite(name: *const c_char, seed: u64) -> OpkitStatus {
    if name.is_null() {
        set_error("suite name must not be null");
        return OpkitStatus::NullArgument;
    }
    let Ok(s) = CStr::from_ptr(name).to_str() else {
        set_error("suite name must be valid UTF-8");
        return OpkitStatus::InvalidUtf8;
    };
    match run_suite(s, seed) {
        Ok(r) if r.passed => OpkitStatus::Ok,
        Ok(r) => {
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            set_error(&format!(
                "suite '{}' failed checks: {}",
                r.suite,
                failed.join(", ")
            ));
            OpkitStatus::VerificationFailed
        }
        Err(e) => fail(e),
    }
}
