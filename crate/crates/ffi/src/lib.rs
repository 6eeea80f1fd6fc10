//! C ABI over `cy3lab`.
//!
//! Objects are opaque handles created by `cy3_*` constructors and released
//! with the matching `*_free`. Every fallible call returns a [`Cy3Status`];
//! on failure the error code and message of the calling thread are
//! available from [`cy3_last_error_code`] and [`cy3_last_error_message`].
//! Strings returned through out-parameters are owned by the caller and
//! released with [`cy3_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cy3lab::bps::{dt0_product, BpsError, TruncatedSeries};
use cy3lab::catalog::{catalog_get, CatalogError};
use cy3lab::dimer::{
    dual_quiver, enumerate_matchings, kasteleyn_polygon, matching_polygon, BraneTiling, DimerError,
};
use cy3lab::iso::quiver_isomorphic;
use cy3lab::json::{
    action_from_json, polygon_to_json, quiver_from_json, quiver_to_json, tiling_from_json,
    tiling_to_json, JsonError,
};
use cy3lab::quiver::{Potential, Quiver, QuiverError};
use cy3lab::symmetry::{quotient, validate_action, Normalization, SymmetryError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cy3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input rejected by validation; see the last error code.
    Invalid = 3,
    NotFound = 4,
    Internal = 5,
}

/// Quiver with potential.
pub struct Cy3Quiver {
    quiver: Quiver,
    potential: Potential,
}

/// Brane tiling.
pub struct Cy3Tiling {
    tiling: BraneTiling,
}

/// Truncated power series with integer coefficients.
pub struct Cy3Series {
    series: TruncatedSeries,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure {
    status: Cy3Status,
    code: String,
    message: String,
}

impl Failure {
    fn new(status: Cy3Status, code: &str, message: impl Into<String>) -> Self {
        Failure {
            status,
            code: code.into(),
            message: message.into(),
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new(Cy3Status::Invalid, e.code(), e.to_string())
            }
        }
    )*};
}
invalid_from!(QuiverError, SymmetryError, DimerError, BpsError, JsonError);

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        let status = match e {
            CatalogError::UnknownEntry(_) => Cy3Status::NotFound,
            _ => Cy3Status::Invalid,
        };
        Failure::new(status, e.code(), e.to_string())
    }
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(LastError {
            code: clean(code),
            message: clean(message),
        })
    });
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Cy3Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Cy3Status::Ok,
        Ok(Err(f)) => {
            set_error(&f.code, &f.message);
            f.status
        }
        Err(_) => {
            set_error("Internal", "panic inside cy3lab");
            Cy3Status::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(
            Cy3Status::NullPointer,
            "NullPointer",
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::new(
            Cy3Status::InvalidUtf8,
            "InvalidUtf8",
            format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| {
        Failure::new(
            Cy3Status::NullPointer,
            "NullPointer",
            format!("{what} is null"),
        )
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            Cy3Status::NullPointer,
            "NullPointer",
            "output pointer is null",
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            Cy3Status::NullPointer,
            "NullPointer",
            "output pointer is null",
        ));
    }
    let c = CString::new(s)
        .map_err(|_| Failure::new(Cy3Status::Internal, "Internal", "output contains nul"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            Cy3Status::NullPointer,
            "NullPointer",
            "output pointer is null",
        ));
    }
    *out = v;
    Ok(())
}

fn param(n: u32) -> Option<u32> {
    (n != 0).then_some(n)
}

/// Error code of the last failed call on this thread, or null.
/// The pointer stays valid until the next `cy3_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cy3_last_error_code() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.code.as_ptr()))
}

/// Human-readable message of the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn cy3_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |e| e.message.as_ptr())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cy3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Catalog quiver with potential. `n = 0` means no parameter.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_catalog_quiver(
    name: *const c_char,
    n: u32,
    out: *mut *mut Cy3Quiver,
) -> Cy3Status {
    guard(|| {
        let e = catalog_get(str_arg(name, "name")?, param(n))?;
        put(
            out,
            Cy3Quiver {
                quiver: e.quiver,
                potential: e.potential,
            },
        )
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_from_json(
    json: *const c_char,
    out: *mut *mut Cy3Quiver,
) -> Cy3Status {
    guard(|| {
        let (quiver, potential) = quiver_from_json(str_arg(json, "json")?)?;
        put(out, Cy3Quiver { quiver, potential })
    })
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_to_json(
    q: *const Cy3Quiver,
    out: *mut *mut c_char,
) -> Cy3Status {
    guard(|| {
        let q = obj(q, "quiver")?;
        put_string(out, quiver_to_json(&q.quiver, &q.potential))
    })
}

/// Vertex, arrow and potential term counts.
///
/// # Safety
/// `q` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_counts(
    q: *const Cy3Quiver,
    vertices: *mut usize,
    arrows: *mut usize,
    terms: *mut usize,
) -> Cy3Status {
    guard(|| {
        let q = obj(q, "quiver")?;
        put_value(vertices, q.quiver.vertex_count())?;
        put_value(arrows, q.quiver.arrow_count())?;
        put_value(terms, q.potential.len())
    })
}

/// Isomorphism up to a global potential scale.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_isomorphic(
    a: *const Cy3Quiver,
    b: *const Cy3Quiver,
    out: *mut bool,
) -> Cy3Status {
    guard(|| {
        let (a, b) = (obj(a, "a")?, obj(b, "b")?);
        let iso = quiver_isomorphic(&a.quiver, &a.potential, &b.quiver, &b.potential)?;
        put_value(out, iso.is_some())
    })
}

/// Quotient by the group action given as JSON.
///
/// # Safety
/// `q` must be a live handle, `action_json` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_quotient(
    q: *const Cy3Quiver,
    action_json: *const c_char,
    by_group_order: bool,
    out: *mut *mut Cy3Quiver,
) -> Cy3Status {
    guard(|| {
        let q = obj(q, "quiver")?;
        let act = action_from_json(str_arg(action_json, "action")?)?;
        validate_action(&q.quiver, &q.potential, &act)?;
        let norm = if by_group_order {
            Normalization::ByGroupOrder
        } else {
            Normalization::Raw
        };
        let r = quotient(&q.quiver, &q.potential, &act, norm)?;
        put(
            out,
            Cy3Quiver {
                quiver: r.quiver,
                potential: r.potential,
            },
        )
    })
}

/// # Safety
/// `q` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cy3_quiver_free(q: *mut Cy3Quiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Catalog tiling. `n = 0` means no parameter.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_catalog_tiling(
    name: *const c_char,
    n: u32,
    out: *mut *mut Cy3Tiling,
) -> Cy3Status {
    guard(|| {
        let name = str_arg(name, "name")?;
        let e = catalog_get(name, param(n))?;
        let tiling = e.tiling.ok_or_else(|| {
            Failure::new(
                Cy3Status::NotFound,
                "NoTiling",
                format!("{name} has no tiling"),
            )
        })?;
        put(out, Cy3Tiling { tiling })
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_tiling_from_json(
    json: *const c_char,
    out: *mut *mut Cy3Tiling,
) -> Cy3Status {
    guard(|| {
        put(
            out,
            Cy3Tiling {
                tiling: tiling_from_json(str_arg(json, "json")?)?,
            },
        )
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_tiling_to_json(
    t: *const Cy3Tiling,
    out: *mut *mut c_char,
) -> Cy3Status {
    guard(|| put_string(out, tiling_to_json(&obj(t, "tiling")?.tiling)))
}

/// Dual quiver with potential.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_tiling_dual(
    t: *const Cy3Tiling,
    out: *mut *mut Cy3Quiver,
) -> Cy3Status {
    guard(|| {
        let (quiver, potential) = dual_quiver(&obj(t, "tiling")?.tiling)?;
        put(out, Cy3Quiver { quiver, potential })
    })
}

/// Toric polygon as `[[x,y,multiplicity],...]`, from the Kasteleyn
/// determinant or from perfect matchings.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_tiling_polygon(
    t: *const Cy3Tiling,
    kasteleyn: bool,
    out: *mut *mut c_char,
) -> Cy3Status {
    guard(|| {
        let t = &obj(t, "tiling")?.tiling;
        let p = if kasteleyn {
            kasteleyn_polygon(t)?
        } else {
            let ms = enumerate_matchings(t)?;
            let first = ms.first().ok_or_else(|| {
                Failure::new(Cy3Status::Invalid, "NoMatchings", "no perfect matching")
            })?;
            matching_polygon(t, first)?
        };
        put_string(out, polygon_to_json(&p))
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cy3_tiling_free(t: *mut Cy3Tiling) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Degree-zero product for the `Z_n` orbifold of the conifold, truncated
/// at total degree `order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_dt0_product(
    n: u32,
    order: u32,
    out: *mut *mut Cy3Series,
) -> Cy3Status {
    guard(|| {
        put(
            out,
            Cy3Series {
                series: dt0_product(n, order)?,
            },
        )
    })
}

/// Number of variables.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cy3_series_vars(s: *const Cy3Series) -> usize {
    s.as_ref().map_or(0, |s| s.series.vars())
}

/// Coefficient of the monomial with exponents `exps[0..len]`, as a decimal
/// string. Monomials beyond the truncation report `0`.
///
/// # Safety
/// `s` must be a live handle, `exps` must point to `len` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_series_coefficient(
    s: *const Cy3Series,
    exps: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> Cy3Status {
    guard(|| {
        let s = &obj(s, "series")?.series;
        if exps.is_null() && len > 0 {
            return Err(Failure::new(
                Cy3Status::NullPointer,
                "NullPointer",
                "exponents are null",
            ));
        }
        if len != s.vars() {
            return Err(Failure::new(
                Cy3Status::Invalid,
                "DimensionMismatch",
                format!("{len} exponents for {} variables", s.vars()),
            ));
        }
        let e: &[u32] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(exps, len)
        };
        put_string(out, s.coefficient(e).to_string())
    })
}

/// Sorted `[e1,...]: c` text dump.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cy3_series_to_text(
    s: *const Cy3Series,
    out: *mut *mut c_char,
) -> Cy3Status {
    guard(|| put_string(out, obj(s, "series")?.series.to_text()))
}

/// # Safety
/// `s` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cy3_series_free(s: *mut Cy3Series) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
