//! C ABI over the chamanara library.
//!
//! Handles are opaque pointers created and freed here; reports cross the
//! boundary as JSON strings (the same wire formats the CLI writes) and digit
//! dumps as ASCII `0`/`1`. Every call returns a [`ChmStatus`]; on any
//! failure [`chm_last_error_message`] holds a description until the next
//! failing call on the same thread.
//!
//! Build this crate to get `include/chamanara.h` (generated by cbindgen)
//! next to the crate sources, plus static and shared libraries under the
//! cargo target directory.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use chamanara::orbit::{
    accumulation_clusters, build_punctured_surface, certified_separation, make_special_point,
    stabilizer_proxy_check, SpecialPoint,
};
use chamanara::report::{
    to_json_pretty, AccumulationReportJson, OrbitReportJson, PeriodicPointJson,
    PuncturedSurfaceJson,
};
use chamanara::sequence::{parse_sequence_spec, SparseSequence};
use chamanara::Error;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChmStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad JSON, parameter out of range, invalid UTF-8.
    InvalidArgument = 2,
    /// A precondition failed: removed point, periodic expansion, same point.
    Precondition = 3,
    /// Certification inconclusive at this precision or depth; not a failure.
    Inconclusive = 4,
    /// The library panicked; state is untouched but the call did nothing.
    Panicked = 5,
}

/// Opaque handle: a sparse exponent sequence.
pub struct ChmSequence(SparseSequence);

/// Opaque handle: a special point with both coordinate streams.
pub struct ChmSpecialPoint(SpecialPoint);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> ChmStatus {
    if err.is_inconclusive() {
        return ChmStatus::Inconclusive;
    }
    match err {
        Error::RemovedPoint(_)
        | Error::NotCanonical
        | Error::NotEdgeInterior
        | Error::SamePoint
        | Error::TerminatingStream
        | Error::PeriodicExpansion { .. } => ChmStatus::Precondition,
        _ => ChmStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> ChmStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn guarded(f: impl FnOnce() -> ChmStatus) -> ChmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            ChmStatus::Panicked
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ChmStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(ChmStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        ChmStatus::InvalidArgument
    })
}

fn emit_string(text: String, out: *mut *mut c_char) -> ChmStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            ChmStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            ChmStatus::InvalidArgument
        }
    }
}

/// Version of the underlying library, static storage.
#[no_mangle]
pub extern "C" fn chm_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn chm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by any `*_json` or digit-dump entry point.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a sequence-family JSON description (the same schema the CLI
/// accepts) and requires a genuine divergence witness.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to a pointer slot.
#[no_mangle]
pub unsafe extern "C" fn chm_sequence_parse_json(
    json: *const c_char,
    out: *mut *mut ChmSequence,
) -> ChmStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return ChmStatus::NullArgument;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_sequence_spec(text) {
            Ok(seq) => {
                *out = Box::into_raw(Box::new(ChmSequence(seq)));
                ChmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `seq` must be null or an unfreed pointer from [`chm_sequence_parse_json`].
#[no_mangle]
pub unsafe extern "C" fn chm_sequence_free(seq: *mut ChmSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Builds the special point `(1 - sum 2^{-s_n}, sum 2^{-t_n})` from two
/// sequence handles, spot-checking both divergence witnesses.
///
/// # Safety
/// `x_seq` and `y_seq` must be valid sequence handles; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_special_point_new(
    x_seq: *const ChmSequence,
    y_seq: *const ChmSequence,
    out: *mut *mut ChmSpecialPoint,
) -> ChmStatus {
    guarded(|| {
        if x_seq.is_null() || y_seq.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        let x = (*x_seq).0.clone();
        let y = (*y_seq).0.clone();
        match make_special_point(x, y) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(ChmSpecialPoint(p)));
                ChmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must be null or an unfreed pointer from [`chm_special_point_new`].
#[no_mangle]
pub unsafe extern "C" fn chm_special_point_free(p: *mut ChmSpecialPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// ASCII dump of the first `count` expansion digits of one coordinate
/// (`coord` 0 = x, 1 = y). Free the string with [`chm_string_free`].
///
/// # Safety
/// `point` must be a valid handle, `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_point_digits(
    point: *const ChmSpecialPoint,
    coord: i32,
    count: u64,
    out: *mut *mut c_char,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        if count == 0 || count > 1 << 20 {
            set_error("digit count out of range");
            return ChmStatus::InvalidArgument;
        }
        let p = &(*point).0;
        let stream = match coord {
            0 => p.x(),
            1 => p.y(),
            _ => {
                set_error("coord must be 0 (x) or 1 (y)");
                return ChmStatus::InvalidArgument;
            }
        };
        emit_string(stream.digits_string(count), out)
    })
}

/// Orbit separation report over `[n_min, n_max]` as JSON; returns
/// `Inconclusive` (report still produced) when any pair failed to separate.
///
/// # Safety
/// `point` must be a valid handle, `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_orbit_report_json(
    point: *const ChmSpecialPoint,
    n_min: i64,
    n_max: i64,
    precision: u32,
    depth: u32,
    out: *mut *mut c_char,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        match certified_separation(&(*point).0, n_min, n_max, precision, depth) {
            Ok(report) => {
                let inconclusive = !report.inconclusive_pairs.is_empty();
                let json = match to_json_pretty(&OrbitReportJson::from(&report)) {
                    Ok(j) => j,
                    Err(e) => return fail(e),
                };
                let status = emit_string(json, out);
                if status == ChmStatus::Ok && inconclusive {
                    set_error("some orbit pairs are inconclusive at this precision");
                    ChmStatus::Inconclusive
                } else {
                    status
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Accumulation-cluster report for the forward orbit as JSON.
///
/// # Safety
/// `point` must be a valid handle, `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_accumulation_report_json(
    point: *const ChmSpecialPoint,
    n_max: i64,
    tol_exp: u32,
    out: *mut *mut c_char,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        match accumulation_clusters(&(*point).0, n_max, tol_exp) {
            Ok(report) => match to_json_pretty(&AccumulationReportJson::from(&report)) {
                Ok(j) => emit_string(j, out),
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    })
}

/// Punctured-surface description as JSON. Fails with `Precondition` for
/// points that do not pass the stabilizer proxy and `Inconclusive` when the
/// separation certificate does not close.
///
/// # Safety
/// `point` must be a valid handle, `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_punctured_surface_json(
    point: *const ChmSpecialPoint,
    half_window: u32,
    precision: u32,
    depth: u32,
    out: *mut *mut c_char,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        match build_punctured_surface(&(*point).0, half_window, precision, depth) {
            Ok(desc) => match to_json_pretty(&PuncturedSurfaceJson::from(&desc)) {
                Ok(j) => emit_string(j, out),
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    })
}

/// Fixed points of the n-th power of the automorphism as a JSON list.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_periodic_points_json(n: u32, out: *mut *mut c_char) -> ChmStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return ChmStatus::NullArgument;
        }
        match chamanara::periodic_points(n) {
            Ok(points) => {
                let json: Vec<PeriodicPointJson> = points.iter().map(Into::into).collect();
                match to_json_pretty(&json) {
                    Ok(j) => emit_string(j, out),
                    Err(e) => fail(e),
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs the stabilizer proxy: `*out_passed` is set to `true` when no power
/// up to `limit` can fix the point, `false` when the expansion is provably
/// periodic (possible only for bypassed rational inputs).
///
/// # Safety
/// `point` must be a valid handle, `out_passed` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_stabilizer_check(
    point: *const ChmSpecialPoint,
    limit: u32,
    out_passed: *mut bool,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out_passed.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        match stabilizer_proxy_check(&(*point).0, limit) {
            Ok(_) => {
                *out_passed = true;
                ChmStatus::Ok
            }
            Err(Error::PeriodicExpansion { .. }) => {
                *out_passed = false;
                ChmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Renders the surface diagram with an orbit overlay as an SVG string.
///
/// # Safety
/// `point` must be a valid handle, `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn chm_render_svg(
    point: *const ChmSpecialPoint,
    edge_limit: u32,
    scale: u32,
    n_min: i64,
    n_max: i64,
    precision: u32,
    out: *mut *mut c_char,
) -> ChmStatus {
    guarded(|| {
        if point.is_null() || out.is_null() {
            set_error("null argument");
            return ChmStatus::NullArgument;
        }
        let svg = chamanara::render::render_svg(&chamanara::render::RenderOptions {
            edge_limit,
            scale,
            orbit: Some((&(*point).0, n_min, n_max)),
            precision,
        });
        emit_string(svg, out)
    })
}
