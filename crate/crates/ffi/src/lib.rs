//! C ABI over `giant_steps`.
//!
//! Conventions: functions return a [`GstStatus`]; results come back through
//! out-pointers. Strings handed to the caller are NUL-terminated, owned by
//! the caller, and released with [`gst_string_free`]. Counts are decimal
//! strings because they outgrow every fixed-width integer. After a failure,
//! [`gst_last_error`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use giant_steps::cli::parse_tunnel;
use giant_steps::corridor::build_corridor;
use giant_steps::counting::{count_minimal_sequences, verbose_report, CountResult};
use giant_steps::document::{to_json, OutputDocument};
use giant_steps::farey::{farey_geodesics, FareyError, Fraction};
use giant_steps::invariants::{binary_to_turns, steps_to_binary};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GstStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// The operation has no answer for the simple tunnel `D`.
    SimpleTunnel = 4,
    InvalidFraction = 5,
    EqualVertices = 6,
    InvalidArgument = 7,
    Panic = 8,
}

pub const GST_TARGET_STEPS: u32 = 0;
pub const GST_TARGET_BINARY: u32 = 1;
pub const GST_TARGET_TURNS: u32 = 2;

/// Opaque result of counting one tunnel.
pub struct GstCount {
    input: String,
    result: CountResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

type Failure = (GstStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GstStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GstStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            GstStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((GstStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (GstStatus::InvalidUtf8, e.to_string()))
}

fn check_out<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err((GstStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn into_c(s: String) -> *mut c_char {
    // none of our outputs contain NUL
    CString::new(s).expect("no interior NUL").into_raw()
}

fn count_result(input: &str, force_steps: bool) -> Result<CountResult, Failure> {
    let steps =
        parse_tunnel(input, force_steps).map_err(|e| (GstStatus::ParseError, e.to_string()))?;
    Ok(count_minimal_sequences(&steps))
}

/// Counts the minimal giant-step constructions of `input` (binary invariants,
/// or a step sequence; `force_steps` always parses a step sequence). On
/// success `*out` holds a handle to release with [`gst_count_free`].
///
/// # Safety
/// `input` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_count_new(
    input: *const c_char,
    force_steps: bool,
    out: *mut *mut GstCount,
) -> GstStatus {
    guard(|| {
        check_out(out)?;
        let input = read_str(input)?;
        let result = count_result(input, force_steps)?;
        *out = Box::into_raw(Box::new(GstCount {
            input: input.to_string(),
            result,
        }));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`gst_count_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gst_count_free(handle: *mut GstCount) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Depth of the tunnel, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gst_count_depth(handle: *const GstCount) -> usize {
    handle.as_ref().map_or(0, |h| h.result.depth)
}

/// Number of ∇-edges `k`, or 0 for a null handle or the simple tunnel.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gst_count_k(handle: *const GstCount) -> usize {
    handle.as_ref().map_or(0, |h| h.result.k())
}

unsafe fn handle_string(
    handle: *const GstCount,
    out: *mut *mut c_char,
    render: impl FnOnce(&GstCount) -> String,
) -> GstStatus {
    guard(|| {
        check_out(out)?;
        let h = handle
            .as_ref()
            .ok_or((GstStatus::NullPointer, "null handle".to_string()))?;
        *out = into_c(render(h));
        Ok(())
    })
}

/// The count as a decimal string.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_count_value(
    handle: *const GstCount,
    out: *mut *mut c_char,
) -> GstStatus {
    handle_string(handle, out, |h| h.result.count.to_string())
}

/// Block configurations joined by commas, e.g. `R1,L2,L1,R2`.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_count_configs(
    handle: *const GstCount,
    out: *mut *mut c_char,
) -> GstStatus {
    handle_string(handle, out, |h| {
        h.result
            .configs
            .iter()
            .map(|c| c.as_str())
            .collect::<Vec<_>>()
            .join(",")
    })
}

/// The multi-line verbose report.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_count_report(
    handle: *const GstCount,
    out: *mut *mut c_char,
) -> GstStatus {
    handle_string(handle, out, |h| verbose_report(&h.result))
}

/// The JSON output document, as printed by `giant-steps gst --json`.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_count_json(
    handle: *const GstCount,
    out: *mut *mut c_char,
) -> GstStatus {
    handle_string(handle, out, |h| {
        to_json(&OutputDocument::new("gst", &h.input, &h.result, None))
    })
}

/// Converts `input` to step letters, binary invariants or turns, selected by
/// one of the `GST_TARGET_*` constants.
///
/// # Safety
/// `input` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_convert(
    input: *const c_char,
    target: u32,
    out: *mut *mut c_char,
) -> GstStatus {
    guard(|| {
        check_out(out)?;
        let input = read_str(input)?;
        let steps =
            parse_tunnel(input, false).map_err(|e| (GstStatus::ParseError, e.to_string()))?;
        let text = match target {
            GST_TARGET_STEPS => steps.to_string(),
            GST_TARGET_BINARY | GST_TARGET_TURNS => {
                let b = steps_to_binary(&steps)
                    .map_err(|e| (GstStatus::SimpleTunnel, e.to_string()))?;
                if target == GST_TARGET_BINARY {
                    b.to_string()
                } else {
                    binary_to_turns(&b).to_string()
                }
            }
            other => {
                return Err((
                    GstStatus::InvalidArgument,
                    format!("unknown target {other}"),
                ))
            }
        };
        *out = into_c(text);
        Ok(())
    })
}

/// The JSON output document with the corridor sub-document, as printed by
/// `giant-steps corridor --render json`.
///
/// # Safety
/// `input` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gst_corridor_json(
    input: *const c_char,
    out: *mut *mut c_char,
) -> GstStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(input)?;
        let steps =
            parse_tunnel(text, false).map_err(|e| (GstStatus::ParseError, e.to_string()))?;
        let corridor =
            build_corridor(&steps).map_err(|e| (GstStatus::SimpleTunnel, e.to_string()))?;
        let r = count_minimal_sequences(&steps);
        *out = into_c(to_json(&OutputDocument::new(
            "corridor",
            text,
            &r,
            Some(&corridor),
        )));
        Ok(())
    })
}

/// Distance and number of geodesics between Farey vertices `u` and `v`,
/// given as `p/q` strings (`1/0` is ∞).
///
/// # Safety
/// `u` and `v` must be valid C strings; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gst_farey_geodesics(
    u: *const c_char,
    v: *const c_char,
    out_distance: *mut usize,
    out_count: *mut *mut c_char,
) -> GstStatus {
    guard(|| {
        check_out(out_distance)?;
        check_out(out_count)?;
        let parse = |s: &str| {
            s.parse::<Fraction>()
                .map_err(|e| (GstStatus::InvalidFraction, format!("{s:?}: {e}")))
        };
        let (fu, fv) = (parse(read_str(u)?)?, parse(read_str(v)?)?);
        let (d, n) = farey_geodesics(&fu, &fv).map_err(|e| match e {
            FareyError::EqualVertices => (GstStatus::EqualVertices, e.to_string()),
            _ => (GstStatus::InvalidArgument, e.to_string()),
        })?;
        *out_distance = d;
        *out_count = into_c(n.to_string());
        Ok(())
    })
}

/// Message for the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn gst_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn gst_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn gst_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
