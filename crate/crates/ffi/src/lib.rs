//! C ABI over `nskoszul`.
//!
//! Objects cross the boundary as opaque pointers that the caller releases
//! with the matching `*_free` function. Every fallible call returns an
//! [`NskStatus`]; on failure a message is available from [`nsk_last_error`]
//! on the same thread until the next call. Strings returned through out
//! parameters are owned by the caller and released with [`nsk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nskoszul::cli::{koszul_report_json, parse_ring_spec};
use nskoszul::construction::construct_gr_betti;
use nskoszul::koszul_check::{default_bound, koszul_verdict, KoszulReport, Verdict};
use nskoszul::truncation::trunc_gens;
use nskoszul::{Error, RingSpec};

/// Opaque ring handle.
pub struct NskRing(RingSpec);

/// Opaque Koszulness report handle.
pub struct NskReport(KoszulReport);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NskStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NskVerdict {
    True = 0,
    False = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NskVerdictKind {
    LinAcyclic = 0,
    GrLinear = 1,
    ConstructionMatch = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NskStatus {
    match err {
        Error::Parse { .. } => NskStatus::Parse,
        Error::Internal(_) => NskStatus::Internal,
        _ => NskStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (NskStatus, String)>) -> NskStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NskStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            NskStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (NskStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (NskStatus, String) {
    (NskStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (NskStatus, String)> {
    let c = CString::new(s).map_err(|_| (NskStatus::Internal, "string with interior nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nsk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a ring such as `x=1,y=3@32003`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nsk_ring_parse(spec: *const c_char, out: *mut *mut NskRing) -> NskStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(spec).to_str().map_err(|e| (NskStatus::InvalidUtf8, e.to_string()))?;
        let ring = parse_ring_spec(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NskRing(ring)));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from [`nsk_ring_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nsk_ring_free(ring: *mut NskRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nsk_ring_num_vars(ring: *const NskRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.num_vars())
}

/// Runs the Koszulness tests on the truncation at `e`. A negative `bound`
/// selects the default bound.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nsk_koszul_verdict(ring: *const NskRing, e: i64, bound: i64, out: *mut *mut NskReport) -> NskStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let bound = if bound < 0 { default_bound(&ring.0, e) } else { bound };
        let report = koszul_verdict(&ring.0, e, bound).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NskReport(report)));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nsk_report_verdict(report: *const NskReport, kind: NskVerdictKind, out: *mut NskVerdict) -> NskStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let v = &report.0.verdicts;
        let v = match kind {
            NskVerdictKind::LinAcyclic => v.lin_acyclic,
            NskVerdictKind::GrLinear => v.gr_linear,
            NskVerdictKind::ConstructionMatch => v.construction_match,
        };
        *out = match v {
            Verdict::True => NskVerdict::True,
            Verdict::False => NskVerdict::False,
            Verdict::Inconclusive => NskVerdict::Inconclusive,
        };
        Ok(())
    })
}

/// The report in the command-line tool's JSON schema.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer; free the result
/// with [`nsk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nsk_report_to_json(report: *const NskReport, with_trace: bool, out: *mut *mut c_char) -> NskStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out_string(out, koszul_report_json(&report.0, with_trace).to_string())
    })
}

/// # Safety
/// `report` must come from [`nsk_koszul_verdict`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nsk_report_free(report: *mut NskReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Predicted gr Betti table as a JSON array of `{"i","j","rank"}`.
///
/// # Safety
/// `weights` must point to `len` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nsk_construct_gr_betti(weights: *const u32, len: usize, e: i64, out: *mut *mut c_char) -> NskStatus {
    guard(|| {
        if weights.is_null() {
            return Err(null("weights"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let w = std::slice::from_raw_parts(weights, len);
        let (table, _) = construct_gr_betti(w, e).map_err(lib_err)?;
        out_string(out, serde_json::to_string(&table).expect("serializable"))
    })
}

/// Minimal generators of the truncation at `e` as a JSON array of exponent vectors.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nsk_trunc_gens_json(ring: *const NskRing, e: i64, out: *mut *mut c_char) -> NskStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let gens: Vec<Vec<u16>> = trunc_gens(&ring.0, e).iter().map(|m| m.exponents().to_vec()).collect();
        out_string(out, serde_json::to_string(&gens).expect("serializable"))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nsk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
