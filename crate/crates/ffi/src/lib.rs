//! C ABI over the `causalq` engine.
//!
//! Topologies live behind an opaque `CqTopology` handle created by
//! `cq_topology_from_json` or `cq_topology_builtin` and released with
//! `cq_topology_free`. Every fallible call returns a `CqStatus`; the message
//! for the most recent failure on the calling thread is available from
//! `cq_last_error`. Strings returned through `char **` out-parameters are
//! owned by the caller and must be released with `cq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use causalq::{
    build_grover, builtin, export_qasm, optimal_iterations, parse_topology, run_query,
    synthesize_marker, verify, Error, FixedMode, Iterations, Orientation, Precision, QueryOptions,
    Topology, DEFAULT_ENUMERATION_BOUND, DEFAULT_QUBIT_LIMIT,
};

/// Result code of every fallible `cq_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidTopology = 3,
    ResourceLimit = 4,
    NothingToAmplify = 5,
    VerificationFailed = 6,
    Internal = 7,
}

/// Opaque handle to a validated topology.
pub struct CqTopology {
    inner: Topology,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(error: &Error) -> CqStatus {
    match error {
        Error::Topology(causalq::TopologyError::BoundExceeded { .. })
        | Error::Circuit(_)
        | Error::Sim(_) => CqStatus::ResourceLimit,
        Error::Topology(_) | Error::Format(_) => CqStatus::InvalidTopology,
        Error::Plan(_) => CqStatus::NothingToAmplify,
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), (CqStatus, String)>) -> CqStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CqStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CqStatus::Internal
        }
    }
}

fn fail(error: Error) -> (CqStatus, String) {
    (status_of(&error), error.to_string())
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, (CqStatus, String)> {
    if text.is_null() {
        return Err((CqStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| (CqStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a>(topology: *const CqTopology) -> Result<&'a Topology, (CqStatus, String)> {
    topology
        .as_ref()
        .map(|t| &t.inner)
        .ok_or_else(|| (CqStatus::NullPointer, "null topology handle".into()))
}

fn null_out() -> (CqStatus, String) {
    (CqStatus::NullPointer, "null output pointer".into())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), (CqStatus, String)> {
    if out.is_null() {
        return Err(null_out());
    }
    let owned = CString::new(text).map_err(|e| (CqStatus::Internal, e.to_string()))?;
    *out = owned.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut CqTopology, topology: Topology) -> Result<(), (CqStatus, String)> {
    if out.is_null() {
        return Err(null_out());
    }
    *out = Box::into_raw(Box::new(CqTopology { inner: topology }));
    Ok(())
}

fn iterations_from(raw: i64) -> Iterations {
    if raw < 0 {
        Iterations::Auto
    } else {
        Iterations::Fixed(raw as usize)
    }
}

/// Message describing the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses and validates a topology JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cq_topology_from_json(
    json: *const c_char,
    out: *mut *mut CqTopology,
) -> CqStatus {
    guard(|| {
        let text = read_str(json)?;
        let topology = parse_topology(text).map_err(fail)?;
        write_handle(out, topology)
    })
}

/// Loads a built-in topology: `bubble`, `triangle` or `four-eloop`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cq_topology_builtin(
    name: *const c_char,
    out: *mut *mut CqTopology,
) -> CqStatus {
    guard(|| {
        let name = read_str(name)?;
        let topology = builtin(name)
            .ok_or_else(|| (CqStatus::InvalidTopology, format!("unknown built-in topology `{name}`")))?;
        write_handle(out, topology)
    })
}

/// Releases a handle. Passing null is a no-op.
///
/// # Safety
/// `topology` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cq_topology_free(topology: *mut CqTopology) {
    if !topology.is_null() {
        drop(Box::from_raw(topology));
    }
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `topology` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cq_topology_edge_count(topology: *const CqTopology) -> usize {
    topology.as_ref().map_or(0, |t| t.inner.edge_count())
}

/// Whether `bits` (bit i = edge i, 1 = reference direction) is acyclic.
///
/// # Safety
/// `topology` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cq_is_acyclic(
    topology: *const CqTopology,
    bits: u64,
    out: *mut bool,
) -> CqStatus {
    guard(|| {
        let t = handle(topology)?;
        let orientation = Orientation::from_bits(bits, t.edge_count());
        let acyclic = t.is_acyclic(&orientation).map_err(|e| fail(e.into()))?;
        *out.as_mut().ok_or_else(null_out)? = acyclic;
        Ok(())
    })
}

/// Counts all acyclic orientations and the causal ones marked by the default
/// oracle (fixed edge applied).
///
/// # Safety
/// `topology` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cq_count_causal(
    topology: *const CqTopology,
    acyclic_total: *mut u64,
    causal_marked: *mut u64,
) -> CqStatus {
    guard(|| {
        let t = handle(topology)?;
        let total = t.enumerate_acyclic(DEFAULT_ENUMERATION_BOUND).map_err(|e| fail(e.into()))?;
        let spec = synthesize_marker(t);
        let marked = t
            .with_fixed(spec.fixed)
            .and_then(|t| t.enumerate_causal())
            .map_err(|e| fail(e.into()))?;
        *acyclic_total.as_mut().ok_or_else(null_out)? = total.len() as u64;
        *causal_marked.as_mut().ok_or_else(null_out)? = marked.len() as u64;
        Ok(())
    })
}

/// Optimal Grover iteration count for `marked` solutions out of `size`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cq_optimal_iterations(size: u64, marked: u64, out: *mut u64) -> CqStatus {
    guard(|| {
        let r = optimal_iterations(size, marked).map_err(|e| fail(e.into()))?;
        *out.as_mut().ok_or_else(null_out)? = r as u64;
        Ok(())
    })
}

/// OpenQASM 3.0 text of the query circuit. Negative `iterations` selects
/// the optimal count.
///
/// # Safety
/// `topology` must be a live handle and `out` writable; free the result
/// with `cq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cq_export_qasm(
    topology: *const CqTopology,
    iterations: i64,
    out: *mut *mut c_char,
) -> CqStatus {
    guard(|| {
        let t = handle(topology)?;
        let spec = synthesize_marker(t);
        let r = match iterations_from(iterations) {
            Iterations::Fixed(r) => r,
            Iterations::Auto => {
                let marked = t
                    .with_fixed(spec.fixed)
                    .and_then(|t| t.enumerate_causal())
                    .map_err(|e| fail(e.into()))?;
                causalq::GroverPlan::new(1u64 << t.edge_count(), marked.len() as u64, Iterations::Auto)
                    .map_err(|e| fail(e.into()))?
                    .iterations
            }
        };
        let circuit = build_grover(&spec, r, DEFAULT_QUBIT_LIMIT).map_err(|e| fail(e.into()))?;
        write_string(out, export_qasm(&circuit))
    })
}

/// Simulates and samples the query; writes the report as JSON. Negative
/// `iterations` selects the optimal count.
///
/// # Safety
/// `topology` must be a live handle and `report_json` writable; free the
/// result with `cq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cq_run_query(
    topology: *const CqTopology,
    shots: u64,
    seed: u64,
    iterations: i64,
    single_precision: bool,
    report_json: *mut *mut c_char,
) -> CqStatus {
    guard(|| {
        let t = handle(topology)?;
        let options = QueryOptions {
            shots,
            seed,
            iterations: iterations_from(iterations),
            precision: if single_precision { Precision::Single } else { Precision::Double },
            qubit_limit: DEFAULT_QUBIT_LIMIT,
            fixed: FixedMode::Default,
        };
        let report = run_query(t, &options).map_err(fail)?;
        let json = serde_json::to_string(&report).map_err(|e| (CqStatus::Internal, e.to_string()))?;
        write_string(report_json, json)
    })
}

/// Cross-checks the oracle against classical enumeration. Returns
/// `CQ_STATUS_VERIFICATION_FAILED` on mismatch; the report is written either
/// way when `report_json` is non-null.
///
/// # Safety
/// `topology` must be a live handle; `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn cq_verify(
    topology: *const CqTopology,
    report_json: *mut *mut c_char,
) -> CqStatus {
    guard(|| {
        let t = handle(topology)?;
        let report = verify(t).map_err(fail)?;
        if !report_json.is_null() {
            let json =
                serde_json::to_string(&report).map_err(|e| (CqStatus::Internal, e.to_string()))?;
            write_string(report_json, json)?;
        }
        if report.pass {
            Ok(())
        } else {
            Err((CqStatus::VerificationFailed, "oracle marked set differs from causal set".into()))
        }
    })
}

/// Frees a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `text` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cq_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let mut out: *mut CqTopology = ptr::null_mut();
        let status = unsafe { cq_topology_from_json(ptr::null(), &mut out) };
        assert_eq!(status, CqStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(cq_last_error()) };
        assert!(msg.to_str().unwrap().contains("null"));
        assert_eq!(unsafe { cq_topology_edge_count(ptr::null()) }, 0);
    }
}
