//! C interface to `tensor-duality`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`TdStatus`]; on failure [`td_last_error_message`] describes
//! the problem. Strings returned through `char **` outputs are owned by the
//! caller and must be released with [`td_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tensor_duality::io::{read_json, AmplitudeJson, PropagatorJson};
use tensor_duality::model::{duality_check, gaussian_expectation, Amplitude, ExpectationOptions, Propagator, StrandedGraph};
use tensor_duality::oracle::compare_with_pipeline;
use tensor_duality::rational::{format_q, q};
use tensor_duality::young::YoungDiagram;
use tensor_duality::{Error, Grading};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    CapExceeded = 5,
    Degenerate = 6,
    Panic = 7,
}

/// A stranded graph: the contraction pattern of an invariant.
pub struct TdGraph {
    inner: StrandedGraph,
}

/// A propagator: a weighted sum of pairings of two tensors' indices.
pub struct TdPropagator {
    inner: Propagator,
}

/// A Gaussian expectation value, exact in `N`.
pub struct TdAmplitude {
    inner: Amplitude,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> TdStatus {
    match e {
        Error::Parse(_) => TdStatus::Parse,
        Error::CapExceeded { .. } => TdStatus::CapExceeded,
        Error::DegenerateN(_) | Error::Singular(_) | Error::NonIntegerEigenvalue(_) => TdStatus::Degenerate,
        _ => TdStatus::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (TdStatus, String)>) -> TdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TdStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TdStatus::Panic
        }
    }
}

fn lib<T>(r: tensor_duality::Result<T>) -> Result<T, (TdStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TdStatus, String) {
    (TdStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (TdStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (TdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TdStatus, String)> {
    let c = CString::new(s).map_err(|_| (TdStatus::InvalidInput, "string contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn grading(b: u8) -> Result<Grading, (TdStatus, String)> {
    lib(Grading::from_bit(b))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn td_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn td_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned through a `char **` output of this
/// library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a stranded graph from JSON such as
/// `{"D":2,"vertices":2,"strands":[[[1,1],[2,1]],[[1,2],[2,2]]]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_graph_from_json(json: *const c_char, out: *mut *mut TdGraph) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let inner: StrandedGraph = lib(read_json(text))?;
        write_out(out, TdGraph { inner });
        Ok(())
    })
}

/// Number of strands per tensor, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_graph_strands(graph: *const TdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.strand_count())
}

/// Number of tensors, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_graph_vertices(graph: *const TdGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `graph` must be null or a handle from [`td_graph_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_graph_free(graph: *mut TdGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Parses a propagator on `d` strands from JSON: either explicit
/// `{"terms":[{"pairs":[[1,3],[2,4]],"gamma":"1"}]}` or a named projector
/// `{"projector":{"lambda":[2]}}`. The grading bit `b` only matters for
/// projectors built at a concrete `N`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_propagator_from_json(json: *const c_char, d: usize, b: u8, out: *mut *mut TdPropagator) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let spec: PropagatorJson = lib(read_json(text))?;
        let inner = lib(spec.to_propagator(d, grading(b)?))?;
        write_out(out, TdPropagator { inner });
        Ok(())
    })
}

/// # Safety
/// `propagator` must be null or a handle from [`td_propagator_from_json`],
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_propagator_free(propagator: *mut TdPropagator) {
    if !propagator.is_null() {
        drop(Box::from_raw(propagator));
    }
}

/// Gaussian expectation of the invariant `graph` with propagator
/// `propagator` at grading `b`, using `threads` workers (0 means 1).
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_gaussian_expectation(
    graph: *const TdGraph,
    propagator: *const TdPropagator,
    b: u8,
    threads: usize,
    out: *mut *mut TdAmplitude,
) -> TdStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        let propagator = propagator.as_ref().ok_or_else(|| null("propagator"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let options = ExpectationOptions {
            reference: None,
            threads: threads.max(1),
        };
        let inner = lib(gaussian_expectation(&graph.inner, &propagator.inner, grading(b)?, &options))?;
        write_out(out, TdAmplitude { inner });
        Ok(())
    })
}

/// Text form of an amplitude, e.g. `N^2 + N`.
///
/// # Safety
/// `amplitude` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_amplitude_to_string(amplitude: *const TdAmplitude, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        let amplitude = amplitude.as_ref().ok_or_else(|| null("amplitude"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, amplitude.inner.value().display_in("N"))
    })
}

/// JSON form of an amplitude: grading bit, coefficient map and text.
///
/// # Safety
/// `amplitude` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_amplitude_to_json(amplitude: *const TdAmplitude, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        let amplitude = amplitude.as_ref().ok_or_else(|| null("amplitude"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = serde_json::to_string(&AmplitudeJson::from(&amplitude.inner))
            .map_err(|e| (TdStatus::Parse, e.to_string()))?;
        write_string(out, json)
    })
}

/// Value of an amplitude at a concrete `N`, as a `"p/q"` string.
///
/// # Safety
/// `amplitude` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_amplitude_eval(amplitude: *const TdAmplitude, n: i64, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        let amplitude = amplitude.as_ref().ok_or_else(|| null("amplitude"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let value = amplitude
            .inner
            .eval(&q(n))
            .ok_or_else(|| (TdStatus::Degenerate, format!("amplitude has a pole at N = {n}")))?;
        write_string(out, format_q(&value))
    })
}

/// # Safety
/// `amplitude` must be null or a handle from [`td_gaussian_expectation`],
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_amplitude_free(amplitude: *mut TdAmplitude) {
    if !amplitude.is_null() {
        drop(Box::from_raw(amplitude));
    }
}

/// Writes whether the `b = 1` expectation equals the `b = 0` one at `-N`.
///
/// # Safety
/// Handles must be live; `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_duality_check(
    graph: *const TdGraph,
    propagator: *const TdPropagator,
    threads: usize,
    holds: *mut bool,
) -> TdStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        let propagator = propagator.as_ref().ok_or_else(|| null("propagator"))?;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let options = ExpectationOptions {
            reference: None,
            threads: threads.max(1),
        };
        let report = lib(duality_check(&graph.inner, &propagator.inner, &options))?;
        *holds = report.holds;
        Ok(())
    })
}

/// Compares the face-counting expectation at `n` with brute-force index
/// summation and writes whether they agree.
///
/// # Safety
/// Handles must be live; `agrees` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_oracle_check(
    graph: *const TdGraph,
    propagator: *const TdPropagator,
    n: usize,
    b: u8,
    agrees: *mut bool,
) -> TdStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        let propagator = propagator.as_ref().ok_or_else(|| null("propagator"))?;
        if agrees.is_null() {
            return Err(null("agrees"));
        }
        let cmp = lib(compare_with_pipeline(&graph.inner, &propagator.inner, n, grading(b)?, &ExpectationOptions::default()))?;
        *agrees = cmp.agrees();
        Ok(())
    })
}

/// Factored `GL(N)` dimension of the Young diagram with comma-separated
/// rows `lambda`, e.g. `"2,1,1"`.
///
/// # Safety
/// `lambda` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_dimension(lambda: *const c_char, out: *mut *mut c_char) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(lambda, "lambda")?;
        let lambda = lib(YoungDiagram::parse(text))?;
        write_string(out, lambda.gl_dimension_factored())
    })
}
