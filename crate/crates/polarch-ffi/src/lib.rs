//! C ABI over the exact synthetic-channel construction library.
//!
//! Channels are opaque handles created from the same textual specs the CLI
//! accepts (`bsc:1/4`, `bec:1/3`, `mixture:1/8@1/2+1/3@1/2`, a JSON mixture
//! object, ...). Structured results come back as JSON or CSV strings —
//! exact rationals do not fit C scalar types, and string passing keeps the
//! surface small and stable. Every returned string is owned by the caller
//! and must be released with `polarch_string_free`.
//!
//! All functions return a status code; on failure,
//! `polarch_last_error_message` yields a human-readable description for the
//! current thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use polarch::algebra::transform_by_pattern;
use polarch::channel::BscMixture;
use polarch::codec::monte_carlo_fer;
use polarch::construct::{select_frozen, synthesize_all};
use polarch::error::Error;
use polarch::pattern::PatternIndex;
use polarch::rational::{format_rational, parse_rational};
use polarch::spec::ChannelSpec;

/// Outcome of a C API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolarchStatus {
    Ok = 0,
    /// Malformed spec, pattern, JSON or numeric string.
    ParseError = 1,
    /// Arguments outside the supported domain (order, dimension, ...).
    InvalidArgument = 2,
    /// The channel has no canonical switch form.
    NotSymmetric = 3,
    /// The request is outside the explicit-construction budget.
    Unsupported = 4,
    /// A null pointer or an internal failure.
    Internal = 5,
}

/// Opaque handle to a symmetric channel in canonical switch form.
pub struct PolarchChannel {
    mixture: BscMixture,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: PolarchStatus, message: impl ToString) -> PolarchStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.to_string());
    status
}

fn fail_error(e: Error) -> PolarchStatus {
    let status = match &e {
        Error::Parse(_) => PolarchStatus::ParseError,
        Error::Asymmetric => PolarchStatus::NotSymmetric,
        Error::PatternTooLong { .. }
        | Error::PartBudgetExceeded { .. }
        | Error::UnsupportedPattern(_) => PolarchStatus::Unsupported,
        Error::InvalidParameter(_) | Error::OrderOutOfRange { .. } | Error::LengthMismatch { .. } => {
            PolarchStatus::InvalidArgument
        }
        Error::Io(_) => PolarchStatus::Internal,
    };
    fail(status, e)
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().clear());
}

/// Wraps a fallible body so panics become `Internal` instead of unwinding
/// across the ABI boundary.
fn guarded(body: impl FnOnce() -> PolarchStatus) -> PolarchStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(PolarchStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, PolarchStatus> {
    if ptr.is_null() {
        return Err(fail(PolarchStatus::Internal, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(PolarchStatus::ParseError, "argument is not valid UTF-8"))
}

fn give_string(out: *mut *mut c_char, s: String) -> PolarchStatus {
    if out.is_null() {
        return fail(PolarchStatus::Internal, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PolarchStatus::Ok
        }
        Err(_) => fail(PolarchStatus::Internal, "result contained a NUL byte"),
    }
}

fn give_channel(out: *mut *mut PolarchChannel, mixture: BscMixture) -> PolarchStatus {
    if out.is_null() {
        return fail(PolarchStatus::Internal, "null output pointer");
    }
    unsafe { *out = Box::into_raw(Box::new(PolarchChannel { mixture })) };
    PolarchStatus::Ok
}

unsafe fn borrow_channel<'a>(
    ch: *const PolarchChannel,
) -> Result<&'a PolarchChannel, PolarchStatus> {
    ch.as_ref()
        .ok_or_else(|| fail(PolarchStatus::Internal, "null channel handle"))
}

/// Library version as a caller-owned string.
#[no_mangle]
pub extern "C" fn polarch_version() -> *mut c_char {
    CString::new(env!("CARGO_PKG_VERSION")).expect("version is ASCII").into_raw()
}

/// Last error message of the current thread (empty when the last call
/// succeeded); caller-owned.
#[no_mangle]
pub extern "C" fn polarch_last_error_message() -> *mut c_char {
    let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
    CString::new(msg).unwrap_or_default().into_raw()
}

/// Releases a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn polarch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a channel spec into a handle. Matrix-backed specs must describe a
/// symmetric channel.
#[no_mangle]
pub unsafe extern "C" fn polarch_channel_parse(
    spec: *const c_char,
    out: *mut *mut PolarchChannel,
) -> PolarchStatus {
    guarded(|| {
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match ChannelSpec::parse(spec).and_then(|s| s.mixture()) {
            Ok(m) => give_channel(out, m),
            Err(e) => fail_error(e),
        }
    })
}

/// Releases a channel handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn polarch_channel_free(ch: *mut PolarchChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// Canonical switch form as a JSON mixture object (caller-owned string).
#[no_mangle]
pub unsafe extern "C" fn polarch_channel_to_json(
    ch: *const PolarchChannel,
    out: *mut *mut c_char,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let json = serde_json::to_string(&ch.mixture.to_json()).expect("mixture serializes");
        give_string(out, json)
    })
}

/// Number of sub-channels in the canonical switch.
#[no_mangle]
pub unsafe extern "C" fn polarch_channel_part_count(ch: *const PolarchChannel) -> usize {
    match ch.as_ref() {
        Some(c) => c.mixture.part_count(),
        None => 0,
    }
}

/// Reliability functionals: capacity and Bhattacharyya parameter as
/// doubles, the exact error probability as a caller-owned fraction string.
/// Any output pointer may be null to skip that value.
#[no_mangle]
pub unsafe extern "C" fn polarch_channel_metrics(
    ch: *const PolarchChannel,
    capacity: *mut f64,
    error_prob: *mut *mut c_char,
    bhattacharyya: *mut f64,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let m = ch.mixture.metrics();
        if !capacity.is_null() {
            *capacity = m.capacity;
        }
        if !bhattacharyya.is_null() {
            *bhattacharyya = m.bhattacharyya;
        }
        if !error_prob.is_null() {
            return give_string(error_prob, format_rational(&m.error_prob));
        }
        PolarchStatus::Ok
    })
}

/// Applies a transform pattern (a bit string such as "0110", leftmost bit
/// first) and returns the synthesized channel as a new handle.
#[no_mangle]
pub unsafe extern "C" fn polarch_transform(
    ch: *const PolarchChannel,
    pattern: *const c_char,
    out: *mut *mut PolarchChannel,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let pattern = match read_str(pattern) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let alpha: PatternIndex = match pattern.parse() {
            Ok(a) => a,
            Err(e) => return fail_error(e),
        };
        give_channel(out, transform_by_pattern(&ch.mixture, &alpha))
    })
}

/// Synthesizes all `2^order` channels and returns the reliability table as
/// CSV (columns `alpha,b_alpha,capacity,error_prob,bhattacharyya,phi`).
/// `max_parts` of 0 means unlimited.
#[no_mangle]
pub unsafe extern "C" fn polarch_construct_csv(
    ch: *const PolarchChannel,
    order: u32,
    max_parts: usize,
    out: *mut *mut c_char,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let cap = (max_parts > 0).then_some(max_parts);
        match synthesize_all(&ch.mixture, order, cap) {
            Ok(table) => {
                let mut buf = Vec::new();
                table.write_csv(&mut buf).expect("in-memory write");
                give_string(out, String::from_utf8(buf).expect("csv is UTF-8"))
            }
            Err(e) => fail_error(e),
        }
    })
}

/// Information/frozen split for the given dimension, as JSON.
#[no_mangle]
pub unsafe extern "C" fn polarch_frozen_json(
    ch: *const PolarchChannel,
    order: u32,
    dimension: usize,
    out: *mut *mut c_char,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let plan = match synthesize_all(&ch.mixture, order, None)
            .and_then(|t| select_frozen(&t, dimension))
        {
            Ok(p) => p,
            Err(e) => return fail_error(e),
        };
        give_string(out, serde_json::to_string(&plan.to_json()).expect("plan serializes"))
    })
}

/// Monte-Carlo encode/transmit/decode outcome as JSON
/// (`{"trials":..,"frame_errors":..,"per_index":[..]}`).
#[no_mangle]
pub unsafe extern "C" fn polarch_simulate_json(
    ch: *const PolarchChannel,
    order: u32,
    dimension: usize,
    trials: u64,
    seed: u64,
    genie: bool,
    out: *mut *mut c_char,
) -> PolarchStatus {
    guarded(|| {
        let ch = match borrow_channel(ch) {
            Ok(c) => c,
            Err(status) => return status,
        };
        if trials == 0 {
            return fail(PolarchStatus::InvalidArgument, "need at least one trial");
        }
        let sim = polarch::codec::ChannelSimulator::from_mixture(&ch.mixture);
        let outcome = match synthesize_all(&ch.mixture, order, None)
            .and_then(|t| select_frozen(&t, dimension))
            .and_then(|plan| monte_carlo_fer(&sim, &plan, trials, seed, genie))
        {
            Ok(o) => o,
            Err(e) => return fail_error(e),
        };
        give_string(out, serde_json::to_string(&outcome).expect("outcome serializes"))
    })
}

/// Exact erasure probability of the pattern transform of an erasure
/// channel, as a fraction string: the composed erasure map applied to `q`.
#[no_mangle]
pub unsafe extern "C" fn polarch_bec_erasure(
    q: *const c_char,
    pattern: *const c_char,
    out: *mut *mut c_char,
) -> PolarchStatus {
    guarded(|| {
        let q = match read_str(q) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let pattern = match read_str(pattern) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let q = match parse_rational(q) {
            Ok(r) if polarch::rational::is_probability(&r) => r,
            Ok(_) | Err(_) => {
                return fail(PolarchStatus::ParseError, "q must be a fraction in [0,1]")
            }
        };
        let alpha: PatternIndex = match pattern.parse() {
            Ok(a) => a,
            Err(e) => return fail_error(e),
        };
        let f = polarch::algebra::closed_form::bec_f_alpha(&q, &alpha);
        give_string(out, format_rational(&f))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        polarch_string_free(ptr);
        s
    }

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn parse_transform_and_metrics_round_trip() {
        unsafe {
            let mut ch: *mut PolarchChannel = std::ptr::null_mut();
            let status = polarch_channel_parse(c("bsc:1/4").as_ptr(), &mut ch);
            assert_eq!(status, PolarchStatus::Ok);
            assert_eq!(polarch_channel_part_count(ch), 1);

            let mut transformed: *mut PolarchChannel = std::ptr::null_mut();
            assert_eq!(
                polarch_transform(ch, c("1").as_ptr(), &mut transformed),
                PolarchStatus::Ok
            );
            let mut json: *mut c_char = std::ptr::null_mut();
            assert_eq!(polarch_channel_to_json(transformed, &mut json), PolarchStatus::Ok);
            assert_eq!(
                take_string(json),
                r#"{"parts":[{"crossover":"1/10","weight":"5/8"},{"crossover":"1/2","weight":"3/8"}]}"#
            );

            let mut capacity = 0.0f64;
            let mut bhatt = 0.0f64;
            let mut error: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                polarch_channel_metrics(ch, &mut capacity, &mut error, &mut bhatt),
                PolarchStatus::Ok
            );
            assert_eq!(take_string(error), "1/4");
            assert!((capacity - 0.18872187554086717).abs() < 1e-12);
            assert!((bhatt - 0.8660254037844386).abs() < 1e-12);

            polarch_channel_free(transformed);
            polarch_channel_free(ch);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut ch: *mut PolarchChannel = std::ptr::null_mut();
            assert_eq!(
                polarch_channel_parse(c("bsc:0.25").as_ptr(), &mut ch),
                PolarchStatus::ParseError
            );
            let msg = take_string(polarch_last_error_message());
            assert!(msg.contains("decimal"), "message was {msg:?}");

            assert_eq!(
                polarch_channel_parse(c("bab:1/8,1/4").as_ptr(), &mut ch),
                PolarchStatus::NotSymmetric
            );

            assert_eq!(
                polarch_channel_parse(std::ptr::null(), &mut ch),
                PolarchStatus::Internal
            );

            assert_eq!(
                polarch_channel_parse(c("bsc:1/4").as_ptr(), &mut ch),
                PolarchStatus::Ok
            );
            assert!(take_string(polarch_last_error_message()).is_empty());
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                polarch_construct_csv(ch, 99, 0, &mut out),
                PolarchStatus::InvalidArgument
            );
            polarch_channel_free(ch);
        }
    }

    #[test]
    fn construct_frozen_simulate_and_erasure() {
        unsafe {
            let mut ch: *mut PolarchChannel = std::ptr::null_mut();
            assert_eq!(
                polarch_channel_parse(c("bec:1/2").as_ptr(), &mut ch),
                PolarchStatus::Ok
            );

            let mut csv: *mut c_char = std::ptr::null_mut();
            assert_eq!(polarch_construct_csv(ch, 3, 0, &mut csv), PolarchStatus::Ok);
            let csv = take_string(csv);
            assert_eq!(csv.lines().count(), 9);
            assert!(csv.lines().nth(1).unwrap().contains("255/512"));

            let mut plan: *mut c_char = std::ptr::null_mut();
            assert_eq!(polarch_frozen_json(ch, 3, 4, &mut plan), PolarchStatus::Ok);
            let plan: serde_json::Value = serde_json::from_str(&take_string(plan)).unwrap();
            assert_eq!(plan["info_set"].as_array().unwrap().len(), 4);

            let mut sim: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                polarch_simulate_json(ch, 3, 4, 200, 1, true, &mut sim),
                PolarchStatus::Ok
            );
            let sim: serde_json::Value = serde_json::from_str(&take_string(sim)).unwrap();
            assert_eq!(sim["trials"], 200);

            let mut f: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                polarch_bec_erasure(c("1/2").as_ptr(), c("0110").as_ptr(), &mut f),
                PolarchStatus::Ok
            );
            assert_eq!(take_string(f), "34911/65536");

            polarch_channel_free(ch);
            polarch_channel_free(std::ptr::null_mut());
            polarch_string_free(std::ptr::null_mut());
        }
    }
}
