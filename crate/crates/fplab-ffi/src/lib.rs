//! C ABI over the core library: classify type vectors, read off the
//! predicted invariants, and cross-check a configuration with the rank
//! oracle, all through opaque handles and plain integer buffers.
//!
//! Conventions, uniform across every function here:
//!
//! * Every function returns an [`FplabStatus`]; `FPLAB_STATUS_OK` is 0.
//!   On any failure a thread-local message is set, readable through
//!   [`fplab_last_error_message`] until the next call on that thread.
//! * Sequences are returned through caller-owned buffers with the
//!   two-call protocol: pass `cap = 0` (or a too-small buffer) and the
//!   required length comes back through `written` together with
//!   `FPLAB_STATUS_BUFFER_TOO_SMALL`; call again with enough room.
//! * Handles from [`fplab_classify_double`] are freed with
//!   [`fplab_classification_free`] and are never touched by other
//!   threads unless the caller synchronizes.
//! * Panics never cross the boundary; they surface as
//!   `FPLAB_STATUS_PANIC`.

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use fplab::config::Configuration;
use fplab::oracle::{hilbert_function, ArithmeticMode, RankEngine};
use fplab::typevec::{DoubleClassification, PseudoTypeVector, TypeVector};

/// Result of every call in this interface.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FplabStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input vector is malformed (empty, unordered, zero entry, ...).
    InvalidInput = 2,
    /// The requested quantity is not determined by the type vector.
    NotUnique = 3,
    /// The output buffer is too small; `written` holds the needed length.
    BufferTooSmall = 4,
    /// The oracle computation failed; see `fplab_last_error_message`.
    OracleError = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Opaque classification of the double scheme over a type vector.
pub struct FplabClassification {
    inner: DoubleClassification,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|slot| {
        let mut bytes = slot.borrow_mut();
        bytes.clear();
        bytes.extend_from_slice(msg.as_bytes());
        bytes.push(0);
    });
}

fn guard(f: impl FnOnce() -> FplabStatus) -> FplabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the C boundary");
            FplabStatus::Panic
        }
    }
}

/// Reads an entries pointer into a Vec, or reports why it cannot.
///
/// # Safety
/// `entries` must point to `len` readable u32 values when non-null.
unsafe fn read_entries(entries: *const u32, len: usize) -> Result<Vec<u32>, FplabStatus> {
    if entries.is_null() {
        set_error("entries pointer is null");
        return Err(FplabStatus::NullArgument);
    }
    Ok(slice::from_raw_parts(entries, len).to_vec())
}

/// Copies `values` into `buf` under the two-call protocol.
///
/// # Safety
/// `buf` must point to `cap` writable u32 slots when non-null, and
/// `written` must be a valid pointer.
unsafe fn fill(values: &[u32], buf: *mut u32, cap: usize, written: *mut usize) -> FplabStatus {
    if written.is_null() {
        set_error("written pointer is null");
        return FplabStatus::NullArgument;
    }
    *written = values.len();
    if buf.is_null() || cap < values.len() {
        set_error("buffer too small; `written` holds the required length");
        return FplabStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    FplabStatus::Ok
}

/// Version of the underlying library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fplab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, NUL-terminated.
/// Valid until the next call into this library from the same thread.
/// Never null; empty string when no failure has been recorded.
#[no_mangle]
pub extern "C" fn fplab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        let mut bytes = slot.borrow_mut();
        if bytes.is_empty() {
            bytes.push(0);
        }
        bytes.as_ptr() as *const c_char
    })
}

/// First difference of the standard O-sequence of a pseudo type vector
/// (`entries` weakly increasing, no value three times).
#[no_mangle]
pub unsafe extern "C" fn fplab_standard_osequence(
    entries: *const u32,
    len: usize,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> FplabStatus {
    guard(|| {
        let values = match read_entries(entries, len) {
            Ok(v) => v,
            Err(status) => return status,
        };
        match PseudoTypeVector::new(values) {
            Ok(p) => fill(&p.standard_osequence(), buf, cap, written),
            Err(err) => {
                set_error(&err.to_string());
                FplabStatus::InvalidInput
            }
        }
    })
}

/// Classifies the double scheme over a strictly increasing type vector.
/// On success `*out` owns a handle that must be released with
/// [`fplab_classification_free`].
#[no_mangle]
pub unsafe extern "C" fn fplab_classify_double(
    entries: *const u32,
    len: usize,
    out: *mut *mut FplabClassification,
) -> FplabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return FplabStatus::NullArgument;
        }
        let values = match read_entries(entries, len) {
            Ok(v) => v,
            Err(status) => return status,
        };
        match TypeVector::new(values) {
            Ok(t) => {
                let handle = Box::new(FplabClassification { inner: t.classify_double() });
                *out = Box::into_raw(handle);
                FplabStatus::Ok
            }
            Err(err) => {
                set_error(&err.to_string());
                FplabStatus::InvalidInput
            }
        }
    })
}

/// Releases a classification handle.  Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_free(handle: *mut FplabClassification) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

unsafe fn borrow<'a>(
    handle: *const FplabClassification,
) -> Result<&'a DoubleClassification, FplabStatus> {
    if handle.is_null() {
        set_error("classification handle is null");
        return Err(FplabStatus::NullArgument);
    }
    Ok(&(*handle).inner)
}

/// Whether every configuration of this type gives the double scheme the
/// same Hilbert function.
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_hf_unique(
    handle: *const FplabClassification,
    out: *mut bool,
) -> FplabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return FplabStatus::NullArgument;
        }
        match borrow(handle) {
            Ok(c) => {
                *out = c.hf_unique;
                FplabStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Whether the graded Betti numbers are forced as well.
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_betti_unique(
    handle: *const FplabClassification,
    out: *mut bool,
) -> FplabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return FplabStatus::NullArgument;
        }
        match borrow(handle) {
            Ok(c) => {
                *out = c.betti_unique;
                FplabStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Castelnuovo-Mumford regularity of the double scheme (twice the
/// largest entry; independent of the configuration).
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_regularity(
    handle: *const FplabClassification,
    out: *mut u32,
) -> FplabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return FplabStatus::NullArgument;
        }
        match borrow(handle) {
            Ok(c) => {
                *out = c.regularity;
                FplabStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Number of minimal generators; `FPLAB_STATUS_NOT_UNIQUE` when the
/// Betti numbers vary with the configuration.
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_min_generators(
    handle: *const FplabClassification,
    out: *mut u32,
) -> FplabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return FplabStatus::NullArgument;
        }
        match borrow(handle) {
            Ok(c) => match c.min_gen_count {
                Some(n) => {
                    *out = n;
                    FplabStatus::Ok
                }
                None => {
                    set_error("generator count is not determined by this type");
                    FplabStatus::NotUnique
                }
            },
            Err(status) => status,
        }
    })
}

/// First difference of the predicted Hilbert function (the standard
/// O-sequence value; the forced one exactly when `hf_unique`).
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_delta_h(
    handle: *const FplabClassification,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> FplabStatus {
    guard(|| match borrow(handle) {
        Ok(c) => fill(&c.delta_h, buf, cap, written),
        Err(status) => status,
    })
}

/// The forced Betti table: generator degrees into `gen_buf`, syzygy
/// degrees into `syz_buf`.  `FPLAB_STATUS_NOT_UNIQUE` when the table is
/// not determined by the type.
#[no_mangle]
pub unsafe extern "C" fn fplab_classification_betti(
    handle: *const FplabClassification,
    gen_buf: *mut u32,
    gen_cap: usize,
    gen_written: *mut usize,
    syz_buf: *mut u32,
    syz_cap: usize,
    syz_written: *mut usize,
) -> FplabStatus {
    guard(|| match borrow(handle) {
        Ok(c) => match &c.betti {
            Some(table) => {
                let first = fill(&table.beta1, gen_buf, gen_cap, gen_written);
                let second = fill(&table.beta2, syz_buf, syz_cap, syz_written);
                if first != FplabStatus::Ok {
                    first
                } else {
                    second
                }
            }
            None => {
                set_error("betti numbers are not determined by this type");
                FplabStatus::NotUnique
            }
        },
        Err(status) => status,
    })
}

/// Which concrete realization [`fplab_oracle_double_delta_h`] builds.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FplabConfigKind {
    /// Rows stacked left-aligned on horizontal lines.
    Standard = 0,
    /// Rows aligned so the diagonal points are collinear.
    SpreadOut = 1,
    /// Horizontal lines with pseudo-random abscissas (uses `seed`).
    Generic = 2,
}

/// Builds a configuration of the given type, doubles every point, and
/// computes the difference Hilbert function with the rank oracle
/// (exact rational arithmetic when `exact`, randomized modular
/// otherwise).  This is the expensive call of the interface.
#[no_mangle]
pub unsafe extern "C" fn fplab_oracle_double_delta_h(
    entries: *const u32,
    len: usize,
    kind: FplabConfigKind,
    seed: u64,
    exact: bool,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> FplabStatus {
    guard(|| {
        let values = match read_entries(entries, len) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let t = match TypeVector::new(values.clone()) {
            Ok(t) => t,
            Err(err) => {
                set_error(&err.to_string());
                return FplabStatus::InvalidInput;
            }
        };
        let config = match kind {
            FplabConfigKind::Standard => Ok(Configuration::standard_linear(&t)),
            FplabConfigKind::SpreadOut => Ok(Configuration::spread_out(&t)),
            FplabConfigKind::Generic => PseudoTypeVector::new(values)
                .and_then(|rows| Configuration::generic_pseudo(&rows, seed)),
        };
        let config = match config {
            Ok(c) => c,
            Err(err) => {
                set_error(&err.to_string());
                return FplabStatus::OracleError;
            }
        };
        let mode = if exact { ArithmeticMode::Exact } else { ArithmeticMode::Modular };
        let engine = RankEngine::new(mode, seed);
        match hilbert_function(&config.double(), &engine) {
            Ok(hf) => fill(&hf.delta_h, buf, cap, written),
            Err(err) => {
                set_error(&err.to_string());
                FplabStatus::OracleError
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    unsafe fn classify(entries: &[u32]) -> *mut FplabClassification {
        let mut handle = ptr::null_mut();
        let status = fplab_classify_double(entries.as_ptr(), entries.len(), &mut handle);
        assert_eq!(status, FplabStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    #[test]
    fn classify_and_read_back_2_4_5() {
        unsafe {
            let handle = classify(&[2, 4, 5]);
            let mut flag = false;
            assert_eq!(fplab_classification_hf_unique(handle, &mut flag), FplabStatus::Ok);
            assert!(flag);
            assert_eq!(fplab_classification_betti_unique(handle, &mut flag), FplabStatus::Ok);
            assert!(flag);
            let mut reg = 0;
            assert_eq!(fplab_classification_regularity(handle, &mut reg), FplabStatus::Ok);
            assert_eq!(reg, 10);

            // two-call protocol on the delta h buffer
            let mut needed = 0usize;
            assert_eq!(
                fplab_classification_delta_h(handle, ptr::null_mut(), 0, &mut needed),
                FplabStatus::BufferTooSmall
            );
            assert_eq!(needed, 10);
            let mut buf = vec![0u32; needed];
            assert_eq!(
                fplab_classification_delta_h(handle, buf.as_mut_ptr(), buf.len(), &mut needed),
                FplabStatus::Ok
            );
            assert_eq!(buf, vec![1, 2, 3, 4, 5, 6, 6, 3, 2, 1]);

            let mut gens = vec![0u32; 16];
            let mut syzs = vec![0u32; 16];
            let (mut ng, mut ns) = (0usize, 0usize);
            assert_eq!(
                fplab_classification_betti(
                    handle,
                    gens.as_mut_ptr(),
                    gens.len(),
                    &mut ng,
                    syzs.as_mut_ptr(),
                    syzs.len(),
                    &mut ns
                ),
                FplabStatus::Ok
            );
            assert_eq!(&gens[..ng], &[6, 7, 7, 7, 9, 10]);
            assert_eq!(&syzs[..ns], &[8, 8, 9, 10, 11]);

            let mut mg = 0;
            assert_eq!(fplab_classification_min_generators(handle, &mut mg), FplabStatus::Ok);
            assert_eq!(mg as usize, ng);
            fplab_classification_free(handle);
        }
    }

    #[test]
    fn not_unique_type_reports_not_unique() {
        unsafe {
            let handle = classify(&[2, 3, 4, 5]);
            let mut flag = true;
            assert_eq!(fplab_classification_betti_unique(handle, &mut flag), FplabStatus::Ok);
            assert!(!flag);
            let mut n = 0;
            assert_eq!(
                fplab_classification_min_generators(handle, &mut n),
                FplabStatus::NotUnique
            );
            let msg = CStr::from_ptr(fplab_last_error_message());
            assert!(msg.to_str().unwrap().contains("not determined"));
            fplab_classification_free(handle);
        }
    }

    #[test]
    fn invalid_and_null_inputs_are_rejected() {
        unsafe {
            let mut handle = ptr::null_mut();
            assert_eq!(
                fplab_classify_double([5u32, 2].as_ptr(), 2, &mut handle),
                FplabStatus::InvalidInput
            );
            assert_eq!(
                fplab_classify_double(ptr::null(), 3, &mut handle),
                FplabStatus::NullArgument
            );
            let entries = [1u32, 2];
            assert_eq!(
                fplab_classify_double(entries.as_ptr(), 2, ptr::null_mut()),
                FplabStatus::NullArgument
            );
            // freeing null is a no-op
            fplab_classification_free(ptr::null_mut());
        }
    }

    #[test]
    fn standard_osequence_through_the_boundary() {
        unsafe {
            let entries = [3u32, 6, 6, 7, 12, 14];
            let mut needed = 0usize;
            let status = fplab_standard_osequence(
                entries.as_ptr(),
                entries.len(),
                ptr::null_mut(),
                0,
                &mut needed,
            );
            assert_eq!(status, FplabStatus::BufferTooSmall);
            let mut buf = vec![0u32; needed];
            assert_eq!(
                fplab_standard_osequence(
                    entries.as_ptr(),
                    entries.len(),
                    buf.as_mut_ptr(),
                    buf.len(),
                    &mut needed
                ),
                FplabStatus::Ok
            );
            assert_eq!(buf, vec![1, 2, 3, 4, 5, 6, 6, 6, 5, 3, 2, 2, 2, 1]);

            // a value repeated three times is not a pseudo type vector
            let bad = [2u32, 2, 2];
            assert_eq!(
                fplab_standard_osequence(bad.as_ptr(), 3, ptr::null_mut(), 0, &mut needed),
                FplabStatus::InvalidInput
            );
        }
    }

    #[test]
    fn oracle_round_trip_matches_the_prediction() {
        unsafe {
            let entries = [1u32, 2, 4];
            let handle = classify(&entries);
            let mut needed = 0usize;
            fplab_classification_delta_h(handle, ptr::null_mut(), 0, &mut needed);
            let mut predicted = vec![0u32; needed];
            fplab_classification_delta_h(handle, predicted.as_mut_ptr(), predicted.len(), &mut needed);

            let mut oracle = vec![0u32; needed];
            let status = fplab_oracle_double_delta_h(
                entries.as_ptr(),
                entries.len(),
                FplabConfigKind::Generic,
                3,
                false,
                oracle.as_mut_ptr(),
                oracle.len(),
                &mut needed,
            );
            assert_eq!(status, FplabStatus::Ok);
            assert_eq!(oracle[..needed], predicted[..]);
            fplab_classification_free(handle);
        }
    }

    #[test]
    fn version_is_a_readable_c_string() {
        unsafe {
            let v = CStr::from_ptr(fplab_version());
            assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        }
    }

    #[test]
    fn committed_header_matches_the_generated_one() {
        let generated = include_str!(concat!(env!("OUT_DIR"), "/fplab.h"));
        let committed = include_str!("../include/fplab.h");
        assert_eq!(
            generated, committed,
            "include/fplab.h is stale; copy the OUT_DIR header over it"
        );
    }
}
