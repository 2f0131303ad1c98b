//! C ABI over the `berezin` crate.
//!
//! Operators are parsed from their text form into opaque [`BzOperator`]
//! handles. Every fallible call returns a [`BzStatus`]; on failure the
//! message is available from [`bz_last_error_message`] on the same thread
//! until the next failing call. Panics are caught at the boundary and
//! reported as [`BzStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use berezin::cli::dsl::{parse_operator_spec, render};
use berezin::geometry::{convexity_classify, sample_range, SampleGrid, Verdict};
use berezin::kernel::kernel_value;
use berezin::series_oracle::berezin_via_series;
use berezin::{berezin_transform, predict_range, DiskPoint, Error, OperatorSpec, RangeDescription, SpaceParams};
use num_complex::Complex64;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    OutsideDisc = 4,
    Unsupported = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Parsed operator. Create with [`bz_operator_parse`], release with
/// [`bz_operator_free`].
pub struct BzOperator {
    spec: OperatorSpec,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BzComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for BzComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<BzComplex> for Complex64 {
    fn from(z: BzComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzShape {
    ClosedInterval = 0,
    /// `[lo, hi)`
    HalfOpenInterval = 1,
    /// `(lo, hi]`
    LeftOpenInterval = 2,
    /// `[lo, inf)`; `hi` is infinite.
    Ray = 3,
    ClosedDisc = 4,
    OpenDisc = 5,
    /// Image of the disc under a polynomial symbol; no numeric fields.
    ImageSet = 6,
    /// Only a bound is known: the range lies in `|w| <= radius`.
    ContainedInDisc = 7,
}

/// Predicted range. Interval shapes fill `lo` and `hi`; disc shapes fill
/// `center` and `radius`. Unused fields are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BzRange {
    pub shape: BzShape,
    pub lo: f64,
    pub hi: f64,
    pub center: BzComplex,
    pub radius: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzVerdict {
    Convex = 0,
    NotConvex = 1,
    Inconclusive = 2,
}

/// Summary of a convexity classification. The witness fields are NaN when
/// `has_witness` is 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BzConvexity {
    pub verdict: BzVerdict,
    pub deficiency: f64,
    pub max_gap: f64,
    pub has_witness: i32,
    pub witness_p: BzComplex,
    pub witness_q: BzComplex,
    pub witness_midpoint: BzComplex,
    pub witness_distance: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> BzStatus {
    match err {
        Error::Parse { .. } => BzStatus::Parse,
        Error::OutsideDisc { .. } => BzStatus::OutsideDisc,
        Error::Unsupported(_) | Error::NoRadialProfile(_) | Error::NoInteriorMaximum(_) => BzStatus::Unsupported,
        _ => BzStatus::InvalidArgument,
    }
}

/// Runs `body`, recording any error or panic message.
fn guard<F: FnOnce() -> Result<(), (BzStatus, String)>>(body: F) -> BzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BzStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            BzStatus::Panic
        }
    }
}

fn lib<T>(r: berezin::Result<T>) -> Result<T, (BzStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BzStatus, String) {
    (BzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn operator<'a>(op: *const BzOperator) -> Result<&'a OperatorSpec, (BzStatus, String)> {
    op.as_ref().map(|o| &o.spec).ok_or_else(|| null("operator"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (BzStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Parses `text` (NUL-terminated UTF-8) into a new operator handle.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_operator_parse(text: *const c_char, out: *mut *mut BzOperator) -> BzStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (BzStatus::Parse, format!("operator text is not UTF-8: {e}")))?;
        let spec = lib(parse_operator_spec(text))?;
        out.write(Box::into_raw(Box::new(BzOperator { spec })));
        Ok(())
    })
}

/// Releases a handle from [`bz_operator_parse`]. Null is ignored.
///
/// # Safety
/// `op` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bz_operator_free(op: *mut BzOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Writes the canonical text of `op` into `buf` (NUL-terminated) and the
/// required size, including the NUL, into `needed` when it is not null.
/// Returns [`BzStatus::BufferTooSmall`] if `len` is too short; pass a null
/// `buf` with `len` 0 to query the size.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null with `len` 0.
#[no_mangle]
pub unsafe extern "C" fn bz_operator_render(
    op: *const BzOperator,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> BzStatus {
    guard(|| {
        let text = render(operator(op)?);
        let size = text.len() + 1;
        if !needed.is_null() {
            needed.write(size);
        }
        if buf.is_null() || len < size {
            return Err((BzStatus::BufferTooSmall, format!("rendering needs {size} bytes, got {len}")));
        }
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}

/// Closed-form Berezin transform of `op` at `lambda` on `H_gamma`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_berezin_transform(
    op: *const BzOperator,
    gamma: f64,
    lambda: BzComplex,
    out: *mut BzComplex,
) -> BzStatus {
    guard(|| {
        let spec = operator(op)?;
        let params = lib(SpaceParams::new(gamma))?;
        let lambda = lib(DiskPoint::new(lambda.into()))?;
        write_out(out, berezin_transform(spec, params, lambda).into())
    })
}

/// Berezin transform through power series truncated after `depth` terms.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_berezin_via_series(
    op: *const BzOperator,
    gamma: f64,
    lambda: BzComplex,
    depth: usize,
    out: *mut BzComplex,
) -> BzStatus {
    guard(|| {
        let spec = operator(op)?;
        let params = lib(SpaceParams::new(gamma))?;
        let lambda = lib(DiskPoint::new(lambda.into()))?;
        write_out(out, lib(berezin_via_series(spec, params, lambda, depth))?.into())
    })
}

fn range_to_c(range: &RangeDescription) -> BzRange {
    let nan = f64::NAN;
    let no_center = BzComplex { re: nan, im: nan };
    let interval = |shape, lo, hi| BzRange { shape, lo, hi, center: no_center, radius: nan };
    let disc = |shape, center: Complex64, radius| BzRange { shape, lo: nan, hi: nan, center: center.into(), radius };
    match *range {
        RangeDescription::ClosedInterval { lo, hi } => interval(BzShape::ClosedInterval, lo, hi),
        RangeDescription::HalfOpenInterval { lo, hi_excluded } => interval(BzShape::HalfOpenInterval, lo, hi_excluded),
        RangeDescription::LeftOpenInterval { lo_excluded, hi } => interval(BzShape::LeftOpenInterval, lo_excluded, hi),
        RangeDescription::Ray { lo } => interval(BzShape::Ray, lo, f64::INFINITY),
        RangeDescription::ClosedDisc { center, radius } => disc(BzShape::ClosedDisc, center, radius),
        RangeDescription::OpenDisc { center, radius } => disc(BzShape::OpenDisc, center, radius),
        RangeDescription::ContainedInDisc { radius } => {
            disc(BzShape::ContainedInDisc, Complex64::new(0.0, 0.0), radius)
        }
        RangeDescription::ImageSet { .. } => interval(BzShape::ImageSet, nan, nan),
    }
}

/// Predicted Berezin range of `op` on `H_gamma`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_predict_range(op: *const BzOperator, gamma: f64, out: *mut BzRange) -> BzStatus {
    guard(|| {
        let spec = operator(op)?;
        let params = lib(SpaceParams::new(gamma))?;
        write_out(out, range_to_c(&predict_range(spec, params)))
    })
}

/// Samples the range on a polar grid and classifies its convexity with
/// relative tolerance `tol`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_classify(
    op: *const BzOperator,
    gamma: f64,
    n_radial: usize,
    n_angular: usize,
    r_max: f64,
    tol: f64,
    out: *mut BzConvexity,
) -> BzStatus {
    guard(|| {
        let spec = operator(op)?;
        let params = lib(SpaceParams::new(gamma))?;
        let grid = lib(SampleGrid::new(n_radial, n_angular, r_max))?;
        let report = lib(sample_range(spec, params, grid).and_then(|c| convexity_classify(&c, tol)))?;
        let nan = BzComplex { re: f64::NAN, im: f64::NAN };
        let verdict = match report.verdict {
            Verdict::Convex => BzVerdict::Convex,
            Verdict::NotConvex => BzVerdict::NotConvex,
            Verdict::Inconclusive => BzVerdict::Inconclusive,
        };
        let summary = match report.witness {
            Some(w) => BzConvexity {
                verdict,
                deficiency: report.deficiency,
                max_gap: report.max_gap,
                has_witness: 1,
                witness_p: w.p.into(),
                witness_q: w.q.into(),
                witness_midpoint: w.midpoint.into(),
                witness_distance: w.distance,
            },
            None => BzConvexity {
                verdict,
                deficiency: report.deficiency,
                max_gap: report.max_gap,
                has_witness: 0,
                witness_p: nan,
                witness_q: nan,
                witness_midpoint: nan,
                witness_distance: f64::NAN,
            },
        };
        write_out(out, summary)
    })
}

/// Reproducing kernel `k_lambda(z) = (1 - conj(lambda) z)^(-gamma)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bz_kernel_value(gamma: f64, lambda: BzComplex, z: BzComplex, out: *mut BzComplex) -> BzStatus {
    guard(|| {
        let params = lib(SpaceParams::new(gamma))?;
        let lambda = lib(DiskPoint::new(lambda.into()))?;
        write_out(out, lib(kernel_value(params, lambda, z.into()))?.into())
    })
}

/// Message of the last failing call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn bz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
