use std::ffi::{CStr, CString};
use std::ptr;

use berezin_ffi::*;

fn parse(text: &str) -> *mut BzOperator {
    let text = CString::new(text).unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { bz_operator_parse(text.as_ptr(), &mut op) }, BzStatus::Ok);
    assert!(!op.is_null());
    op
}

fn last_error() -> String {
    let p = bz_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn transform_and_series_agree() {
    let op = parse("pairs:[(g=[1,-1];h=[1,0,-1])]");
    let lambda = BzComplex { re: -0.1, im: 0.5 };
    let (mut a, mut b) = (BzComplex { re: 0.0, im: 0.0 }, BzComplex { re: 0.0, im: 0.0 });
    unsafe {
        assert_eq!(bz_berezin_transform(op, 0.1, lambda, &mut a), BzStatus::Ok);
        assert_eq!(bz_berezin_via_series(op, 0.1, lambda, 200, &mut b), BzStatus::Ok);
        bz_operator_free(op);
    }
    assert!((a.re - 1.27502).abs() < 5e-6, "{a:?}");
    assert!((a.re - b.re).abs() < 1e-12 && (a.im - b.im).abs() < 1e-12);
}

#[test]
fn predict_shapes() {
    let mut range = BzRange {
        shape: BzShape::ImageSet,
        lo: 0.0,
        hi: 0.0,
        center: BzComplex { re: 0.0, im: 0.0 },
        radius: 0.0,
    };
    let op = parse("rank1:m=1,n=1");
    unsafe { assert_eq!(bz_predict_range(op, 1.0, &mut range), BzStatus::Ok) };
    assert_eq!(range.shape, BzShape::ClosedInterval);
    assert_eq!((range.lo, range.hi), (0.0, 0.25));
    assert!(range.radius.is_nan());
    unsafe { bz_operator_free(op) };

    let op = parse("geom:a=0.5+0.5i");
    unsafe { assert_eq!(bz_predict_range(op, 0.5, &mut range), BzStatus::Ok) };
    assert_eq!(range.shape, BzShape::Ray);
    assert!(range.hi.is_infinite());
    unsafe { bz_operator_free(op) };

    let op = parse("mult:poly=[2+1i,0,0,1-1i]");
    unsafe { assert_eq!(bz_predict_range(op, 1.0, &mut range), BzStatus::Ok) };
    assert_eq!(range.shape, BzShape::OpenDisc);
    assert_eq!((range.center.re, range.center.im), (2.0, 1.0));
    assert!((range.radius - 2f64.sqrt()).abs() < 1e-15);
    unsafe { bz_operator_free(op) };
}

#[test]
fn classify_reports_witness() {
    let op = parse("mult:poly=[-2i,5,0,0,1]");
    let mut out = std::mem::MaybeUninit::<BzConvexity>::uninit();
    let status = unsafe { bz_classify(op, 1.0, 200, 360, 0.999, 5e-3, out.as_mut_ptr()) };
    assert_eq!(status, BzStatus::Ok);
    let out = unsafe { out.assume_init() };
    assert_eq!(out.verdict, BzVerdict::NotConvex);
    assert_eq!(out.has_witness, 1);
    assert!(out.witness_distance > 0.0);
    unsafe { bz_operator_free(op) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut op = ptr::null_mut();
    let bad = CString::new("rank1:m=1;n=1").unwrap();
    assert_eq!(unsafe { bz_operator_parse(bad.as_ptr(), &mut op) }, BzStatus::Parse);
    assert!(op.is_null());
    assert!(last_error().contains("position 9"));

    let geom = CString::new("geom:a=1.2").unwrap();
    assert_eq!(unsafe { bz_operator_parse(geom.as_ptr(), &mut op) }, BzStatus::InvalidArgument);
    assert!(last_error().contains("|a|"));

    assert_eq!(unsafe { bz_operator_parse(ptr::null(), &mut op) }, BzStatus::NullPointer);

    let op = parse("proj:k=2");
    let mut z = BzComplex { re: 0.0, im: 0.0 };
    let outside = BzComplex { re: 1.0, im: 0.0 };
    assert_eq!(unsafe { bz_berezin_transform(op, 1.0, outside, &mut z) }, BzStatus::OutsideDisc);
    assert_eq!(
        unsafe { bz_berezin_transform(op, -1.0, BzComplex { re: 0.0, im: 0.0 }, &mut z) },
        BzStatus::InvalidArgument
    );
    assert!(last_error().contains("gamma"));
    assert_eq!(
        unsafe { bz_berezin_transform(op, 1.0, BzComplex { re: 0.0, im: 0.0 }, ptr::null_mut()) },
        BzStatus::NullPointer
    );
    unsafe { bz_operator_free(op) };
    unsafe { bz_operator_free(ptr::null_mut()) };
}

#[test]
fn render_round_trips_through_buffer() {
    let op = parse("diag:a=[1+1i,1-1i,1i]");
    let mut needed = 0usize;
    let status = unsafe { bz_operator_render(op, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, BzStatus::BufferTooSmall);
    let mut buf = vec![0 as std::ffi::c_char; needed];
    assert_eq!(unsafe { bz_operator_render(op, buf.as_mut_ptr(), buf.len(), &mut needed) }, BzStatus::Ok);
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(text, "diag:a=[1+1i,1-1i,1i]");
    unsafe { bz_operator_free(op) };
}

#[test]
fn kernel_and_version() {
    let mut k = BzComplex { re: 0.0, im: 0.0 };
    let half = BzComplex { re: 0.5, im: 0.0 };
    assert_eq!(unsafe { bz_kernel_value(2.0, half, half, &mut k) }, BzStatus::Ok);
    assert!((k.re - 1.0 / 0.5625).abs() < 1e-14 && k.im.abs() < 1e-15);
    let v = unsafe { CStr::from_ptr(bz_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/berezin.h")).unwrap();
    for name in [
        "bz_operator_parse",
        "bz_operator_free",
        "bz_operator_render",
        "bz_berezin_transform",
        "bz_berezin_via_series",
        "bz_predict_range",
        "bz_classify",
        "bz_kernel_value",
        "bz_last_error_message",
        "bz_version",
        "typedef struct BzOperator BzOperator;",
        "BZ_STATUS_OUTSIDE_DISC = 4",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
