use std::ffi::{c_char, CStr};
use std::ptr;

use lienard_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { lienard_string_free(p) };
    s
}

fn last_error() -> String {
    let p = lienard_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn table_lifecycle() {
    let mut table = ptr::null_mut();
    assert_eq!(unsafe { lienard_table_compute(2, 5, &mut table) }, LienardStatus::Ok);
    let (mut d, mut k) = (0, 0);
    assert_eq!(unsafe { lienard_table_shape(table, &mut d, &mut k) }, LienardStatus::Ok);
    assert_eq!((d, k), (2, 5));

    // v3(2π) = π/4 · λ2
    let lambda = [0.3, 2.0];
    let mut v = 0.0;
    assert_eq!(unsafe { lienard_table_eval(table, 3, lambda.as_ptr(), 2, &mut v) }, LienardStatus::Ok);
    assert!((v - std::f64::consts::FRAC_PI_4 * 2.0).abs() < 1e-14);
    assert_eq!(unsafe { lienard_table_eval(table, 9, lambda.as_ptr(), 2, &mut v) }, LienardStatus::InvalidArgument);
    assert_eq!(unsafe { lienard_table_eval(table, 3, lambda.as_ptr(), 1, &mut v) }, LienardStatus::Dimension);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { lienard_table_json(table, &mut json) }, LienardStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(value["K"], 5);

    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { lienard_bautin_certificate_json(table, &mut cert) }, LienardStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
    assert_eq!(value["B"], 3);
    assert_eq!(value["holds"], true);

    unsafe { lienard_table_free(table) };
    unsafe { lienard_table_free(ptr::null_mut()) };
}

#[test]
fn errors_are_reported() {
    let mut table = ptr::null_mut();
    assert_eq!(unsafe { lienard_table_compute(0, 5, &mut table) }, LienardStatus::InvalidArgument);
    assert!(table.is_null());
    assert!(last_error().contains("at least 1"));
    assert_eq!(unsafe { lienard_table_compute(2, 5, ptr::null_mut()) }, LienardStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lienard_table_json(ptr::null(), &mut out) }, LienardStatus::NullPointer);

    // short table: certificate needs K ≥ 2n + 2
    assert_eq!(unsafe { lienard_table_compute(4, 3, &mut table) }, LienardStatus::Ok);
    assert_eq!(unsafe { lienard_bautin_certificate_json(table, &mut out) }, LienardStatus::InvalidArgument);
    unsafe { lienard_table_free(table) };
}

#[test]
fn radii_and_flow() {
    let mut rho = 0.0;
    assert_eq!(unsafe { lienard_rho([2.0].as_ptr(), 1, &mut rho) }, LienardStatus::Ok);
    assert!((rho - 0.5).abs() < 1e-12);
    assert_eq!(unsafe { lienard_rho([0.0, 0.0].as_ptr(), 2, &mut rho) }, LienardStatus::Ok);
    assert!(rho.is_infinite());

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { lienard_radius_report_json(1, [0.0, 1.0].as_ptr(), 2, &mut json) }, LienardStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(value["zero_bound"], 2);
    assert_eq!(unsafe { lienard_radius_report_json(0, ptr::null(), 0, &mut json) }, LienardStatus::InvalidArgument);

    let mut r = 0.0;
    assert_eq!(unsafe { lienard_return_map([0.0, 0.0].as_ptr(), 2, 0.3, 1e-10, &mut r) }, LienardStatus::Ok);
    assert!((r - 0.3).abs() < 1e-9);
    let status = unsafe { lienard_return_map([1.0, 1.0].as_ptr(), 2, 1e6, 1e-10, &mut r) };
    assert_eq!(status, LienardStatus::Domain);
    assert_eq!(unsafe { lienard_return_map(ptr::null(), 2, 0.3, 1e-10, &mut r) }, LienardStatus::NullPointer);
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lienard.h");
    let text = std::fs::read_to_string(header).unwrap();
    for symbol in ["lienard_table_compute", "lienard_string_free", "LIENARD_STATUS_CHECK_FAILED", "typedef struct LienardTable"] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("probe.c");
    std::fs::write(&source, format!("#include \"{header}\"\nint main(void) {{ return LIENARD_STATUS_OK; }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&source).status() {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler available; syntax check skipped"),
    }
}
