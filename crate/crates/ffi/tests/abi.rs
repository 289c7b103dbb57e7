use std::ffi::{CStr, CString};
use std::ptr;

use excess_kit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(exk_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn profile(name: &str, sigma: i64, chi: i64, b1: u64) -> *mut ExkProfile {
    let mut p = ptr::null_mut();
    assert_eq!(exk_profile_new(c(name).as_ptr(), sigma, chi, b1, &mut p), ExkStatus::Ok);
    p
}

unsafe fn family(dim: usize, members: &[(u64, i64, &str)]) -> *mut ExkFamily {
    let mut f = ptr::null_mut();
    assert_eq!(exk_family_new(dim, &mut f), ExkStatus::Ok);
    for &(g, e, bits) in members {
        assert_eq!(exk_family_push(f, g, e, c(bits).as_ptr()), ExkStatus::Ok, "{}", last_error());
    }
    f
}

#[test]
fn profile_budget_and_catalog() {
    unsafe {
        let p = profile("cp2", 1, 3, 0);
        assert_eq!(exk_profile_b2_f2(p), 1);
        assert_eq!(exk_profile_excess_budget(p), 8);
        assert_eq!(exk_profile_plane_bound(p), 18);
        exk_profile_free(p);

        let mut s4 = ptr::null_mut();
        assert_eq!(exk_profile_from_catalog(c("s4").as_ptr(), &mut s4), ExkStatus::Ok);
        assert_eq!(exk_profile_excess_budget(s4), 0);
        assert_eq!(exk_profile_plane_bound(s4), 0);
        exk_profile_free(s4);

        let mut missing = ptr::null_mut();
        assert_eq!(
            exk_profile_from_catalog(c("nowhere").as_ptr(), &mut missing),
            ExkStatus::NotFound
        );
        assert!(missing.is_null());
        assert!(last_error().contains("nowhere"));
    }
}

#[test]
fn invalid_profile_reports_reason() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(exk_profile_new(c("bad").as_ptr(), 0, 1, 0, &mut p), ExkStatus::InvalidProfile);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(exk_profile_new(ptr::null(), 0, 2, 0, &mut p), ExkStatus::NullPointer);
    }
}

#[test]
fn excess_check_round_trip() {
    unsafe {
        let p = profile("s4", 0, 2, 0);
        let f = family(0, &[(2, 8, "")]);
        assert_eq!(exk_family_len(f), 1);
        let mut r = ptr::null_mut();
        assert_eq!(exk_excess_check(p, f, &mut r), ExkStatus::Ok);
        assert_eq!(exk_report_verdict(r), ExkVerdict::Obstructed);
        assert_eq!((exk_report_lhs(r), exk_report_rhs(r)), (4, 0));
        assert!(exk_report_trace_valid(r));
        let json = exk_report_to_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        exk_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], "Obstructed");
        exk_report_free(r);
        exk_family_free(f);
        exk_profile_free(p);
    }
}

#[test]
fn family_rejects_wrong_class_length() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(exk_family_new(2, &mut f), ExkStatus::Ok);
        assert_eq!(exk_family_push(f, 1, 2, c("1").as_ptr()), ExkStatus::DimensionMismatch);
        assert_eq!(exk_family_push(f, 0, 2, c("10").as_ptr()), ExkStatus::InvalidArgument);
        assert_eq!(exk_family_push(f, 1, 2, c("1x").as_ptr()), ExkStatus::InvalidArgument);
        assert_eq!(exk_family_len(f), 0);
        exk_family_free(f);
    }
}

#[test]
fn excess_check_dimension_mismatch() {
    unsafe {
        let p = profile("cp2", 1, 3, 0);
        let f = family(0, &[(1, 2, "")]);
        let mut r = ptr::null_mut();
        assert_eq!(exk_excess_check(p, f, &mut r), ExkStatus::DimensionMismatch);
        assert!(r.is_null());
        let empty = family(1, &[]);
        assert_eq!(exk_excess_check(p, empty, &mut r), ExkStatus::InvalidArgument);
        exk_family_free(empty);
        exk_family_free(f);
        exk_profile_free(p);
    }
}

#[test]
fn plane_audit_on_s4() {
    unsafe {
        let p = profile("s4", 0, 2, 0);
        let f = family(0, &[(1, 4, "")]);
        let mut a = ptr::null_mut();
        assert_eq!(exk_plane_audit(p, f, true, 0, &mut a), ExkStatus::Ok);
        assert_eq!(exk_audit_verdict(a), ExkVerdict::Obstructed);
        let json = exk_audit_to_json(a);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"b_of_m\": 0"));
        exk_string_free(json);
        exk_audit_free(a);

        let g = family(0, &[(2, 4, "")]);
        assert_eq!(exk_plane_audit(p, g, false, 0, &mut a), ExkStatus::InvalidArgument);
        exk_family_free(g);
        exk_family_free(f);
        exk_profile_free(p);
    }
}

#[test]
fn branched_cover_values() {
    unsafe {
        let p = profile("s4", 0, 2, 0);
        let mut out = ExkCoverProfile::default();
        assert_eq!(exk_branched_cover(p, 1, 2, c("").as_ptr(), &mut out), ExkStatus::Ok);
        assert_eq!(out.sigma_n, -1);
        assert_eq!((out.ramification_euler, out.chi_n, out.b2_f2_upper), (1, 3, 1));
        assert_eq!(exk_branched_cover(p, 1, 3, c("").as_ptr(), &mut out), ExkStatus::NoBranchedCover);
        exk_profile_free(p);

        let cp2 = profile("cp2", 1, 3, 0);
        assert_eq!(exk_branched_cover(cp2, 1, 2, c("1").as_ptr(), &mut out), ExkStatus::NoBranchedCover);
        assert_eq!(exk_branched_cover(cp2, 1, 2, c("").as_ptr(), &mut out), ExkStatus::DimensionMismatch);
        exk_profile_free(cp2);
    }
}

#[test]
fn massey_buffer_protocol() {
    unsafe {
        let mut len = 0usize;
        assert_eq!(exk_massey_admissible(2, ptr::null_mut(), 0, &mut len), ExkStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut buf = vec![0i64; len];
        assert_eq!(exk_massey_admissible(2, buf.as_mut_ptr(), buf.len(), &mut len), ExkStatus::Ok);
        assert_eq!(buf, [-4, 0, 4]);
        assert_eq!(exk_massey_admissible(0, buf.as_mut_ptr(), buf.len(), &mut len), ExkStatus::InvalidArgument);
    }
}

unsafe fn indices(cert: *const ExkCertificate) -> Vec<usize> {
    let n = exk_certificate_len(cert);
    if n == 0 {
        return Vec::new();
    }
    std::slice::from_raw_parts(exk_certificate_indices(cert), n).to_vec()
}

#[test]
fn zero_sum_certificates() {
    unsafe {
        let mut col = ptr::null_mut();
        assert_eq!(exk_collection_new(2, &mut col), ExkStatus::Ok);
        for bits in ["10", "01", "11"] {
            assert_eq!(exk_collection_push(col, c(bits).as_ptr()), ExkStatus::Ok);
        }
        assert_eq!(exk_collection_push(col, c("111").as_ptr()), ExkStatus::DimensionMismatch);

        let mut cert = ptr::null_mut();
        assert_eq!(exk_zero_sum(col, &mut cert), ExkStatus::Ok);
        assert_eq!(indices(cert), [1, 2, 3]);
        exk_certificate_free(cert);

        assert_eq!(exk_max_zero_sum(col, 0, &mut cert), ExkStatus::Ok);
        assert_eq!(indices(cert), [1, 2, 3]);
        exk_certificate_free(cert);
        exk_collection_free(col);
    }
}

#[test]
fn effort_exceeded_still_returns_fallback() {
    unsafe {
        let mut col = ptr::null_mut();
        assert_eq!(exk_collection_new(3, &mut col), ExkStatus::Ok);
        for bits in ["100", "010", "001", "110", "011", "111", "101", "100", "010", "001"] {
            assert_eq!(exk_collection_push(col, c(bits).as_ptr()), ExkStatus::Ok);
        }
        let mut cert = ptr::null_mut();
        assert_eq!(exk_max_zero_sum(col, 4, &mut cert), ExkStatus::EffortExceeded);
        assert!(!cert.is_null());
        assert!(exk_certificate_len(cert) >= 10 - 3);
        assert!(last_error().contains("budget"));
        exk_certificate_free(cert);
        exk_collection_free(col);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        exk_profile_free(ptr::null_mut());
        exk_family_free(ptr::null_mut());
        exk_report_free(ptr::null_mut());
        exk_audit_free(ptr::null_mut());
        exk_collection_free(ptr::null_mut());
        exk_certificate_free(ptr::null_mut());
        exk_string_free(ptr::null_mut());
        assert_eq!(exk_report_verdict(ptr::null()), ExkVerdict::HypothesisFailure);
        assert!(exk_report_to_json(ptr::null()).is_null());
        assert_eq!(exk_certificate_len(ptr::null()), 0);
        let mut r = ptr::null_mut();
        assert_eq!(exk_excess_check(ptr::null(), ptr::null(), &mut r), ExkStatus::NullPointer);
    }
}
