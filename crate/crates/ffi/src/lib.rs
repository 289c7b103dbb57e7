//! C ABI for excess-kit.
//!
//! Objects cross the boundary as opaque handles created by `exk_*_new` (or a
//! computing function) and released by the matching `exk_*_free`. Fallible
//! functions return an [`ExkStatus`]; on failure a one-line description is
//! available from [`exk_last_error_message`] on the same thread. Strings
//! returned as `char *` are owned by the caller and released with
//! [`exk_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use excess_kit::cover::{branched_double_cover, CoverError};
use excess_kit::engine::{
    excess_check_validated, plane_family_audit, AuditOptions, AuditReport, EngineError, ObstructionReport, Verdict,
};
use excess_kit::format::Catalog;
use excess_kit::gf2::{max_zero_sum_subset, zero_sum_subcollection, Gf2Collection, Gf2Error, Gf2Vector, SubsetCertificate};
use excess_kit::invariants::{ManifoldProfile, ValidatedProfile};
use excess_kit::report::to_canonical_json;
use excess_kit::surface::{massey_admissible_set, SurfaceDatum, SurfaceFamily, TubedSurface};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    InvalidProfile = 4,
    DimensionMismatch = 5,
    NotFound = 6,
    EffortExceeded = 7,
    NoBranchedCover = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExkVerdict {
    BoundSatisfied = 0,
    Obstructed = 1,
    HypothesisFailure = 2,
}

impl From<Verdict> for ExkVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::BoundSatisfied => ExkVerdict::BoundSatisfied,
            Verdict::Obstructed => ExkVerdict::Obstructed,
            Verdict::HypothesisFailure => ExkVerdict::HypothesisFailure,
        }
    }
}

/// Invariants of the branched double cover.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExkCoverProfile {
    pub sigma_n: i64,
    pub chi_n: i64,
    pub b1_f2_upper: u64,
    pub b2_f2_upper: i64,
    pub ramification_euler: i64,
}

/// A validated manifold profile.
pub struct ExkProfile(ValidatedProfile);

/// A surface family under construction.
pub struct ExkFamily {
    ambient_dim: usize,
    members: Vec<SurfaceDatum>,
}

pub struct ExkReport(ObstructionReport);

pub struct ExkAudit(AuditReport);

/// A list of vectors over F2.
pub struct ExkCollection {
    dim: usize,
    vectors: Vec<Gf2Vector>,
}

pub struct ExkCertificate(SubsetCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: ExkStatus, msg: impl Into<String>) -> ExkStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into `ExkStatus::Panic`.
fn guard(f: impl FnOnce() -> ExkStatus) -> ExkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ExkStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, ExkStatus> {
    if p.is_null() {
        return Err(fail(ExkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ExkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn bits_arg(p: *const c_char, dim: usize) -> Result<Gf2Vector, ExkStatus> {
    let v: Gf2Vector = str_arg(p, "bits")?
        .parse()
        .map_err(|e| fail(ExkStatus::InvalidArgument, format!("bits: {e}")))?;
    if v.dim() != dim {
        return Err(fail(
            ExkStatus::DimensionMismatch,
            format!("expected {dim} bits, found {}", v.dim()),
        ));
    }
    Ok(v)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! handle {
    ($p:expr, $what:literal) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(ExkStatus::NullPointer, concat!($what, " is null")),
        }
    };
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> ExkStatus {
    *out = Box::into_raw(Box::new(value));
    ExkStatus::Ok
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn engine_status(e: &EngineError) -> ExkStatus {
    match e {
        EngineError::DimensionMismatch { .. } => ExkStatus::DimensionMismatch,
        EngineError::Profile(_) => ExkStatus::InvalidProfile,
        EngineError::NotAPlaneFamily { .. } | EngineError::EulerTooSmall { .. } => ExkStatus::InvalidArgument,
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn exk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn exk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates `(signature, euler_characteristic, b1_f2)` into a profile.
#[no_mangle]
pub unsafe extern "C" fn exk_profile_new(
    name: *const c_char,
    signature: i64,
    euler_characteristic: i64,
    b1_f2: u64,
    out: *mut *mut ExkProfile,
) -> ExkStatus {
    guard(|| {
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        let name = try_status!(str_arg(name, "name"));
        match ManifoldProfile::new(name, signature, euler_characteristic, b1_f2).validate() {
            Ok(p) => put(out, ExkProfile(p)),
            Err(e) => fail(ExkStatus::InvalidProfile, e.to_string()),
        }
    })
}

/// Looks a profile up in the built-in catalog (plus `EXCESS_KIT_CATALOG`).
#[no_mangle]
pub unsafe extern "C" fn exk_profile_from_catalog(name: *const c_char, out: *mut *mut ExkProfile) -> ExkStatus {
    guard(|| {
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        let name = try_status!(str_arg(name, "name"));
        let catalog = match Catalog::load_default() {
            Ok(c) => c,
            Err(e) => return fail(ExkStatus::InvalidProfile, e.to_string()),
        };
        match catalog.get(name) {
            Some(p) => put(out, ExkProfile(p.clone())),
            None => fail(ExkStatus::NotFound, format!("no catalog profile named `{name}`")),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_profile_free(p: *mut ExkProfile) {
    free(p);
}

/// `b2` over F2, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn exk_profile_b2_f2(p: *const ExkProfile) -> u64 {
    p.as_ref().map_or(0, |p| p.0.b2_f2())
}

/// `D(M)`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn exk_profile_excess_budget(p: *const ExkProfile) -> u64 {
    p.as_ref().map_or(0, |p| p.0.excess_budget())
}

/// `B(M)`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn exk_profile_plane_bound(p: *const ExkProfile) -> u64 {
    p.as_ref().map_or(0, |p| p.0.plane_bound())
}

/// Empty family whose classes have `ambient_dim` bits.
#[no_mangle]
pub unsafe extern "C" fn exk_family_new(ambient_dim: usize, out: *mut *mut ExkFamily) -> ExkStatus {
    guard(|| {
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        put(
            out,
            ExkFamily {
                ambient_dim,
                members: Vec::new(),
            },
        )
    })
}

/// Appends a surface. `class_bits` is a '0'/'1' string of `ambient_dim`
/// characters (empty when the dimension is 0).
#[no_mangle]
pub unsafe extern "C" fn exk_family_push(
    f: *mut ExkFamily,
    genus: u64,
    euler_number: i64,
    class_bits: *const c_char,
) -> ExkStatus {
    guard(|| {
        let f = match f.as_mut() {
            Some(f) => f,
            None => return fail(ExkStatus::NullPointer, "family is null"),
        };
        let class = try_status!(bits_arg(class_bits, f.ambient_dim));
        match SurfaceDatum::new(genus, euler_number, class) {
            Ok(s) => {
                f.members.push(s);
                ExkStatus::Ok
            }
            Err(e) => fail(ExkStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_family_len(f: *const ExkFamily) -> usize {
    f.as_ref().map_or(0, |f| f.members.len())
}

#[no_mangle]
pub unsafe extern "C" fn exk_family_free(f: *mut ExkFamily) {
    free(f);
}

unsafe fn family_of(f: &ExkFamily) -> Result<SurfaceFamily, ExkStatus> {
    SurfaceFamily::new(f.ambient_dim, f.members.clone()).map_err(|e| fail(ExkStatus::InvalidArgument, e.to_string()))
}

/// Runs the excess check; the report is written to `out`.
#[no_mangle]
pub unsafe extern "C" fn exk_excess_check(
    p: *const ExkProfile,
    f: *const ExkFamily,
    out: *mut *mut ExkReport,
) -> ExkStatus {
    guard(|| {
        let p = handle!(p, "profile");
        let f = handle!(f, "family");
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        let family = try_status!(family_of(f));
        match excess_check_validated(&p.0, &family) {
            Ok(r) => put(out, ExkReport(r)),
            Err(e) => fail(engine_status(&e), e.to_string()),
        }
    })
}

/// Verdict of a report. A null handle reads as `HypothesisFailure`.
#[no_mangle]
pub unsafe extern "C" fn exk_report_verdict(r: *const ExkReport) -> ExkVerdict {
    r.as_ref().map_or(ExkVerdict::HypothesisFailure, |r| r.0.verdict.into())
}

/// `Σ(|e_i| - 2g_i)`.
#[no_mangle]
pub unsafe extern "C" fn exk_report_lhs(r: *const ExkReport) -> i64 {
    r.as_ref().map_or(0, |r| r.0.lhs)
}

/// `D(M)`.
#[no_mangle]
pub unsafe extern "C" fn exk_report_rhs(r: *const ExkReport) -> i64 {
    r.as_ref().map_or(0, |r| r.0.rhs)
}

/// Replays every trace step; false for a null handle.
#[no_mangle]
pub unsafe extern "C" fn exk_report_trace_valid(r: *const ExkReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.trace.replay())
}

/// Canonical JSON document, or null for a null handle.
#[no_mangle]
pub unsafe extern "C" fn exk_report_to_json(r: *const ExkReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| owned_string(to_canonical_json(&r.0)))
}

#[no_mangle]
pub unsafe extern "C" fn exk_report_free(r: *mut ExkReport) {
    free(r);
}

/// Audits a family of projective planes. `exact` also runs the exact
/// zero-sum maximizer with node budget `effort` (0 = automatic).
#[no_mangle]
pub unsafe extern "C" fn exk_plane_audit(
    p: *const ExkProfile,
    planes: *const ExkFamily,
    exact: bool,
    effort: u64,
    out: *mut *mut ExkAudit,
) -> ExkStatus {
    guard(|| {
        let p = handle!(p, "profile");
        let f = handle!(planes, "planes");
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        let family = try_status!(family_of(f));
        let options = AuditOptions {
            exact,
            effort_limit: effort,
        };
        match plane_family_audit(&p.0, &family, options) {
            Ok(a) => put(out, ExkAudit(a)),
            Err(e) => fail(engine_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_audit_verdict(a: *const ExkAudit) -> ExkVerdict {
    a.as_ref().map_or(ExkVerdict::HypothesisFailure, |a| a.0.verdict.into())
}

#[no_mangle]
pub unsafe extern "C" fn exk_audit_to_json(a: *const ExkAudit) -> *mut c_char {
    a.as_ref().map_or(ptr::null_mut(), |a| owned_string(to_canonical_json(&a.0)))
}

#[no_mangle]
pub unsafe extern "C" fn exk_audit_free(a: *mut ExkAudit) {
    free(a);
}

/// Branched double cover along a single surface of genus `genus`, Euler
/// number `euler_number` and class `class_bits`.
#[no_mangle]
pub unsafe extern "C" fn exk_branched_cover(
    p: *const ExkProfile,
    genus: u64,
    euler_number: i64,
    class_bits: *const c_char,
    out: *mut ExkCoverProfile,
) -> ExkStatus {
    guard(|| {
        let p = handle!(p, "profile");
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        let class = try_status!(bits_arg(class_bits, p.0.b2_f2() as usize));
        let s = match SurfaceDatum::new(genus, euler_number, class) {
            Ok(s) => s,
            Err(e) => return fail(ExkStatus::InvalidArgument, e.to_string()),
        };
        match branched_double_cover(&p.0, &TubedSurface::from_single(&s)) {
            Ok(c) => {
                *out = ExkCoverProfile {
                    sigma_n: c.sigma_n,
                    chi_n: c.chi_n,
                    b1_f2_upper: c.b1_f2_upper,
                    b2_f2_upper: c.b2_f2_upper,
                    ramification_euler: c.ramification_euler,
                };
                ExkStatus::Ok
            }
            Err(e @ CoverError::DimensionMismatch { .. }) => fail(ExkStatus::DimensionMismatch, e.to_string()),
            Err(e) => fail(ExkStatus::NoBranchedCover, e.to_string()),
        }
    })
}

/// Writes the Massey admissible set for `genus` into `buf`. `*len` receives
/// the number of values; `BufferTooSmall` is returned when `cap` is short.
#[no_mangle]
pub unsafe extern "C" fn exk_massey_admissible(genus: u64, buf: *mut i64, cap: usize, len: *mut usize) -> ExkStatus {
    guard(|| {
        if len.is_null() {
            return fail(ExkStatus::NullPointer, "len is null");
        }
        let set = match massey_admissible_set(genus) {
            Ok(s) => s,
            Err(e) => return fail(ExkStatus::InvalidArgument, e.to_string()),
        };
        *len = set.len();
        if set.len() > cap {
            return fail(ExkStatus::BufferTooSmall, format!("need {} slots", set.len()));
        }
        if buf.is_null() {
            return fail(ExkStatus::NullPointer, "buf is null");
        }
        ptr::copy_nonoverlapping(set.as_ptr(), buf, set.len());
        ExkStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_collection_new(dim: usize, out: *mut *mut ExkCollection) -> ExkStatus {
    guard(|| {
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        put(out, ExkCollection { dim, vectors: Vec::new() })
    })
}

/// Appends a vector given as a '0'/'1' string of `dim` characters.
#[no_mangle]
pub unsafe extern "C" fn exk_collection_push(c: *mut ExkCollection, bits: *const c_char) -> ExkStatus {
    guard(|| {
        let c = match c.as_mut() {
            Some(c) => c,
            None => return fail(ExkStatus::NullPointer, "collection is null"),
        };
        let v = try_status!(bits_arg(bits, c.dim));
        c.vectors.push(v);
        ExkStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_collection_free(c: *mut ExkCollection) {
    free(c);
}

fn collection_of(c: &ExkCollection) -> Gf2Collection {
    Gf2Collection::new(c.dim, c.vectors.clone()).expect("dimensions checked on push")
}

/// Constructive zero-sum certificate.
#[no_mangle]
pub unsafe extern "C" fn exk_zero_sum(c: *const ExkCollection, out: *mut *mut ExkCertificate) -> ExkStatus {
    guard(|| {
        let c = handle!(c, "collection");
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        put(out, ExkCertificate(zero_sum_subcollection(&collection_of(c))))
    })
}

/// Maximum zero-sum subset. On `EffortExceeded`, `*out` still receives the
/// constructive certificate.
#[no_mangle]
pub unsafe extern "C" fn exk_max_zero_sum(
    c: *const ExkCollection,
    effort: u64,
    out: *mut *mut ExkCertificate,
) -> ExkStatus {
    guard(|| {
        let c = handle!(c, "collection");
        if out.is_null() {
            return fail(ExkStatus::NullPointer, "out is null");
        }
        match max_zero_sum_subset(&collection_of(c), effort) {
            Ok(cert) => put(out, ExkCertificate(cert)),
            Err(Gf2Error::EffortExceeded { required, limit, fallback }) => {
                put(out, ExkCertificate(fallback));
                fail(
                    ExkStatus::EffortExceeded,
                    format!("exact search needs {required} nodes but the budget is {limit}"),
                )
            }
            Err(e) => fail(ExkStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn exk_certificate_len(cert: *const ExkCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.size())
}

/// Pointer to the sorted 1-based indices; valid while the certificate lives.
#[no_mangle]
pub unsafe extern "C" fn exk_certificate_indices(cert: *const ExkCertificate) -> *const usize {
    cert.as_ref().map_or(ptr::null(), |c| c.0.indices().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn exk_certificate_free(cert: *mut ExkCertificate) {
    free(cert);
}
