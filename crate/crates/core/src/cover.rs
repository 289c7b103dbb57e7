//! Invariants of the connected 2-fold cover `N → M` branched along a
//! connected surface `F` with `[F] = 0` in `H_2(M; F_2)`.
//!
//! Signature and Euler characteristic of `N` are exact. The mod-2 Betti
//! numbers are only bounded from above (`b1(N) ≤ 2·b1(M)`), which is why the
//! corresponding fields carry an `_upper` suffix.

use serde::Serialize;
use thiserror::Error;

use crate::invariants::ValidatedProfile;
use crate::surface::TubedSurface;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("branch surface class {class} is not zero mod 2; no branched double cover is available")]
    NotModTwoNull { class: String },
    #[error("twisted normal Euler number {0} is odd; it must be twice the ramification Euler number")]
    OddEulerNumber(i64),
    #[error("branch surface class has dimension {found}, ambient b2 over F2 is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverProfile {
    pub sigma_n: i64,
    pub chi_n: i64,
    pub b1_f2_upper: u64,
    pub b2_f2_upper: i64,
    /// Euler number of the ramification locus, half of `e(F)`.
    pub ramification_euler: i64,
}

pub fn branched_double_cover(m: &ValidatedProfile, f: &TubedSurface) -> Result<CoverProfile, CoverError> {
    if f.mod2_class.dim() as u64 != m.b2_f2() {
        return Err(CoverError::DimensionMismatch {
            expected: m.b2_f2() as usize,
            found: f.mod2_class.dim(),
        });
    }
    if !f.mod2_class.is_zero() {
        return Err(CoverError::NotModTwoNull {
            class: f.mod2_class.to_string(),
        });
    }
    if f.euler_number % 2 != 0 {
        return Err(CoverError::OddEulerNumber(f.euler_number));
    }
    let ramification_euler = f.euler_number / 2;
    let sigma_n = 2 * m.signature() - ramification_euler;
    let chi_n = 2 * m.euler_characteristic() - f.euler_characteristic;
    let b1_f2_upper = 2 * m.b1_f2();
    let b2_f2_upper = chi_n - 2 + 2 * b1_f2_upper as i64;
    assert_eq!(
        b2_f2_upper,
        b2_upper_closed_form(m, f.genus),
        "b2 bound disagrees with its closed form"
    );
    Ok(CoverProfile {
        sigma_n,
        chi_n,
        b1_f2_upper,
        b2_f2_upper,
        ramification_euler,
    })
}

/// `2χ(M) + g(F) - 4 + 4·b1(M)`.
pub fn b2_upper_closed_form(m: &ValidatedProfile, genus: u64) -> i64 {
    2 * m.euler_characteristic() + genus as i64 - 4 + 4 * m.b1_f2() as i64
}

/// `2σ(N) = 4σ(M) - e(F)`. Defined for every `e(F)`, so it stays integral
/// even where `σ(N)` itself would not be.
pub fn doubled_cover_signature(m: &ValidatedProfile, e_f: i64) -> i64 {
    4 * m.signature() - e_f
}

/// `|σ(N) - 2σ(M)| = |e(F)| / 2`.
pub fn signature_defect(e_f: i64) -> Result<u64, CoverError> {
    if e_f % 2 != 0 {
        return Err(CoverError::OddEulerNumber(e_f));
    }
    Ok(e_f.unsigned_abs() / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub holds: bool,
    /// The violated inequality, when there is one.
    pub witness: Option<String>,
}

/// `|σ(N)| ≤ b2(N; F_2)`. A violation means no closed 4-manifold has these
/// invariants.
pub fn consistency_check(c: &CoverProfile) -> Consistency {
    let abs_sigma = c.sigma_n.abs();
    if abs_sigma <= c.b2_f2_upper {
        Consistency {
            holds: true,
            witness: None,
        }
    } else {
        Consistency {
            holds: false,
            witness: Some(format!("{abs_sigma} > {}", c.b2_f2_upper)),
        }
    }
}
