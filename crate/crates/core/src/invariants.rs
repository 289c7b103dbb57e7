//! Invariant profiles of closed connected oriented 4-manifolds.
//!
//! A profile stores only the signature, the Euler characteristic and the first
//! mod-2 Betti number. The second mod-2 Betti number follows from Poincaré
//! duality over `F_2`: `b2 = χ - 2 + 2·b1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Inputs beyond this magnitude are rejected so every derived quantity stays
/// exact in `i64`.
pub const MAX_MAGNITUDE: i64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("profile `{name}`: derived b2 over F2 is {b2}, which is negative")]
    NegativeB2 { name: String, b2: i64 },
    #[error("profile `{name}`: |signature| = {abs_signature} exceeds b2 over F2 = {b2}")]
    SignatureExceedsRank {
        name: String,
        abs_signature: i64,
        b2: i64,
    },
    #[error("profile `{name}`: field `{field}` = {value} is out of range")]
    OutOfRange {
        name: String,
        field: &'static str,
        value: i128,
    },
}

/// Raw invariant tuple as read from a profile file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldProfile {
    pub name: String,
    pub signature: i64,
    pub euler_characteristic: i64,
    pub b1_f2: u64,
}

impl ManifoldProfile {
    pub fn new(name: impl Into<String>, signature: i64, euler_characteristic: i64, b1_f2: u64) -> Self {
        Self {
            name: name.into(),
            signature,
            euler_characteristic,
            b1_f2,
        }
    }

    /// `χ - 2 + 2·b1`, possibly negative for inadmissible tuples.
    pub fn derived_b2_f2(&self) -> i64 {
        self.euler_characteristic - 2 + 2 * self.b1_f2 as i64
    }

    pub fn validate(&self) -> Result<ValidatedProfile, ProfileError> {
        validate_profile(self)
    }
}

/// A profile that passed both admissibility checks, with `b2` attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedProfile {
    profile: ManifoldProfile,
    b2_f2: u64,
}

impl ValidatedProfile {
    pub fn profile(&self) -> &ManifoldProfile {
        &self.profile
    }

    pub fn name(&self) -> &str {
        &self.profile.name
    }

    pub fn signature(&self) -> i64 {
        self.profile.signature
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.profile.euler_characteristic
    }

    pub fn b1_f2(&self) -> u64 {
        self.profile.b1_f2
    }

    pub fn b2_f2(&self) -> u64 {
        self.b2_f2
    }

    /// `D(M)` in the `4|σ| + 8·b1 + 4χ - 8` form.
    pub fn excess_budget_from_b1(&self) -> i64 {
        4 * self.signature().abs() + 8 * self.b1_f2() as i64 + 4 * self.euler_characteristic() - 8
    }

    /// `D(M)` in the `4|σ| + 4·b2` form.
    pub fn excess_budget_from_b2(&self) -> i64 {
        4 * self.signature().abs() + 4 * self.b2_f2 as i64
    }

    pub fn excess_budget(&self) -> u64 {
        let from_b1 = self.excess_budget_from_b1();
        let from_b2 = self.excess_budget_from_b2();
        assert_eq!(from_b1, from_b2, "closed forms of D(M) disagree");
        from_b2 as u64
    }

    /// `B(M) = 2·(b2 + D(M))`.
    pub fn plane_bound(&self) -> u64 {
        2 * (self.b2_f2 + self.excess_budget())
    }

    pub fn budget(&self) -> BudgetReport {
        BudgetReport {
            d_of_m: self.excess_budget(),
            b_of_m: self.plane_bound(),
            b2_f2: self.b2_f2,
        }
    }

    /// True when the invariants are those of a homology 4-sphere.
    pub fn is_homology_sphere(&self) -> bool {
        self.signature() == 0 && self.euler_characteristic() == 2 && self.b1_f2() == 0
    }

    /// Same invariants, ignoring the name.
    pub fn same_invariants(&self, other: &ValidatedProfile) -> bool {
        self.signature() == other.signature()
            && self.euler_characteristic() == other.euler_characteristic()
            && self.b1_f2() == other.b1_f2()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub d_of_m: u64,
    pub b_of_m: u64,
    pub b2_f2: u64,
}

pub fn validate_profile(p: &ManifoldProfile) -> Result<ValidatedProfile, ProfileError> {
    let out_of_range = |field, value: i128| ProfileError::OutOfRange {
        name: p.name.clone(),
        field,
        value,
    };
    if p.signature.abs() > MAX_MAGNITUDE {
        return Err(out_of_range("signature", p.signature.into()));
    }
    if p.euler_characteristic.abs() > MAX_MAGNITUDE {
        return Err(out_of_range("euler_characteristic", p.euler_characteristic.into()));
    }
    if p.b1_f2 > MAX_MAGNITUDE as u64 {
        return Err(out_of_range("b1_f2", p.b1_f2.into()));
    }
    let b2 = p.derived_b2_f2();
    if b2 < 0 {
        return Err(ProfileError::NegativeB2 {
            name: p.name.clone(),
            b2,
        });
    }
    if p.signature.abs() > b2 {
        return Err(ProfileError::SignatureExceedsRank {
            name: p.name.clone(),
            abs_signature: p.signature.abs(),
            b2,
        });
    }
    Ok(ValidatedProfile {
        profile: p.clone(),
        b2_f2: b2 as u64,
    })
}

/// `D(M) = 4|σ| + 8·b1 + 4χ - 8`.
pub fn excess_budget(p: &ManifoldProfile) -> Result<u64, ProfileError> {
    Ok(validate_profile(p)?.excess_budget())
}

/// `B(M) = 2·(b2 + D(M))`.
pub fn plane_bound(p: &ManifoldProfile) -> Result<u64, ProfileError> {
    Ok(validate_profile(p)?.plane_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validation_examples() {
        let s4 = ManifoldProfile::new("s4", 0, 2, 0).validate().unwrap();
        assert_eq!(s4.b2_f2(), 0);
        assert!(s4.is_homology_sphere());
        assert!(matches!(
            ManifoldProfile::new("x", 3, 3, 0).validate(),
            Err(ProfileError::SignatureExceedsRank { b2: 1, .. })
        ));
        assert!(matches!(
            ManifoldProfile::new("x", 0, 1, 0).validate(),
            Err(ProfileError::NegativeB2 { b2: -1, .. })
        ));
        assert!(matches!(
            ManifoldProfile::new("x", 0, 1 << 41, 0).validate(),
            Err(ProfileError::OutOfRange { field: "euler_characteristic", .. })
        ));
    }

    #[test]
    fn budget_examples() {
        let cases = [((0, 2, 0), 0, 0), ((1, 3, 0), 8, 18), ((0, 2, 1), 8, 20)];
        for ((sigma, chi, b1), d, b) in cases {
            let p = ManifoldProfile::new("p", sigma, chi, b1);
            // both closed forms, evaluated independently of the library
            let b2 = chi - 2 + 2 * b1 as i64;
            assert_eq!(4 * sigma.abs() + 8 * b1 as i64 + 4 * chi - 8, d as i64);
            assert_eq!(4 * sigma.abs() + 4 * b2, d as i64);
            assert_eq!(excess_budget(&p).unwrap(), d);
            assert_eq!(plane_bound(&p).unwrap(), b);
        }
        assert!(excess_budget(&ManifoldProfile::new("x", 0, 1, 0)).is_err());
        assert!(plane_bound(&ManifoldProfile::new("x", 5, 3, 0)).is_err());
    }

    proptest! {
        #[test]
        fn validation_matches_direct_recheck(sigma in -20i64..20, chi in -20i64..30, b1 in 0u64..10) {
            let p = ManifoldProfile::new("p", sigma, chi, b1);
            let b2 = chi - 2 + 2 * b1 as i64;
            let admissible = b2 >= 0 && sigma.abs() <= b2;
            prop_assert_eq!(p.validate().is_ok(), admissible);
            if let Ok(v) = p.validate() {
                prop_assert_eq!(v.excess_budget_from_b1(), v.excess_budget_from_b2());
                prop_assert!(v.excess_budget_from_b2() >= 0);
            }
        }

        #[test]
        fn plane_bound_monotone_in_b2(sigma in -5i64..5, chi in 2i64..20, b1 in 0u64..5) {
            let p = ManifoldProfile::new("p", sigma, chi, b1);
            let q = ManifoldProfile::new("q", sigma, chi + 1, b1);
            if let (Ok(a), Ok(b)) = (plane_bound(&p), plane_bound(&q)) {
                prop_assert!(a <= b);
            }
        }
    }
}
