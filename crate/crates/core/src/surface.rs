//! Surface families, tubing, sign classes, and the Massey set for `S^4`.
//!
//! Surfaces are closed, connected and nonorientable; `genus` is the
//! nonorientable genus (number of cross-caps) and `euler_number` the twisted
//! normal Euler number with respect to a fixed orientation of the ambient
//! manifold. Disjointness and local flatness are declared by the caller and
//! never checked here.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::Gf2Vector;
use crate::invariants::MAX_MAGNITUDE;

/// Largest genus for which [`massey_admissible_set`] materializes the list.
pub const MAX_LISTED_GENUS: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("nonorientable genus must be at least 1, got {0}")]
    InvalidGenus(u64),
    #[error("surface family is empty")]
    EmptyFamily,
    #[error("member {index}: class has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("member index {index} is out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("field `{field}` = {value} is out of range")]
    OutOfRange { field: &'static str, value: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceDatum {
    genus: u64,
    euler_number: i64,
    mod2_class: Gf2Vector,
}

impl SurfaceDatum {
    pub fn new(genus: u64, euler_number: i64, mod2_class: Gf2Vector) -> Result<Self, SurfaceError> {
        if genus < 1 {
            return Err(SurfaceError::InvalidGenus(genus));
        }
        if genus > MAX_MAGNITUDE as u64 {
            return Err(SurfaceError::OutOfRange {
                field: "genus",
                value: genus.into(),
            });
        }
        if euler_number.abs() > MAX_MAGNITUDE {
            return Err(SurfaceError::OutOfRange {
                field: "euler_number",
                value: euler_number.into(),
            });
        }
        Ok(Self {
            genus,
            euler_number,
            mod2_class,
        })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn euler_number(&self) -> i64 {
        self.euler_number
    }

    pub fn mod2_class(&self) -> &Gf2Vector {
        &self.mod2_class
    }

    /// `χ = 2 - g`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - self.genus as i64
    }

    /// `|e| - 2g`, this member's contribution to the excess.
    pub fn excess(&self) -> i64 {
        self.euler_number.abs() - 2 * self.genus as i64
    }
}

/// Nonempty ordered list of surfaces whose classes live in `F_2^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceFamily {
    ambient_dim: usize,
    members: Vec<SurfaceDatum>,
}

impl SurfaceFamily {
    pub fn new(ambient_dim: usize, members: Vec<SurfaceDatum>) -> Result<Self, SurfaceError> {
        if members.is_empty() {
            return Err(SurfaceError::EmptyFamily);
        }
        if let Some((i, s)) = members
            .iter()
            .enumerate()
            .find(|(_, s)| s.mod2_class.dim() != ambient_dim)
        {
            return Err(SurfaceError::DimensionMismatch {
                index: i + 1,
                expected: ambient_dim,
                found: s.mod2_class.dim(),
            });
        }
        Ok(Self {
            ambient_dim,
            members,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[SurfaceDatum] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The members at the given 1-based indices, in that order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<SurfaceFamily, SurfaceError> {
        let members = indices
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .and_then(|k| self.members.get(k))
                    .cloned()
                    .ok_or(SurfaceError::IndexOutOfRange { index: i, len: self.len() })
            })
            .collect::<Result<_, _>>()?;
        SurfaceFamily::new(self.ambient_dim, members)
    }

    pub fn euler_numbers(&self) -> Vec<i64> {
        self.members.iter().map(|s| s.euler_number).collect()
    }

    /// `Σ(|e_i| - 2g_i)`.
    pub fn total_excess(&self) -> i64 {
        self.members.iter().map(SurfaceDatum::excess).sum()
    }
}

/// Ambient connected sum of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TubedSurface {
    pub genus: u64,
    pub euler_number: i64,
    pub euler_characteristic: i64,
    pub mod2_class: Gf2Vector,
}

impl TubedSurface {
    /// A single surface viewed as the (trivial) tubing of itself.
    pub fn from_single(s: &SurfaceDatum) -> Self {
        Self {
            genus: s.genus,
            euler_number: s.euler_number,
            euler_characteristic: s.euler_characteristic(),
            mod2_class: s.mod2_class.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignClass {
    NonNegative,
    NonPositive,
    Mixed,
}

impl SignClass {
    pub fn is_same_sign(self) -> bool {
        self != SignClass::Mixed
    }
}

/// Tubes a family together; see [`tube_surfaces`].
pub fn tube(f: &SurfaceFamily) -> TubedSurface {
    tube_surfaces(&f.members).expect("families are nonempty")
}

/// Genus, Euler number and class add; `χ` drops by 2 per tube.
pub fn tube_surfaces(members: &[SurfaceDatum]) -> Result<TubedSurface, SurfaceError> {
    let first = members.first().ok_or(SurfaceError::EmptyFamily)?;
    let r = members.len() as i64;
    let mut class = Gf2Vector::zero(first.mod2_class.dim());
    for s in members {
        class.add_assign(&s.mod2_class);
    }
    let genus: u64 = members.iter().map(|s| s.genus).sum();
    let chi_sum: i64 = members.iter().map(SurfaceDatum::euler_characteristic).sum::<i64>() - 2 * (r - 1);
    let chi_genus = 2 - genus as i64;
    assert_eq!(chi_sum, chi_genus, "Euler characteristic formulas disagree");
    Ok(TubedSurface {
        genus,
        euler_number: members.iter().map(|s| s.euler_number).sum(),
        euler_characteristic: chi_sum,
        mod2_class: class,
    })
}

/// Classifies a nonempty list of Euler numbers. All-zero lists are
/// `NonNegative`.
pub fn sign_class_of(euler_numbers: &[i64]) -> Result<SignClass, SurfaceError> {
    if euler_numbers.is_empty() {
        return Err(SurfaceError::EmptyFamily);
    }
    Ok(if euler_numbers.iter().all(|&e| e >= 0) {
        SignClass::NonNegative
    } else if euler_numbers.iter().all(|&e| e <= 0) {
        SignClass::NonPositive
    } else {
        SignClass::Mixed
    })
}

pub fn sign_class(f: &SurfaceFamily) -> SignClass {
    sign_class_of(&f.euler_numbers()).expect("families are nonempty")
}

/// `{-2g, -2g+4, ..., 2g}` in increasing order.
pub fn massey_admissible_set(g: u64) -> Result<Vec<i64>, SurfaceError> {
    if g < 1 {
        return Err(SurfaceError::InvalidGenus(g));
    }
    if g > MAX_LISTED_GENUS {
        return Err(SurfaceError::OutOfRange {
            field: "genus",
            value: g.into(),
        });
    }
    let g = g as i64;
    Ok((0..=g).map(|j| -2 * g + 4 * j).collect())
}

/// Membership in the Massey set: `|e| ≤ 2g` and `e ≡ 2g (mod 4)`.
pub fn massey_check(g: u64, e: i64) -> Result<bool, SurfaceError> {
    if g < 1 {
        return Err(SurfaceError::InvalidGenus(g));
    }
    let (g, e) = (i128::from(g), i128::from(e));
    Ok(e.abs() <= 2 * g && (e - 2 * g).rem_euclid(4) == 0)
}

/// Zero section of an orientable plane bundle over a nonorientable surface of
/// genus `g`: its twisted normal Euler number is the bundle's twisted Euler
/// number.
pub fn bundle_to_surface(g: u64, twisted_euler: i64, mod2_class: Gf2Vector) -> Result<SurfaceDatum, SurfaceError> {
    SurfaceDatum::new(g, twisted_euler, mod2_class)
}
