//! Arithmetic obstructions for disjoint nonorientable surfaces in closed
//! oriented 4-manifolds.
//!
//! The crate bounds the normal-Euler excess `Σ(|e_i| - 2g_i)` of a same-sign,
//! mod-2-null family of disjoint nonorientable surfaces by a constant `D(M)`
//! depending only on the ambient manifold, and audits families of projective
//! planes against the count bound `B(M)`. Every verdict comes with a
//! replayable trace of integer identities and inequalities.
//!
//! Modules, bottom up:
//!
//! * [`gf2`]: bit-packed linear algebra over `F_2` and zero-sum solvers.
//! * [`invariants`]: manifold profiles, `D(M)` and `B(M)`.
//! * [`surface`]: surface families, tubing and the Massey set.
//! * [`cover`]: invariants of the branched double cover.
//! * [`engine`]: the excess check and the plane-family audit.
//! * [`format`], [`report`], [`cli`]: files, rendering, and the binary.
//!
//! ```
//! use excess_kit::engine::{excess_check_validated, Verdict};
//! use excess_kit::gf2::Gf2Vector;
//! use excess_kit::invariants::ManifoldProfile;
//! use excess_kit::surface::{SurfaceDatum, SurfaceFamily};
//!
//! let s4 = ManifoldProfile::new("s4", 0, 2, 0).validate().unwrap();
//! let klein = SurfaceDatum::new(2, 8, Gf2Vector::zero(0)).unwrap();
//! let family = SurfaceFamily::new(0, vec![klein]).unwrap();
//! let report = excess_check_validated(&s4, &family).unwrap();
//! assert_eq!(report.verdict, Verdict::Obstructed);
//! assert!(report.trace.replay());
//! ```

pub mod cli;
pub mod cover;
pub mod engine;
pub mod format;
pub mod gf2;
pub mod invariants;
pub mod report;
pub mod surface;
