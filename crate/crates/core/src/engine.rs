//! Verdicts and arithmetic certificates for surface families.
//!
//! [`excess_check`] tubes a same-sign, mod-2-null family into one surface,
//! passes to the branched double cover, and walks the chain of identities and
//! inequalities that ends in `Σ(|e_i| - 2g_i) ≤ D(M)`. Every link is recorded
//! as a [`ProofStep`] with the relation that actually holds between its two
//! integers, so a trace can be replayed by anyone holding the JSON.
//!
//! Quantities involving `σ(N)` are recorded doubled (`2σ(N) = 4σ(M) - e(F)`)
//! so the trace stays integral for every input.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{
    b2_upper_closed_form, branched_double_cover, consistency_check, doubled_cover_signature,
};
use crate::gf2::{max_zero_sum_subset, zero_sum_subcollection, Gf2Collection, Gf2Error, Gf2Vector};
use crate::invariants::{ManifoldProfile, ProfileError, ValidatedProfile};
use crate::surface::{massey_check, sign_class, tube, SignClass, SurfaceDatum, SurfaceFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("family classes have dimension {found}, but the ambient b2 over F2 is {expected}")]
    DimensionMismatch { expected: u64, found: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("member {index} has genus {genus}; every plane must have genus 1")]
    NotAPlaneFamily { index: usize, genus: u64 },
    #[error("member {index} has |e| = {abs_euler}; planes must have |e| > 2")]
    EulerTooSmall { index: usize, abs_euler: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }

    fn negated(self) -> Relation {
        match self {
            Relation::Le => Relation::Gt,
            Relation::Ge => Relation::Lt,
            Relation::Lt => Relation::Ge,
            Relation::Gt => Relation::Le,
            Relation::Eq => unreachable!("equalities are never negated"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub label: String,
    pub lhs: i64,
    pub rel: Relation,
    pub rhs: i64,
    pub anchor: String,
}

impl ProofStep {
    pub fn holds(&self) -> bool {
        self.rel.holds(self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProofTrace {
    steps: Vec<ProofStep>,
}

impl ProofTrace {
    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    /// True iff every recorded relation holds for its recorded values.
    pub fn replay(&self) -> bool {
        self.steps.iter().all(ProofStep::holds)
    }

    /// Records an identity. Panics if it fails: that is an arithmetic bug.
    fn equal(&mut self, label: &str, lhs: i64, rhs: i64, anchor: &str) {
        assert_eq!(lhs, rhs, "identity `{label}` failed");
        self.push(label, lhs, Relation::Eq, rhs, anchor);
    }

    /// Records an inequality that must hold.
    fn bound(&mut self, label: &str, lhs: i64, rel: Relation, rhs: i64, anchor: &str) {
        assert!(rel.holds(lhs, rhs), "inequality `{label}` failed: {lhs} vs {rhs}");
        self.push(label, lhs, rel, rhs, anchor);
    }

    /// Records whichever of `rel` or its negation holds; returns whether
    /// `rel` did.
    fn compare(&mut self, label: &str, lhs: i64, rel: Relation, rhs: i64, anchor: &str) -> bool {
        let ok = rel.holds(lhs, rhs);
        self.push(label, lhs, if ok { rel } else { rel.negated() }, rhs, anchor);
        ok
    }

    fn push(&mut self, label: &str, lhs: i64, rel: Relation, rhs: i64, anchor: &str) {
        self.steps.push(ProofStep {
            label: label.to_owned(),
            lhs,
            rel,
            rhs,
            anchor: anchor.to_owned(),
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    BoundSatisfied,
    Obstructed,
    HypothesisFailure,
}

impl Verdict {
    /// CLI exit status: 0, 1, 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::BoundSatisfied => 0,
            Verdict::Obstructed => 1,
            Verdict::HypothesisFailure => 2,
        }
    }

    fn interpretation(self) -> &'static str {
        match self {
            Verdict::BoundSatisfied => {
                "the invariants pass the excess bound; this does not assert that such surfaces exist"
            }
            Verdict::Obstructed => {
                "no configuration of pairwise disjoint locally flat surfaces with these invariants \
                 exists in any closed oriented 4-manifold with this profile"
            }
            Verdict::HypothesisFailure => {
                "the excess bound applies only to same-sign families whose mod-2 classes sum to zero; \
                 no conclusion is drawn"
            }
        }
    }
}

const ASSUMPTIONS: [&str; 3] = [
    "M is closed, connected and oriented; twisted normal Euler numbers are taken with respect to one fixed orientation of M",
    "the surfaces are pairwise disjoint, connected, nonorientable and locally flat; this is declared by the input and not checked",
    "D(M) is an upper bound on the total excess and is not claimed to be sharp",
];

fn assumptions() -> Vec<String> {
    ASSUMPTIONS.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisRecord {
    pub sign_class: SignClass,
    pub class_sum: Gf2Vector,
    pub same_sign: bool,
    pub class_sum_zero: bool,
    pub both_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// `Σ(|e_i| - 2g_i)`.
    pub lhs: i64,
    /// `D(M)`.
    pub rhs: i64,
    pub trace: ProofTrace,
    pub assumptions: Vec<String>,
    pub failed_hypotheses: Vec<String>,
    pub notes: Vec<String>,
    pub interpretation: String,
}

fn check_dims(m: &ValidatedProfile, f: &SurfaceFamily) -> Result<(), EngineError> {
    if f.ambient_dim() as u64 != m.b2_f2() {
        return Err(EngineError::DimensionMismatch {
            expected: m.b2_f2(),
            found: f.ambient_dim(),
        });
    }
    Ok(())
}

/// Same-sign and mod-2-null tests for a family.
pub fn check_hypotheses(m: &ValidatedProfile, f: &SurfaceFamily) -> Result<HypothesisRecord, EngineError> {
    check_dims(m, f)?;
    let classes = Gf2Collection::new(
        f.ambient_dim(),
        f.members().iter().map(|s| s.mod2_class().clone()).collect(),
    )
    .expect("family dimensions are uniform");
    let class_sum = classes.total();
    let sign_class = sign_class(f);
    let same_sign = sign_class.is_same_sign();
    let class_sum_zero = class_sum.is_zero();
    Ok(HypothesisRecord {
        sign_class,
        class_sum,
        same_sign,
        class_sum_zero,
        both_hold: same_sign && class_sum_zero,
    })
}

/// Validates `m`, then runs [`excess_check_validated`].
pub fn excess_check(m: &ManifoldProfile, f: &SurfaceFamily) -> Result<ObstructionReport, EngineError> {
    excess_check_validated(&m.validate()?, f)
}

pub fn excess_check_validated(
    m: &ValidatedProfile,
    f: &SurfaceFamily,
) -> Result<ObstructionReport, EngineError> {
    let hyp = check_hypotheses(m, f)?;
    let lhs = f.total_excess();
    let rhs = m.excess_budget() as i64;
    let mut trace = ProofTrace::default();
    let mut notes = Vec::new();

    let positives = f.members().iter().filter(|s| s.euler_number() > 0).count() as i64;
    let negatives = f.members().iter().filter(|s| s.euler_number() < 0).count() as i64;
    let sign_ok = trace.compare(
        "min(#{e_i > 0}, #{e_i < 0}) = 0",
        positives.min(negatives),
        Relation::Le,
        0,
        "hypothesis: e-values share a sign",
    );
    let class_ok = trace.compare(
        "weight of [F_1] + ... + [F_r] in H2(M;F2)",
        hyp.class_sum.weight() as i64,
        Relation::Le,
        0,
        "hypothesis: mod-2 classes sum to zero",
    );
    debug_assert_eq!((sign_ok, class_ok), (hyp.same_sign, hyp.class_sum_zero));

    if !hyp.both_hold {
        let mut failed = Vec::new();
        if !hyp.same_sign {
            failed.push("same_sign".to_owned());
        }
        if !hyp.class_sum_zero {
            failed.push("class_sum_zero".to_owned());
        }
        let verdict = Verdict::HypothesisFailure;
        return Ok(ObstructionReport {
            verdict,
            lhs,
            rhs,
            trace,
            assumptions: assumptions(),
            failed_hypotheses: failed,
            notes,
            interpretation: verdict.interpretation().to_owned(),
        });
    }

    let r = f.len() as i64;
    let sum_g: i64 = f.members().iter().map(|s| s.genus() as i64).sum();
    let sum_chi: i64 = f.members().iter().map(SurfaceDatum::euler_characteristic).sum();
    let sum_e: i64 = f.members().iter().map(SurfaceDatum::euler_number).sum();
    let sum_abs_e: i64 = f.members().iter().map(|s| s.euler_number().abs()).sum();
    let sigma = m.signature();
    let chi = m.euler_characteristic();
    let b1 = m.b1_f2() as i64;
    let b2 = m.b2_f2() as i64;

    // Tubing.
    let t = tube(f);
    let g_f = t.genus as i64;
    trace.equal("g(F) = sum g_i", g_f, sum_g, "tubing: nonorientable genera add");
    trace.equal(
        "chi(F) = sum chi(F_i) - 2(r - 1)",
        t.euler_characteristic,
        sum_chi - 2 * (r - 1),
        "tubing: each tube lowers the Euler characteristic by 2",
    );
    trace.equal("chi(F) = 2 - g(F)", t.euler_characteristic, 2 - g_f, "closed nonorientable surface");
    trace.equal("e(F) = sum e_i", t.euler_number, sum_e, "tubing: twisted normal Euler numbers add");
    trace.equal(
        "weight of [F] in H2(M;F2)",
        t.mod2_class.weight() as i64,
        0,
        "tubing: mod-2 classes add",
    );
    trace.equal("|e(F)| = sum |e_i|", t.euler_number.abs(), sum_abs_e, "same sign: no cancellation");

    // Branched double cover. Exists as a profile only for even e(F).
    let cover = branched_double_cover(m, &t).ok();
    if cover.is_none() {
        notes.push(format!(
            "e(F) = {} is odd, which is incompatible with e(F) = 2e(A) for the branched cover; \
             the chain is evaluated in doubled units without that constraint",
            t.euler_number
        ));
    }
    let two_sigma_n = cover.map_or_else(|| doubled_cover_signature(m, t.euler_number), |c| 2 * c.sigma_n);
    let chi_n = cover.map_or(2 * chi - t.euler_characteristic, |c| c.chi_n);
    let b1_n_upper = cover.map_or(2 * b1, |c| c.b1_f2_upper as i64);
    let b2_n_upper = cover.map_or(chi_n - 2 + 2 * b1_n_upper, |c| c.b2_f2_upper);

    trace.equal(
        "2 sigma(N) = 4 sigma(M) - e(F)",
        two_sigma_n,
        4 * sigma - t.euler_number,
        "branched double cover: signature formula",
    );
    trace.equal(
        "|2 sigma(N) - 4 sigma(M)| = |e(F)|",
        (two_sigma_n - 4 * sigma).abs(),
        t.euler_number.abs(),
        "branched double cover: signature defect",
    );
    trace.bound(
        "sum |e_i| <= |2 sigma(N)| + 4|sigma(M)|",
        sum_abs_e,
        Relation::Le,
        two_sigma_n.abs() + 4 * sigma.abs(),
        "triangle inequality",
    );
    trace.equal(
        "chi(N) = 2 chi(M) - chi(F)",
        chi_n,
        2 * chi - t.euler_characteristic,
        "branched double cover: Euler characteristic formula",
    );
    trace.equal(
        "b1(N;F2) upper bound = 2 b1(M;F2)",
        b1_n_upper,
        2 * b1,
        "branched double cover: b1 bound",
    );
    trace.equal(
        "b2(M;F2) = chi(M) - 2 + 2 b1(M;F2)",
        b2,
        chi - 2 + 2 * b1,
        "Poincare duality over F2 for M",
    );
    trace.equal(
        "b2(N;F2) upper bound = chi(N) - 2 + 2 b1(N;F2) upper bound",
        b2_n_upper,
        chi_n - 2 + 2 * b1_n_upper,
        "Poincare duality over F2 for N",
    );
    trace.equal(
        "b2(N;F2) upper bound = 2 chi(M) + g(F) - 4 + 4 b1(M;F2)",
        b2_n_upper,
        b2_upper_closed_form(m, t.genus),
        "substitution",
    );
    let cover_consistent = trace.compare(
        "|2 sigma(N)| <= 2 b2(N;F2) upper bound",
        two_sigma_n.abs(),
        Relation::Le,
        2 * b2_n_upper,
        "|sigma| <= b2(R) <= b2(F2)",
    );
    if let Some(c) = cover {
        debug_assert_eq!(consistency_check(&c).holds, cover_consistent);
    }
    trace.compare(
        "sum |e_i| <= 2(2 chi(M) + g(F) - 4 + 4 b1(M;F2)) + 4|sigma(M)|",
        sum_abs_e,
        Relation::Le,
        2 * b2_n_upper + 4 * sigma.abs(),
        "combine the two previous bounds",
    );
    trace.equal(
        "2 chi(M) + g(F) - 4 + 4 b1(M;F2) = g(F) + 2 b2(M;F2)",
        b2_n_upper,
        g_f + 2 * b2,
        "Poincare duality over F2 for M",
    );
    trace.compare(
        "sum |e_i| <= 2 sum g_i + 4|sigma(M)| + 4 b2(M;F2)",
        sum_abs_e,
        Relation::Le,
        2 * sum_g + 4 * sigma.abs() + 4 * b2,
        "substitution",
    );
    trace.equal(
        "4|sigma(M)| + 8 b1(M;F2) + 4 chi(M) - 8 = 4|sigma(M)| + 4 b2(M;F2)",
        4 * sigma.abs() + 8 * b1 + 4 * chi - 8,
        4 * sigma.abs() + 4 * b2,
        "closed forms of D(M)",
    );
    let within = trace.compare(
        "sum (|e_i| - 2 g_i) <= D(M)",
        lhs,
        Relation::Le,
        rhs,
        "excess bound",
    );

    if within && !cover_consistent {
        notes.push(format!(
            "the cover inequality |sigma(N)| <= b2(N;F2) fails ({} > {} in doubled units); \
             this is sharper than the excess bound and is reported for information only",
            two_sigma_n.abs(),
            2 * b2_n_upper
        ));
    }
    if m.is_homology_sphere() {
        let member = massey_check(t.genus, t.euler_number).expect("genus >= 1");
        notes.push(format!(
            "Massey set membership of the tubed surface (g = {}, e = {}) on S^4: {}; \
             informational only, the excess bound does not use the mod-4 condition",
            t.genus,
            t.euler_number,
            if member { "member" } else { "not a member" }
        ));
    }

    let verdict = if within {
        Verdict::BoundSatisfied
    } else {
        Verdict::Obstructed
    };
    Ok(ObstructionReport {
        verdict,
        lhs,
        rhs,
        trace,
        assumptions: assumptions(),
        failed_hypotheses: Vec::new(),
        notes,
        interpretation: verdict.interpretation().to_owned(),
    })
}

/// Runs [`excess_check_validated`] on each family in parallel; results are
/// in input order.
pub fn sweep(m: &ValidatedProfile, families: &[SurfaceFamily]) -> Result<Vec<ObstructionReport>, EngineError> {
    families
        .par_iter()
        .map(|f| excess_check_validated(m, f))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub genus: u64,
    pub euler_number: i64,
    pub verdict: Verdict,
    pub lhs: i64,
    pub rhs: i64,
}

/// Single-surface families with zero class for every `1 ≤ g ≤ max_genus`
/// and `|e| ≤ max_abs_euler`, ordered by genus then Euler number.
pub fn single_surface_sweep(m: &ValidatedProfile, max_genus: u64, max_abs_euler: i64) -> Vec<SweepEntry> {
    let k = m.b2_f2() as usize;
    let grid: Vec<(u64, i64)> = (1..=max_genus)
        .flat_map(|g| (-max_abs_euler..=max_abs_euler).map(move |e| (g, e)))
        .collect();
    grid.par_iter()
        .map(|&(g, e)| {
            let s = SurfaceDatum::new(g, e, Gf2Vector::zero(k)).expect("grid values are in range");
            let f = SurfaceFamily::new(k, vec![s]).expect("one member");
            let r = excess_check_validated(m, &f).expect("dimensions match by construction");
            SweepEntry {
                genus: g,
                euler_number: e,
                verdict: r.verdict,
                lhs: r.lhs,
                rhs: r.rhs,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AuditOptions {
    /// Also run the exact zero-sum maximizer.
    pub exact: bool,
    /// Node budget for the exact maximizer; 0 picks one automatically.
    pub effort_limit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubfamilyAudit {
    /// 1-based indices into the audited family.
    pub indices: Vec<usize>,
    pub size: usize,
    pub report: ObstructionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub m: usize,
    pub k: u64,
    pub d_of_m: u64,
    pub b_of_m: u64,
    pub majority_sign: SignClass,
    pub majority_indices: Vec<usize>,
    pub s: usize,
    /// Zero-sum subfamily from the constructive certificate, when `s > k`.
    pub constructive: Option<SubfamilyAudit>,
    /// Zero-sum subfamily from the exact maximizer (extension, opt-in).
    pub exact: Option<SubfamilyAudit>,
    pub trace: ProofTrace,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub interpretation: String,
}

/// Counting argument for families of projective planes with `|e| > 2`.
pub fn plane_family_audit(
    m: &ValidatedProfile,
    planes: &SurfaceFamily,
    options: AuditOptions,
) -> Result<AuditReport, EngineError> {
    check_dims(m, planes)?;
    for (i, p) in planes.members().iter().enumerate() {
        if p.genus() != 1 {
            return Err(EngineError::NotAPlaneFamily {
                index: i + 1,
                genus: p.genus(),
            });
        }
        if p.euler_number().unsigned_abs() <= 2 {
            return Err(EngineError::EulerTooSmall {
                index: i + 1,
                abs_euler: p.euler_number().unsigned_abs(),
            });
        }
    }

    let count = planes.len();
    let k = m.b2_f2();
    let d = m.excess_budget();
    let b = m.plane_bound();
    let mut trace = ProofTrace::default();
    let mut notes = Vec::new();

    trace.equal(
        "B(M) = 2(b2(M;F2) + D(M))",
        b as i64,
        2 * (k as i64 + 4 * m.signature().abs() + 8 * m.b1_f2() as i64 + 4 * m.euler_characteristic() - 8),
        "plane count bound",
    );
    let count_ok = trace.compare("m <= B(M)", count as i64, Relation::Le, b as i64, "plane count bound");

    let nonneg: Vec<usize> = (1..=count).filter(|&i| planes.members()[i - 1].euler_number() >= 0).collect();
    let nonpos: Vec<usize> = (1..=count).filter(|&i| planes.members()[i - 1].euler_number() <= 0).collect();
    let (majority_sign, majority) = if nonneg.len() >= nonpos.len() {
        (SignClass::NonNegative, nonneg)
    } else {
        (SignClass::NonPositive, nonpos)
    };
    let s = majority.len();
    trace.bound("m <= 2s", count as i64, Relation::Le, 2 * s as i64, "majority sign");

    let mut constructive = None;
    let mut exact = None;
    if trace.compare("s <= k", s as i64, Relation::Le, k as i64, "case split on s") {
        trace.bound("m <= 2k", count as i64, Relation::Le, 2 * k as i64, "m <= 2s <= 2k");
    } else {
        let sub = planes.subfamily(&majority).expect("majority indices are in range");
        let classes = Gf2Collection::new(
            k as usize,
            sub.members().iter().map(|p| p.mod2_class().clone()).collect(),
        )
        .expect("family dimensions are uniform");

        let cert = zero_sum_subcollection(&classes);
        let audit = audit_subfamily(m, planes, &majority, cert.indices())?;
        let n = audit.size as i64;
        let sub_excess = audit.report.lhs;
        trace.bound("n >= s - k", n, Relation::Ge, s as i64 - k as i64, "zero-sum subcollection");
        trace.bound("n >= 1", n, Relation::Ge, 1, "zero-sum subcollection is nonempty");
        trace.bound(
            "n <= sum (|e_i| - 2) over the subfamily",
            n,
            Relation::Le,
            sub_excess,
            "each plane has |e| - 2 >= 1",
        );
        trace.compare(
            "sum (|e_i| - 2) over the subfamily <= D(M)",
            sub_excess,
            Relation::Le,
            d as i64,
            "excess bound",
        );
        constructive = Some(audit);

        if options.exact {
            match max_zero_sum_subset(&classes, options.effort_limit) {
                Ok(best) if !best.is_empty() => {
                    let audit = audit_subfamily(m, planes, &majority, best.indices())?;
                    notes.push(format!(
                        "extension: exact maximizer found a zero-sum subfamily of size {} (constructive: {})",
                        audit.size,
                        constructive.as_ref().map_or(0, |c| c.size)
                    ));
                    exact = Some(audit);
                }
                Ok(_) => {}
                Err(Gf2Error::EffortExceeded { required, limit, .. }) => notes.push(format!(
                    "extension: exact maximizer skipped, it needs {required} nodes and the budget is {limit}"
                )),
                Err(e) => unreachable!("exact maximizer failed on a valid collection: {e}"),
            }
        }
    }
    trace.compare(
        "m <= 2(k + D(M))",
        count as i64,
        Relation::Le,
        2 * (k + d) as i64,
        "plane count bound",
    );

    let sub_obstructed = |a: &Option<SubfamilyAudit>| {
        a.as_ref().is_some_and(|a| a.report.verdict == Verdict::Obstructed)
    };
    let verdict = if !count_ok || sub_obstructed(&constructive) || sub_obstructed(&exact) {
        Verdict::Obstructed
    } else {
        Verdict::BoundSatisfied
    };
    Ok(AuditReport {
        verdict,
        m: count,
        k,
        d_of_m: d,
        b_of_m: b,
        majority_sign,
        majority_indices: majority,
        s,
        constructive,
        exact,
        trace,
        assumptions: assumptions(),
        notes,
        interpretation: verdict.interpretation().to_owned(),
    })
}

/// `local` indexes into `majority`, which indexes into `planes`.
fn audit_subfamily(
    m: &ValidatedProfile,
    planes: &SurfaceFamily,
    majority: &[usize],
    local: &[usize],
) -> Result<SubfamilyAudit, EngineError> {
    let indices: Vec<usize> = local.iter().map(|&j| majority[j - 1]).collect();
    let sub = planes.subfamily(&indices).expect("indices are in range");
    let report = excess_check_validated(m, &sub)?;
    assert_ne!(
        report.verdict,
        Verdict::HypothesisFailure,
        "zero-sum same-sign subfamilies satisfy both hypotheses"
    );
    Ok(SubfamilyAudit {
        size: indices.len(),
        indices,
        report,
    })
}
