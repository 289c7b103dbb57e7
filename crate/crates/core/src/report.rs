//! Text and JSON rendering.
//!
//! JSON documents are canonical: keys sorted, two-space indentation, integers
//! and strings only. Parsing an emitted document and serializing it again
//! gives the same bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::{consistency_check, CoverProfile};
use crate::engine::{AuditReport, ObstructionReport, ProofTrace, SubfamilyAudit};
use crate::invariants::ValidatedProfile;
use crate::surface::TubedSurface;

/// Sorted-key pretty JSON.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&value).expect("values serialize")
}

fn write_trace(out: &mut String, trace: &ProofTrace, indent: &str) {
    for (i, step) in trace.steps().iter().enumerate() {
        let _ = writeln!(
            out,
            "{indent}{:>2}. {}: {} {} {}  [{}]",
            i + 1,
            step.label,
            step.lhs,
            step.rel.symbol(),
            step.rhs,
            step.anchor
        );
    }
}

fn write_list(out: &mut String, title: &str, items: &[String], indent: &str) {
    if items.is_empty() {
        return;
    }
    let _ = writeln!(out, "{indent}{title}:");
    for item in items {
        let _ = writeln!(out, "{indent}  - {item}");
    }
}

pub fn report_text(r: &ObstructionReport) -> String {
    let mut out = String::new();
    write_report(&mut out, r, "");
    out
}

fn write_report(out: &mut String, r: &ObstructionReport, indent: &str) {
    let _ = writeln!(out, "{indent}verdict: {:?}", r.verdict);
    let _ = writeln!(out, "{indent}excess sum(|e_i| - 2 g_i): {}", r.lhs);
    let _ = writeln!(out, "{indent}budget D(M): {}", r.rhs);
    write_list(out, "failed hypotheses", &r.failed_hypotheses, indent);
    let _ = writeln!(out, "{indent}trace:");
    write_trace(out, &r.trace, &format!("{indent}  "));
    write_list(out, "notes", &r.notes, indent);
    write_list(out, "assumptions", &r.assumptions, indent);
    let _ = writeln!(out, "{indent}meaning: {}", r.interpretation);
}

fn write_subfamily(out: &mut String, title: &str, a: &SubfamilyAudit) {
    let idx: Vec<String> = a.indices.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "{title}: size n = {}, members {{{}}}", a.size, idx.join(","));
    write_report(out, &a.report, "  ");
}

pub fn audit_text(r: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {:?}", r.verdict);
    let _ = writeln!(out, "planes m: {}", r.m);
    let _ = writeln!(out, "k = b2(M;F2): {}", r.k);
    let _ = writeln!(out, "D(M): {}", r.d_of_m);
    let _ = writeln!(out, "B(M): {}", r.b_of_m);
    let _ = writeln!(out, "majority sign: {:?}, s = {}", r.majority_sign, r.s);
    let _ = writeln!(out, "trace:");
    write_trace(&mut out, &r.trace, "  ");
    if let Some(c) = &r.constructive {
        write_subfamily(&mut out, "zero-sum subfamily (constructive)", c);
    }
    if let Some(e) = &r.exact {
        write_subfamily(&mut out, "zero-sum subfamily (exact maximizer, extension)", e);
    }
    write_list(&mut out, "notes", &r.notes, "");
    write_list(&mut out, "assumptions", &r.assumptions, "");
    let _ = writeln!(out, "meaning: {}", r.interpretation);
    out
}

#[derive(Serialize)]
pub struct ProfileSummary<'a> {
    pub name: &'a str,
    pub signature: i64,
    pub euler_characteristic: i64,
    pub b1_f2: u64,
    pub b2_f2: u64,
    pub d_of_m: u64,
    pub b_of_m: u64,
}

impl<'a> From<&'a ValidatedProfile> for ProfileSummary<'a> {
    fn from(p: &'a ValidatedProfile) -> Self {
        Self {
            name: p.name(),
            signature: p.signature(),
            euler_characteristic: p.euler_characteristic(),
            b1_f2: p.b1_f2(),
            b2_f2: p.b2_f2(),
            d_of_m: p.excess_budget(),
            b_of_m: p.plane_bound(),
        }
    }
}

pub fn profile_text(p: &ValidatedProfile) -> String {
    format!(
        "{}: signature {}, euler_characteristic {}, b1_f2 {}, b2_f2 {}, D(M) {} (upper bound), B(M) {} (upper bound)\n",
        p.name(),
        p.signature(),
        p.euler_characteristic(),
        p.b1_f2(),
        p.b2_f2(),
        p.excess_budget(),
        p.plane_bound()
    )
}

pub fn tube_text(t: &TubedSurface) -> String {
    format!(
        "genus: {}\neuler_number: {}\neuler_characteristic: {}\nclass: \"{}\"\n",
        t.genus, t.euler_number, t.euler_characteristic, t.mod2_class
    )
}

pub fn cover_text(c: &CoverProfile) -> String {
    let check = consistency_check(c);
    let mut out = format!(
        "sigma_n: {}\nchi_n: {}\nramification_euler: {}\nb1_f2_upper: {}\nb2_f2_upper: {}\n",
        c.sigma_n, c.chi_n, c.ramification_euler, c.b1_f2_upper, c.b2_f2_upper
    );
    match check.witness {
        None => out.push_str("consistency |sigma_n| <= b2_f2_upper: holds\n"),
        Some(w) => {
            let _ = writeln!(
                out,
                "consistency |sigma_n| <= b2_f2_upper: fails ({w}); no closed 4-manifold has these invariants"
            );
        }
    }
    out
}
