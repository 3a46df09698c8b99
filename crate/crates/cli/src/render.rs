use std::fmt::Write;

use quandlekit::geom::{AxiomReport, BijectivityResidual};
use quandlekit::poly::{Classification, IntervalVerdict};
use quandlekit::{FiniteQuandle, FiniteSpace};

use crate::PolyPayload;

pub(crate) fn quandle_table(q: &FiniteQuandle) -> String {
    let n = q.n();
    let w = n.saturating_sub(1).to_string().len();
    let mut out = String::new();
    let _ = writeln!(out, "{:>w$} |{}", "*", (0..n).map(|j| format!(" {j:>w$}")).collect::<String>());
    let _ = writeln!(out, "{}", "-".repeat((w + 1) * (n + 1) + 1));
    for i in 0..n {
        let _ = writeln!(out, "{i:>w$} |{}", (0..n).map(|j| format!(" {:>w$}", q.op(i, j))).collect::<String>());
    }
    out
}

pub(crate) fn quandle_list(title: &str, qs: &[FiniteQuandle]) -> String {
    let mut out = format!("{title}\n");
    for (k, q) in qs.iter().enumerate() {
        let _ = write!(out, "\n#{k}\n{}", quandle_table(q));
    }
    out
}

pub(crate) fn opens(t: &FiniteSpace) -> String {
    let sets: Vec<String> = t
        .open_sets()
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{} points, opens {}", t.n(), sets.join(" "))
}

pub(crate) fn poly(p: &PolyPayload) -> String {
    let mut out = format!("P = {}\n", p.polynomial);
    if let Some(s) = &p.degree_stats {
        let _ = writeln!(out, "f_x = {}, f_y = {}, f_xy = {:?}", s.f_x, s.f_y, s.f_xy);
    }
    let class = match &p.classification {
        Classification::Affine { a } => format!("affine, a = {a}"),
        Classification::RightIndependent { p } => format!("right-independent, P(x) = {p}"),
        Classification::NotDistributive { witness: w } => format!(
            "not distributive: at (x,y,z) = ({}, {}, {}) the sides are {} and {}",
            w.x, w.y, w.z, w.left, w.right
        ),
        Classification::NeedsReview { reason, .. } => format!("needs review: {reason}"),
    };
    let _ = writeln!(out, "classification: {class}");
    if let Some(v) = &p.interval_verdict {
        let verdict = match v {
            IntervalVerdict::IsTrivialOp => "the trivial operation x".to_string(),
            IntervalVerdict::ViolatesIdempotency { x, value } => format!("not idempotent, P({x}) = {value}"),
            IntervalVerdict::ViolatesBoundary { a } => format!("fails 0*y = 0 since a = {a} is not 1"),
        };
        let _ = writeln!(out, "on [0,1]: {verdict}");
    }
    out
}

pub(crate) fn axiom_report(r: &AxiomReport) -> String {
    let bij = match r.right_bijectivity {
        BijectivityResidual::Checked(v) => format!("{v:e}"),
        BijectivityResidual::Unsupported => "unsupported".to_string(),
    };
    let mut out = format!("{} ({} trials, seed {}, tol {:e})\n", r.op, r.trials, r.seed, r.tol);
    let _ = writeln!(out, "  idempotency           {:e}", r.idempotency);
    let _ = writeln!(out, "  right bijectivity     {bij}");
    let _ = writeln!(out, "  right distributivity  {:e}", r.right_distributivity);
    let _ = writeln!(out, "{}", if r.passed() { "PASS".to_string() } else { format!("FLAGGED: {}", r.flagged.join(", ")) });
    out
}
