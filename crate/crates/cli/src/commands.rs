use quandlekit::affine::{self, IsoDecision, NonIsoCertificate, RationalParam};
use quandlekit::coloring::{self, AlexanderCount, BraidWord, ColoringCount};
use quandlekit::geom::{self, SampledQuandle};
use quandlekit::poly::{self, Classification, DegreeStats, IntervalVerdict, Poly2};
use quandlekit::quandle::{self, ValidationReport};
use quandlekit::topology::{self, TopCheck};
use quandlekit::{Error, FiniteQuandle, FiniteSpace, Perm, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::render;
use crate::specs::{parse_quandle_spec, parse_topology_spec, read_json, read_rows};
use crate::{ColorMethod, Output};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoPayload {
    pub isomorphic: bool,
    /// `witness[i]` is the image of element `i`.
    pub witness: Option<Perm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumeratePayload {
    pub n: usize,
    pub count: usize,
    pub quandles: Vec<FiniteQuandle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopoEnumeratePayload {
    pub topology: FiniteSpace,
    pub count: usize,
    pub quandles: Vec<FiniteQuandle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopoCheckPayload {
    pub topology: FiniteSpace,
    pub quandle: FiniteQuandle,
    pub continuous: bool,
    pub check: TopCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagPayload {
    pub t: Vec<RationalParam>,
    pub s: Vec<RationalParam>,
    pub isomorphic: bool,
    /// `p` with `s[i] = t[p(i)]`.
    pub permutation: Option<Perm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyPayload {
    pub polynomial: Poly2,
    pub degree_stats: Option<DegreeStats>,
    pub classification: Classification,
    /// Present when the classification admits a verdict.
    pub interval_verdict: Option<IntervalVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorPayload {
    pub method: String,
    pub result: ColoringCount,
    pub alexander: Option<AlexanderCount>,
}

pub(crate) fn quandle_validate(file: &str, rack: bool) -> Output {
    let rows = read_rows(file)?;
    let report = if rack { quandle::validate_rack(&rows)? } else { quandle::validate_quandle(&rows)? };
    let table = match &report {
        ValidationReport::Valid => format!("valid {} of order {}", if rack { "rack" } else { "quandle" }, rows.len()),
        ValidationReport::Violation { axiom, witness } => format!("violates {axiom} at {witness:?}"),
    };
    Ok((to_value(&report), Some(table)))
}

pub(crate) fn quandle_iso(a: &str, b: &str) -> Output {
    let (qa, qb) = (parse_quandle_spec(a)?, parse_quandle_spec(b)?);
    let witness = quandle::is_isomorphic(&qa, &qb);
    let table = match &witness {
        Some(p) => format!("isomorphic via {:?}", p.images()),
        None => "not isomorphic".to_string(),
    };
    Ok((to_value(&IsoPayload { isomorphic: witness.is_some(), witness }), Some(table)))
}

pub(crate) fn quandle_enumerate(n: usize, max_n: usize) -> Output {
    let opts = quandle::EnumerateOptions { max_n, threads: None };
    let quandles = quandle::enumerate_quandles_with(n, &opts)?;
    let table = render::quandle_list(&format!("{} quandles of order {n}", quandles.len()), &quandles);
    Ok((to_value(&EnumeratePayload { n, count: quandles.len(), quandles }), Some(table)))
}

pub(crate) fn topo_enumerate(spec: &str, max_n: usize) -> Output {
    let t = parse_topology_spec(spec)?;
    let found = topology::enumerate_top_quandles_with(&t, max_n, None)?;
    let quandles: Vec<FiniteQuandle> = found.into_iter().map(|tq| tq.quandle().clone()).collect();
    let title = format!("{} topological quandle classes on {}", quandles.len(), render::opens(&t));
    let table = render::quandle_list(&title, &quandles);
    Ok((to_value(&TopoEnumeratePayload { topology: t, count: quandles.len(), quandles }), Some(table)))
}

pub(crate) fn topo_check(tspec: &str, qspec: &str) -> Output {
    let t = parse_topology_spec(tspec)?;
    let q = parse_quandle_spec(qspec)?;
    let continuous = topology::is_continuous_op(&q, &t)?;
    let check = topology::is_topological_quandle(&q, &t)?;
    let table = match &check {
        TopCheck::Passes => "topological quandle".to_string(),
        TopCheck::Fails(f) => format!("not topological: {f:?}"),
    };
    Ok((to_value(&TopoCheckPayload { topology: t, quandle: q, continuous, check }), Some(table)))
}

fn param(s: &str) -> Result<RationalParam> {
    s.parse()
}

pub(crate) fn affine_decide(t1: &str, t2: &str, circle: bool) -> Output {
    let (t1, t2) = (param(t1)?, param(t2)?);
    let d = if circle { affine::decide_iso_circle(&t1, &t2)? } else { affine::decide_iso_line(&t1, &t2)? };
    let table = match &d {
        IsoDecision::Iso => format!("isomorphic (t1 = t2 = {t1})"),
        IsoDecision::NonIso(c) => format!("not isomorphic: {:?}", c.case),
    };
    Ok((to_value(&d), Some(table)))
}

pub(crate) fn affine_diag(spec: &str) -> Output {
    let (ts, ss) = spec
        .split_once(':')
        .ok_or_else(|| Error::Malformed(format!("--diag expects \"t1,t2,..:s1,s2,..\", got {spec:?}")))?;
    let list = |s: &str| s.split(',').map(param).collect::<Result<Vec<_>>>();
    let (t, s) = (list(ts)?, list(ss)?);
    let permutation = affine::decide_iso_diag(&t, &s)?;
    let table = match &permutation {
        Some(p) => format!("conjugate by the permutation {:?}", p.images()),
        None => "not conjugate: diagonal multisets differ".to_string(),
    };
    Ok((to_value(&DiagPayload { isomorphic: permutation.is_some(), t, s, permutation }), Some(table)))
}

/// Accepts a bare certificate or the full output of `affine decide --json`.
pub(crate) fn affine_check_cert(file: &str) -> Output {
    let mut value = read_json(file)?;
    if let Some(inner) = value.get_mut("certificate") {
        value = inner.take();
    }
    let cert: NonIsoCertificate =
        serde_json::from_value(value).map_err(|e| Error::Malformed(format!("{file}: {e}")))?;
    let check = affine::check_certificate(&cert)?;
    let table = match check.margin {
        Some(m) => format!("valid: {} (margin {m:e})", check.valid),
        None => format!("valid: {}", check.valid),
    };
    Ok((to_value(&check), Some(table)))
}

pub(crate) fn poly_classify(expr: &str) -> Output {
    let p: Poly2 = expr.parse()?;
    let classification = poly::classify_distributive(&p)?;
    let interval_verdict = match classification {
        Classification::Affine { .. } | Classification::RightIndependent { .. } => Some(poly::interval_quandle_verdict(&p)?),
        _ => None,
    };
    let degree_stats = if p.is_zero() { None } else { Some(poly::degree_stats(&p)?) };
    let payload = PolyPayload { polynomial: p, degree_stats, classification, interval_verdict };
    let table = render::poly(&payload);
    Ok((to_value(&payload), Some(table)))
}

fn geom_report<Q: SampledQuandle>(q: &Q, trials: usize, tol: f64, seed: u64) -> Output {
    let report = geom::check_axioms_sampled(q, trials, tol, seed);
    let table = render::axiom_report(&report);
    Ok((to_value(&report), Some(table)))
}

pub(crate) fn geom_sphere(dim: usize, trials: usize, tol: f64, seed: u64) -> Output {
    geom_report(&geom::SphereQuandle::new(dim)?, trials, tol, seed)
}

pub(crate) fn geom_rotation(psi: f64, trials: usize, tol: f64, seed: u64) -> Output {
    geom_report(&geom::RotationQuandle::new(psi)?, trials, tol, seed)
}

pub(crate) fn geom_grassmann(rank: usize, dim: usize, trials: usize, tol: f64, seed: u64) -> Output {
    geom_report(&geom::GrassmannQuandle::new(rank, dim)?, trials, tol, seed)
}

pub(crate) fn geom_trivial(dim: usize, trials: usize, tol: f64, seed: u64) -> Output {
    geom_report(&geom::TrivialSphere::new(dim)?, trials, tol, seed)
}

pub(crate) fn geom_corrupted(dim: usize, factor: f64, trials: usize, tol: f64, seed: u64) -> Output {
    geom_report(&geom::CorruptedSphere::new(dim, factor)?, trials, tol, seed)
}

/// `alexander:N:T` as `(N, T)`.
fn alexander_params(spec: &str) -> Option<(u64, u64)> {
    let rest = spec.strip_prefix("alexander:")?;
    let (n, t) = rest.split_once(':')?;
    Some((n.parse().ok()?, t.parse().ok()?))
}

pub(crate) fn color_count(braid: &str, qspec: &str, method: ColorMethod) -> Output {
    let w: BraidWord = braid.parse()?;
    let alex = alexander_params(qspec);
    let linear = match (method, alex) {
        (ColorMethod::Linear, None) => {
            return Err(Error::InvalidArgument("the linear method needs an alexander:N:T quandle".into()))
        }
        (ColorMethod::Linear, Some(_)) => true,
        (ColorMethod::Brute, _) => false,
        (ColorMethod::Auto, a) => a.is_some(),
    };
    let payload = if linear {
        let (n, t) = alex.expect("checked above");
        let a = coloring::alexander_coloring_count(n, t, &w)?;
        ColorPayload {
            method: "alexander_linear".into(),
            result: ColoringCount { quandle: qspec.to_string(), braid: w, count: a.count },
            alexander: Some(a),
        }
    } else {
        let q = parse_quandle_spec(qspec)?;
        let mut c = coloring::count_colorings(&q, &w)?;
        c.quandle = qspec.to_string();
        ColorPayload { method: "brute_force".into(), result: c, alexander: None }
    };
    let table = format!("{} colorings of the closure of {} by {}", payload.result.count, payload.result.braid, qspec);
    Ok((to_value(&payload), Some(table)))
}
