//! Alexander quandle structures `x ∗ y = t·x + (1−t)·y` on the real line,
//! the circle, and diagonal `ℝⁿ`.
//!
//! Two line structures are isomorphic exactly when their parameters agree.
//! Every non-isomorphism verdict carries a [`NonIsoCertificate`] that
//! [`validate_certificate`] re-checks from scratch. For parameters on the
//! same side of 1 the classical proof conjugates an isomorphism into an
//! increasing map φ with φ(1) = 1 and φ(t₁x) = t₂φ(x), then approaches the
//! log-ratio `ln(1−t)/ln t` (or `ln((t−1)²)/ln t`) by a sequence of
//! rationals. A single rational strictly between the two ratios already
//! forces `t^m/(1−t)^n` to land on opposite sides of 1 at t₁ and t₂, which
//! φ cannot do, so the certificate records just that one `(m, n)`.

mod certificate;
mod simplest;

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::Perm;

pub use certificate::{
    check_certificate, validate_certificate, Carrier, CertificateCase, CertificateCheck, NonIsoCertificate,
    Reduction,
};
pub use simplest::rational_between;

/// An exact rational parameter. Serialized as a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct RationalParam(BigRational);

impl RationalParam {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(RationalParam(BigRational::new(numerator.into(), denominator.into())))
    }

    pub fn integer(v: i64) -> Self {
        RationalParam(BigRational::from_integer(v.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for RationalParam {
    fn from(v: BigRational) -> Self {
        RationalParam(v)
    }
}

impl From<RationalParam> for BigRational {
    fn from(v: RationalParam) -> Self {
        v.0
    }
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<RationalParam> for String {
    fn from(v: RationalParam) -> Self {
        v.to_string()
    }
}

impl TryFrom<String> for RationalParam {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Accepts `a`, `a/b` and terminating decimals such as `-0.25`.
impl FromStr for RationalParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
        let int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        if let Some((n, d)) = s.split_once('/') {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {s:?}")));
            }
            return Ok(RationalParam(BigRational::new(int(n)?, d)));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let whole = match whole.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                w => int(w)?,
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let magnitude = BigRational::new(whole * &scale + int(frac)?, scale);
            return Ok(RationalParam(if negative { -magnitude } else { magnitude }));
        }
        Ok(RationalParam(BigRational::from_integer(int(s)?)))
    }
}

/// Outcome of an isomorphism decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum IsoDecision {
    Iso,
    NonIso(NonIsoCertificate),
}

impl IsoDecision {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoDecision::Iso)
    }

    pub fn certificate(&self) -> Option<&NonIsoCertificate> {
        match self {
            IsoDecision::Iso => None,
            IsoDecision::NonIso(c) => Some(c),
        }
    }
}

/// Exact `t·x + (1−t)·y`.
pub fn affine_op(t: &RationalParam, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("Alexander parameter must be nonzero".into()));
    }
    let t = t.value();
    Ok(t * x + (BigRational::one() - t) * y)
}

/// `t·θ₁ + (1−t)·θ₂` reduced into `[0, 2π)`. Angles must already lie in
/// `[0, 2π)`.
pub fn circle_op(t: &RationalParam, theta1: f64, theta2: f64) -> Result<f64> {
    check_circle_param(t)?;
    for th in [theta1, theta2] {
        if !(th.is_finite() && (0.0..TAU).contains(&th)) {
            return Err(Error::InvalidArgument(format!("angle {th} outside [0, 2π)")));
        }
    }
    let t = t.to_f64();
    let v = (t * theta1 + (1.0 - t) * theta2).rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    Ok(if v >= TAU { 0.0 } else { v })
}

fn check_circle_param(t: &RationalParam) -> Result<()> {
    if t.value().is_positive() && t.value() <= &BigRational::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("circle parameter {t} outside (0, 1]")))
    }
}

/// Decides whether the line structures with parameters `t1` and `t2` are
/// isomorphic.
pub fn decide_iso_line(t1: &RationalParam, t2: &RationalParam) -> Result<IsoDecision> {
    if t1.is_zero() || t2.is_zero() {
        return Err(Error::InvalidArgument("Alexander parameter must be nonzero".into()));
    }
    if t1 == t2 {
        return Ok(IsoDecision::Iso);
    }
    let mut reductions = Vec::new();
    let (mut p1, mut p2) = (t1.value().clone(), t2.value().clone());
    if p1.is_negative() && p2.is_negative() {
        reductions.push(Reduction::SquareTranslations);
        (p1, p2) = (&p1 * &p1, &p2 * &p2);
    }
    let case = positive_case(&p1, &p2)?;
    certified(NonIsoCertificate {
        carrier: Carrier::Line,
        t1: t1.clone(),
        t2: t2.clone(),
        reductions,
        case,
    })
}

/// Decides isomorphism of circle structures; parameters must be in `(0, 1]`.
pub fn decide_iso_circle(t1: &RationalParam, t2: &RationalParam) -> Result<IsoDecision> {
    check_circle_param(t1)?;
    check_circle_param(t2)?;
    if t1 == t2 {
        return Ok(IsoDecision::Iso);
    }
    let case = positive_case(t1.value(), t2.value())?;
    certified(NonIsoCertificate {
        carrier: Carrier::Circle,
        t1: t1.clone(),
        t2: t2.clone(),
        reductions: Vec::new(),
        case,
    })
}

fn certified(cert: NonIsoCertificate) -> Result<IsoDecision> {
    if check_certificate(&cert)?.valid {
        Ok(IsoDecision::NonIso(cert))
    } else {
        Err(Error::IndeterminatePrecision(format!("could not certify {} vs {}", cert.t1, cert.t2)))
    }
}

/// Case selection for distinct nonzero parameters, at least one positive.
fn positive_case(p1: &BigRational, p2: &BigRational) -> Result<CertificateCase> {
    let one = BigRational::one();
    if p1.is_positive() != p2.is_positive() {
        return Ok(CertificateCase::SignMismatch);
    }
    if p1.is_one() || p2.is_one() {
        return Ok(CertificateCase::TrivialVsNontrivial);
    }
    match (p1.cmp(&one), p2.cmp(&one)) {
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less) => {
            Ok(CertificateCase::ScaleAcrossOne)
        }
        (Ordering::Greater, Ordering::Greater) => {
            let (m, n) = bracket(certificate::squared_ratio(p1), certificate::squared_ratio(p2))?;
            Ok(CertificateCase::RationalBetweenSquared { m, n })
        }
        _ => {
            let (m, n) = bracket(certificate::unit_ratio(p1), certificate::unit_ratio(p2))?;
            Ok(CertificateCase::RationalBetween { m, n })
        }
    }
}

fn bracket(r1: f64, r2: f64) -> Result<(i64, i64)> {
    rational_between(r1.min(r2), r1.max(r2))
}

/// Diagonal structures on `ℝⁿ`: returns `p` with `s[i] = t[p(i)]`, so the
/// permutation matrix with ones at `(i, p(i))` conjugates `diag(t)` to
/// `diag(s)`. Coordinates already agreeing are kept fixed.
pub fn decide_iso_diag(t: &[RationalParam], s: &[RationalParam]) -> Result<Option<Perm>> {
    if t.len() != s.len() {
        return Err(Error::InvalidArgument(format!("length mismatch: {} vs {}", t.len(), s.len())));
    }
    if t.iter().chain(s).any(RationalParam::is_zero) {
        return Err(Error::InvalidArgument("diagonal entries must be nonzero".into()));
    }
    let n = t.len();
    let mut used = vec![false; n];
    let mut p = vec![usize::MAX; n];
    for i in 0..n {
        if t[i] == s[i] {
            used[i] = true;
            p[i] = i;
        }
    }
    for i in 0..n {
        if p[i] != usize::MAX {
            continue;
        }
        match (0..n).find(|&j| !used[j] && t[j] == s[i]) {
            Some(j) => {
                used[j] = true;
                p[i] = j;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Perm::from_images(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn q(s: &str) -> RationalParam {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-0.25"), RationalParam::new(-1, 4).unwrap());
        assert_eq!(q("3").to_string(), "3");
        assert_eq!(q("-.5"), RationalParam::new(-1, 2).unwrap());
        for bad in ["", "1/0", "x", "1.", "1/-", "--1"] {
            assert!(bad.parse::<RationalParam>().is_err(), "{bad}");
        }
        let json = serde_json::to_string(&q("-3/4")).unwrap();
        assert_eq!(json, "\"-3/4\"");
        assert_eq!(serde_json::from_str::<RationalParam>(&json).unwrap(), q("-3/4"));
    }

    #[test]
    fn affine_op_examples() {
        assert_eq!(affine_op(&q("1"), &r(7, 3), &r(-2, 1)).unwrap(), r(7, 3));
        assert_eq!(affine_op(&q("2"), &r(1, 1), &r(0, 1)).unwrap(), r(2, 1));
        assert!(affine_op(&q("0"), &r(1, 1), &r(0, 1)).is_err());
    }

    #[test]
    fn circle_op_examples() {
        assert_eq!(circle_op(&q("1"), 1.25, 4.0).unwrap(), 1.25);
        assert!((circle_op(&q("1/2"), 0.0, PI).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(circle_op(&q("3/2"), 0.0, 1.0).is_err());
        assert!(circle_op(&q("1/2"), 0.0, TAU).is_err());
    }

    #[test]
    fn line_examples() {
        assert_eq!(decide_iso_line(&q("1/2"), &q("1/2")).unwrap(), IsoDecision::Iso);
        let d = decide_iso_line(&q("1/2"), &q("1/4")).unwrap();
        assert_eq!(d.certificate().unwrap().case, CertificateCase::RationalBetween { m: 1, n: 2 });
        let d = decide_iso_line(&q("2"), &q("-3")).unwrap();
        assert_eq!(d.certificate().unwrap().case, CertificateCase::SignMismatch);
        let d = decide_iso_line(&q("3"), &q("2")).unwrap();
        assert_eq!(d.certificate().unwrap().case, CertificateCase::RationalBetweenSquared { m: 1, n: 1 });
        let d = decide_iso_line(&q("1"), &q("5")).unwrap();
        assert_eq!(d.certificate().unwrap().case, CertificateCase::TrivialVsNontrivial);
        let d = decide_iso_line(&q("1/3"), &q("5")).unwrap();
        assert_eq!(d.certificate().unwrap().case, CertificateCase::ScaleAcrossOne);
        assert!(decide_iso_line(&q("0"), &q("1")).is_err());
    }

    #[test]
    fn negative_pairs_reduce_by_squaring() {
        let d = decide_iso_line(&q("-1"), &q("-2")).unwrap();
        let c = d.certificate().unwrap();
        assert_eq!(c.reductions, vec![Reduction::SquareTranslations]);
        assert_eq!(c.case, CertificateCase::TrivialVsNontrivial);
        let c = decide_iso_line(&q("-1/2"), &q("-3")).unwrap().certificate().unwrap().clone();
        assert_eq!(c.case, CertificateCase::ScaleAcrossOne);
        let c = decide_iso_line(&q("-2"), &q("-3")).unwrap().certificate().unwrap().clone();
        assert!(matches!(c.case, CertificateCase::RationalBetweenSquared { .. }));
        assert!(validate_certificate(&c).unwrap());
        assert_eq!(decide_iso_line(&q("-2"), &q("-2")).unwrap(), IsoDecision::Iso);
    }

    #[test]
    fn circle_examples() {
        assert_eq!(decide_iso_circle(&q("1"), &q("1")).unwrap(), IsoDecision::Iso);
        let c = decide_iso_circle(&q("1"), &q("1/2")).unwrap();
        assert_eq!(c.certificate().unwrap().case, CertificateCase::TrivialVsNontrivial);
        let c = decide_iso_circle(&q("1/2"), &q("1/4")).unwrap();
        assert_eq!(c.certificate().unwrap().case, CertificateCase::RationalBetween { m: 1, n: 2 });
        assert!(decide_iso_circle(&q("2"), &q("1/2")).is_err());
        assert!(decide_iso_circle(&q("-1/2"), &q("1/2")).is_err());
    }

    #[test]
    fn diag_examples() {
        let swap = decide_iso_diag(&[q("2"), q("3")], &[q("3"), q("2")]).unwrap().unwrap();
        assert_eq!(swap.images(), &[1, 0]);
        assert!(decide_iso_diag(&[q("2"), q("3")], &[q("2"), q("2")]).unwrap().is_none());
        assert!(decide_iso_diag(&[q("5")], &[q("5")]).unwrap().unwrap().is_identity());
        assert!(decide_iso_diag(&[q("5")], &[q("5"), q("1")]).is_err());
        assert!(decide_iso_diag(&[q("0")], &[q("0")]).is_err());
        let t = [q("2"), q("2"), q("-1"), q("7")];
        let s = [q("7"), q("2"), q("2"), q("-1")];
        let p = decide_iso_diag(&t, &s).unwrap().unwrap();
        for i in 0..4 {
            assert_eq!(s[i], t[p.apply(i)]);
        }
    }
}
