use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::RationalParam;
use crate::error::{Error, Result};

/// Relative margin a logarithmic sign claim must clear.
pub const LOG_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Line,
    Circle,
}

/// A parameter rewrite applied before the case argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    /// Replace each `t` by `t²`; an isomorphism also intertwines `R_y ∘ R_y`,
    /// which is the Alexander operation with parameter `t²`.
    SquareTranslations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateCase {
    SignMismatch,
    TrivialVsNontrivial,
    ScaleAcrossOne,
    RationalBetweenSquared { m: i64, n: i64 },
    RationalBetween { m: i64, n: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonIsoCertificate {
    pub carrier: Carrier,
    pub t1: RationalParam,
    pub t2: RationalParam,
    #[serde(default)]
    pub reductions: Vec<Reduction>,
    pub case: CertificateCase,
}

impl NonIsoCertificate {
    /// The same certificate with the roles of `t1` and `t2` exchanged.
    pub fn swapped(&self) -> Self {
        NonIsoCertificate { t1: self.t2.clone(), t2: self.t1.clone(), ..self.clone() }
    }
}

/// Validation result. `margin` is present for the logarithmic cases and is
/// `min(|a|, |b|) / (|m| + n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub margin: Option<f64>,
}

impl CertificateCheck {
    fn exact(valid: bool) -> Self {
        CertificateCheck { valid, margin: None }
    }
}

pub fn validate_certificate(cert: &NonIsoCertificate) -> Result<bool> {
    check_certificate(cert).map(|c| c.valid)
}

/// Re-checks a certificate using only its own contents.
pub fn check_certificate(cert: &NonIsoCertificate) -> Result<CertificateCheck> {
    let (mut p1, mut p2) = (cert.t1.value().clone(), cert.t2.value().clone());
    let one = BigRational::one();
    let in_domain = |p: &BigRational| match cert.carrier {
        Carrier::Line => !p.is_zero(),
        Carrier::Circle => p.is_positive() && p <= &one,
    };
    if !in_domain(&p1) || !in_domain(&p2) {
        return Ok(CertificateCheck::exact(false));
    }
    for r in &cert.reductions {
        match (r, cert.carrier) {
            (Reduction::SquareTranslations, Carrier::Line) => (p1, p2) = (&p1 * &p1, &p2 * &p2),
            (Reduction::SquareTranslations, Carrier::Circle) => return Ok(CertificateCheck::exact(false)),
        }
    }
    if p1 == p2 {
        return Ok(CertificateCheck::exact(false));
    }
    let valid = match cert.case {
        CertificateCase::SignMismatch => p1.is_positive() != p2.is_positive(),
        CertificateCase::TrivialVsNontrivial => p1.is_one() != p2.is_one(),
        CertificateCase::ScaleAcrossOne => {
            p1.is_positive() && p2.is_positive() && ((&p1 - &one) * (&p2 - &one)).is_negative()
        }
        CertificateCase::RationalBetween { m, n } => {
            let inside = |p: &BigRational| p.is_positive() && p < &one;
            if !(inside(&p1) && inside(&p2)) || n <= 0 {
                return Ok(CertificateCheck::exact(false));
            }
            let f = |p: &BigRational| m as f64 * ln_rational(p) - n as f64 * ln_rational(&(&one - p));
            return log_claim(f(&p1), f(&p2), m, n);
        }
        CertificateCase::RationalBetweenSquared { m, n } => {
            if !(p1 > one && p2 > one) || n <= 0 {
                return Ok(CertificateCheck::exact(false));
            }
            let f = |p: &BigRational| m as f64 * ln_rational(p) - 2.0 * n as f64 * ln_rational(&(p - &one));
            return log_claim(f(&p1), f(&p2), m, n);
        }
    };
    Ok(CertificateCheck::exact(valid))
}

fn log_claim(a: f64, b: f64, m: i64, n: i64) -> Result<CertificateCheck> {
    let scale = m.unsigned_abs() as f64 + n as f64;
    let threshold = LOG_MARGIN * scale;
    if !(a.is_finite() && b.is_finite()) || a.abs() <= threshold || b.abs() <= threshold {
        return Err(Error::IndeterminatePrecision(format!(
            "log values {a:e}, {b:e} within margin {threshold:e}"
        )));
    }
    Ok(CertificateCheck { valid: (a > 0.0) != (b > 0.0), margin: Some(a.abs().min(b.abs()) / scale) })
}

/// `ln(1−t)/ln t` for `t` in (0, 1).
pub(super) fn unit_ratio(t: &BigRational) -> f64 {
    ln_rational(&(BigRational::one() - t)) / ln_rational(t)
}

/// `ln((t−1)²)/ln t` for `t > 1`.
pub(super) fn squared_ratio(t: &BigRational) -> f64 {
    2.0 * ln_rational(&(t - BigRational::one())) / ln_rational(t)
}

/// Natural log of a positive rational, accurate near 1 and for huge
/// numerators or denominators.
pub(crate) fn ln_rational(x: &BigRational) -> f64 {
    debug_assert!(x.is_positive());
    let d = x - BigRational::one();
    if d.abs() < BigRational::new(1.into(), 2.into()) {
        return d.to_f64().map_or(f64::NAN, f64::ln_1p);
    }
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    (x >> shift).to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(t1: &str, t2: &str, case: CertificateCase) -> NonIsoCertificate {
        NonIsoCertificate {
            carrier: Carrier::Line,
            t1: t1.parse().unwrap(),
            t2: t2.parse().unwrap(),
            reductions: vec![],
            case,
        }
    }

    #[test]
    fn spec_examples() {
        let good = cert("1/2", "1/4", CertificateCase::RationalBetween { m: 1, n: 2 });
        let c = check_certificate(&good).unwrap();
        assert!(c.valid);
        // a = ln 2 ≈ 0.693, b ≈ -0.811
        assert!((c.margin.unwrap() - 2f64.ln() / 3.0).abs() < 1e-12);
        let tampered = cert("1/2", "1/4", CertificateCase::RationalBetween { m: 5, n: 1 });
        assert!(!validate_certificate(&tampered).unwrap());
        assert!(!validate_certificate(&cert("2", "3", CertificateCase::SignMismatch)).unwrap());
        assert!(validate_certificate(&cert("2", "-3", CertificateCase::SignMismatch)).unwrap());
    }

    #[test]
    fn direct_log_values() {
        let h = BigRational::new(1.into(), 2.into());
        let qtr = BigRational::new(1.into(), 4.into());
        let one = BigRational::one();
        let a = ln_rational(&h) - 2.0 * ln_rational(&(&one - &h));
        let b = ln_rational(&qtr) - 2.0 * ln_rational(&(&one - &qtr));
        assert!((a - 0.5f64.ln() + 2.0 * 0.5f64.ln()).abs() < 1e-15);
        assert!((b - (0.25f64.ln() - 2.0 * 0.75f64.ln())).abs() < 1e-15);
        assert!(a > 0.6 && b < -0.8);
    }

    #[test]
    fn structural_rejections() {
        assert!(!validate_certificate(&cert("1/2", "1/2", CertificateCase::SignMismatch)).unwrap());
        assert!(!validate_certificate(&cert("1/2", "1/4", CertificateCase::RationalBetween { m: 0, n: 0 })).unwrap());
        assert!(!validate_certificate(&cert("2", "1/4", CertificateCase::RationalBetween { m: 1, n: 2 })).unwrap());
        assert!(!validate_certificate(&cert("0", "1", CertificateCase::TrivialVsNontrivial)).unwrap());
        let mut circ = cert("3/2", "1", CertificateCase::TrivialVsNontrivial);
        circ.carrier = Carrier::Circle;
        assert!(!validate_certificate(&circ).unwrap());
    }

    #[test]
    fn near_degenerate_claim_is_indeterminate() {
        // m/n = 1 equals the log-ratio at t = 1/2 exactly, so a = 0.
        let c = cert("1/2", "1/4", CertificateCase::RationalBetween { m: 1, n: 1 });
        assert!(matches!(check_certificate(&c), Err(Error::IndeterminatePrecision(_))));
    }

    #[test]
    fn json_shape() {
        let c = cert("3", "2", CertificateCase::RationalBetweenSquared { m: 1, n: 1 });
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["case"]["kind"], "rational_between_squared");
        assert_eq!(v["t1"], "3");
        let back: NonIsoCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn ln_handles_extremes() {
        let near_one = BigRational::new(BigInt::from(10).pow(30) + 1, BigInt::from(10).pow(30));
        assert!((ln_rational(&near_one) - 1e-30).abs() < 1e-44);
        let huge = BigRational::from_integer(BigInt::from(2).pow(5000));
        assert!((ln_rational(&huge) / (5000.0 * std::f64::consts::LN_2) - 1.0).abs() < 1e-14);
    }
}
