use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rat, Poly2, Poly3};
use crate::affine::RationalParam;
use crate::error::{Error, Result};

/// Largest input total degree expanded exactly by default.
pub const DEFAULT_DEGREE_LIMIT: u32 = 12;

const WITNESS_SEED: u64 = 0x00d1_57b1;

/// Degree of `P(w, w)`, or `Vanishes` when the substitution cancels to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstDegree {
    Degree(u32),
    Vanishes,
}

/// `f_x` and `f_y` are the highest pure powers of `x` and `y` (monomials
/// without the other variable, 0 if there are none); `max_deg_x` and
/// `max_deg_y` range over all monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub f_x: u32,
    pub f_y: u32,
    pub f_xy: SubstDegree,
    pub max_deg_x: u32,
    pub max_deg_y: u32,
}

pub fn degree_stats(p: &Poly2) -> Result<DegreeStats> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("degree statistics of the zero polynomial".into()));
    }
    let keys = || p.terms().map(|(k, _)| *k);
    let diag = p.diagonal();
    Ok(DegreeStats {
        f_x: keys().filter(|k| k.1 == 0).map(|k| k.0).max().unwrap_or(0),
        f_y: keys().filter(|k| k.0 == 0).map(|k| k.1).max().unwrap_or(0),
        f_xy: if diag.is_empty() { SubstDegree::Vanishes } else { SubstDegree::Degree(diag.len() as u32 - 1) },
        max_deg_x: keys().map(|k| k.0).max().unwrap_or(0),
        max_deg_y: keys().map(|k| k.1).max().unwrap_or(0),
    })
}

/// A point where `P(P(x,y),z)` and `P(P(x,z),P(y,z))` differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: RationalParam,
    pub y: RationalParam,
    pub z: RationalParam,
    pub left: RationalParam,
    pub right: RationalParam,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Distributivity {
    Distributive,
    NotDistributive { witness: Witness },
}

impl Distributivity {
    pub fn holds(&self) -> bool {
        matches!(self, Distributivity::Distributive)
    }
}

pub fn is_distributive(p: &Poly2) -> Result<Distributivity> {
    is_distributive_with_limit(p, DEFAULT_DEGREE_LIMIT)
}

/// Exact test by expanding both sides; `limit` bounds the input total degree.
pub fn is_distributive_with_limit(p: &Poly2, limit: u32) -> Result<Distributivity> {
    let deg = p.total_degree().unwrap_or(0);
    if deg > limit {
        return Err(Error::guard("polynomial total degree", deg, limit));
    }
    let (x, y, z) = (Poly3::var(0), Poly3::var(1), Poly3::var(2));
    let left = Poly3::compose(p, &Poly3::compose(p, &x, &y), &z);
    let right = Poly3::compose(p, &Poly3::compose(p, &x, &z), &Poly3::compose(p, &y, &z));
    let diff = left.sub(&right);
    if diff.is_zero() {
        return Ok(Distributivity::Distributive);
    }
    Ok(Distributivity::NotDistributive { witness: find_witness(p, &diff) })
}

fn sides(p: &Poly2, x: &BigRational, y: &BigRational, z: &BigRational) -> (BigRational, BigRational) {
    (p.eval(&p.eval(x, y), z), p.eval(&p.eval(x, z), &p.eval(y, z)))
}

fn witness_at(p: &Poly2, v: [BigRational; 3]) -> Option<Witness> {
    let (l, r) = sides(p, &v[0], &v[1], &v[2]);
    let [x, y, z] = v;
    (l != r).then(|| Witness { x: x.into(), y: y.into(), z: z.into(), left: l.into(), right: r.into() })
}

/// Small grid first, then seeded random rationals, then an integer box
/// large enough that a nonzero difference cannot vanish on all of it.
fn find_witness(p: &Poly2, diff: &Poly3) -> Witness {
    let grid: Vec<BigRational> = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-2, 1), (-1, 2), (3, 1), (1, 3), (-3, 1), (-1, 3)]
        .iter()
        .map(|&(n, d)| rat(n, d))
        .collect();
    for x in &grid {
        for y in &grid {
            for z in &grid {
                if let Some(w) = witness_at(p, [x.clone(), y.clone(), z.clone()]) {
                    return w;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    for _ in 0..2000 {
        let mut r = || rat(rng.random_range(-9..=9), rng.random_range(1..=9));
        if let Some(w) = witness_at(p, [r(), r(), r()]) {
            return w;
        }
    }
    let bound = |k| diff.degree_in(k).unwrap_or(0) as i64;
    for a in 0..=bound(0) {
        for b in 0..=bound(1) {
            for c in 0..=bound(2) {
                let v = [rat(a, 1), rat(b, 1), rat(c, 1)];
                if !diff.eval(&v).is_zero() {
                    return witness_at(p, v).expect("difference polynomial is nonzero here");
                }
            }
        }
    }
    unreachable!("a nonzero polynomial cannot vanish on a box exceeding its degrees")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    /// `P = a·x + (1−a)·y` with genuine `y`-dependence.
    Affine { a: RationalParam },
    /// `P` does not involve `y`.
    RightIndependent { p: Poly2 },
    NotDistributive { witness: Witness },
    /// Distributive but of neither expected form.
    NeedsReview { p: Poly2, reason: String },
}

pub fn classify_distributive(p: &Poly2) -> Result<Classification> {
    if let Distributivity::NotDistributive { witness } = is_distributive(p)? {
        return Ok(Classification::NotDistributive { witness });
    }
    if !p.depends_on_y() {
        return Ok(Classification::RightIndependent { p: p.clone() });
    }
    let (a, b) = (p.coeff(1, 0), p.coeff(0, 1));
    let linear = p.terms().all(|(k, _)| *k == (1, 0) || *k == (0, 1));
    if linear && (&a + &b).is_one() {
        return Ok(Classification::Affine { a: a.into() });
    }
    let reason = if p.diagonal().is_empty() {
        "distributive with y-dependence but P(w,w) vanishes".to_string()
    } else {
        "distributive with y-dependence but not of the form a*x + (1-a)*y".to_string()
    };
    Ok(Classification::NeedsReview { p: p.clone(), reason })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IntervalVerdict {
    /// `P(x, y) = x`.
    IsTrivialOp,
    ViolatesIdempotency { x: RationalParam, value: RationalParam },
    /// `0 ∗ y = 0` forces `a = 1`.
    ViolatesBoundary { a: RationalParam },
}

/// Whether `P` can be a quandle operation on `[0, 1]`.
pub fn interval_quandle_verdict(p: &Poly2) -> Result<IntervalVerdict> {
    match classify_distributive(p)? {
        Classification::Affine { a } if a.is_one() => Ok(IntervalVerdict::IsTrivialOp),
        Classification::Affine { a } => Ok(IntervalVerdict::ViolatesBoundary { a }),
        Classification::RightIndependent { p } => {
            if p == Poly2::x() {
                return Ok(IntervalVerdict::IsTrivialOp);
            }
            let zero = BigRational::zero();
            let x = farey_points()
                .find(|x| p.eval(x, &zero) != *x)
                .expect("a polynomial other than x differs from x on the Farey points");
            Ok(IntervalVerdict::ViolatesIdempotency { value: p.eval(&x, &zero).into(), x: x.into() })
        }
        Classification::NotDistributive { .. } => {
            Err(Error::InvalidArgument(format!("{p} is not self-distributive")))
        }
        Classification::NeedsReview { reason, .. } => Err(Error::InvalidArgument(reason)),
    }
}

/// 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...
fn farey_points() -> impl Iterator<Item = BigRational> {
    [rat(0, 1), rat(1, 1)].into_iter().chain(
        (2..).flat_map(|d| (1..d).filter(move |&n| num_integer::gcd(n, d) == 1).map(move |n| rat(n, d))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn degree_stats_examples() {
        let s = degree_stats(&p("2*x^3 - x + x^4*y^5")).unwrap();
        assert_eq!((s.f_x, s.f_y, s.f_xy), (3, 0, SubstDegree::Degree(9)));
        assert_eq!((s.max_deg_x, s.max_deg_y), (4, 5));
        let s = degree_stats(&p("x")).unwrap();
        assert_eq!((s.f_x, s.f_y, s.f_xy), (1, 0, SubstDegree::Degree(1)));
        assert_eq!(degree_stats(&p("x - y")).unwrap().f_xy, SubstDegree::Vanishes);
        assert_eq!(degree_stats(&p("3")).unwrap().f_xy, SubstDegree::Degree(0));
        assert!(degree_stats(&Poly2::zero()).is_err());
    }

    #[test]
    fn distributivity_examples() {
        assert!(is_distributive(&p("3*x - 2*y")).unwrap().holds());
        assert!(is_distributive(&p("x^2")).unwrap().holds());
        match is_distributive(&p("x + y")).unwrap() {
            Distributivity::NotDistributive { witness } => {
                assert_eq!([witness.x.to_string(), witness.y.to_string(), witness.z.to_string()], ["0", "0", "1"]);
                assert_eq!((witness.left.to_string(), witness.right.to_string()), ("1".into(), "2".into()));
            }
            d => panic!("{d:?}"),
        }
        let big = p("x^13");
        assert!(matches!(is_distributive(&big), Err(Error::GuardExceeded { .. })));
        assert!(is_distributive_with_limit(&big, 13).unwrap().holds());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_distributive(&p("3*x - 2*y")).unwrap(), Classification::Affine { a: "3".parse().unwrap() });
        assert_eq!(classify_distributive(&p("x^2")).unwrap(), Classification::RightIndependent { p: p("x^2") });
        assert!(matches!(classify_distributive(&p("x + y")).unwrap(), Classification::NotDistributive { .. }));
        assert_eq!(classify_distributive(&p("y")).unwrap(), Classification::Affine { a: "0".parse().unwrap() });
        assert_eq!(classify_distributive(&Poly2::zero()).unwrap(), Classification::RightIndependent { p: Poly2::zero() });
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval_quandle_verdict(&p("x")).unwrap(), IntervalVerdict::IsTrivialOp);
        assert_eq!(
            interval_quandle_verdict(&p("1/2*x + 1/2*y")).unwrap(),
            IntervalVerdict::ViolatesBoundary { a: "1/2".parse().unwrap() }
        );
        assert_eq!(
            interval_quandle_verdict(&p("x^2")).unwrap(),
            IntervalVerdict::ViolatesIdempotency { x: "1/2".parse().unwrap(), value: "1/4".parse().unwrap() }
        );
        assert!(interval_quandle_verdict(&p("x + y")).is_err());
    }

    /// y-degrees of P(P(x,x),y) and P(P(x,y),P(x,y)); the first is max_deg_y
    /// and the second max_deg_y·f_xy whenever f_xy ≥ 1.
    fn y_degrees(q: &Poly2) -> (u32, u32) {
        let (x, y) = (Poly3::var(0), Poly3::var(1));
        let lhs = Poly3::compose(q, &Poly3::compose(q, &x, &x), &y);
        let pxy = Poly3::compose(q, &x, &y);
        let rhs = Poly3::compose(q, &pxy, &pxy);
        (lhs.degree_in(1).unwrap_or(0), rhs.degree_in(1).unwrap_or(0))
    }

    #[test]
    fn degree_relation_on_fixtures() {
        for s in ["3*x - 2*y", "1/2*x + 1/2*y", "-x + 2*y", "x^2*y + x", "x*y^2 - y + 3*x^2", "x^3 + y^2"] {
            let q = p(s);
            let st = degree_stats(&q).unwrap();
            let SubstDegree::Degree(fxy) = st.f_xy else { panic!("{s}") };
            assert!(fxy >= 1, "{s}");
            let (l, r) = y_degrees(&q);
            assert_eq!(l, st.max_deg_y, "{s}");
            assert_eq!(r, st.max_deg_y * fxy, "{s}");
            let distributive = is_distributive(&q).unwrap().holds();
            if distributive {
                assert_eq!(st.max_deg_y, st.max_deg_y * fxy, "{s}");
            }
        }
    }
}
