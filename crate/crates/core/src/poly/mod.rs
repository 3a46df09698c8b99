//! Bivariate rational polynomials and the self-distributivity equation
//! `P(P(x,y),z) = P(P(x,z),P(y,z))`.

mod distributive;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distributive::{
    classify_distributive, degree_stats, interval_quandle_verdict, is_distributive, is_distributive_with_limit,
    Classification, DegreeStats, Distributivity, IntervalVerdict, SubstDegree, DEFAULT_DEGREE_LIMIT,
};

/// Sparse polynomial in `x` and `y`: `(deg_x, deg_y) ↦ coefficient`, with
/// zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn x() -> Self {
        Poly2::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly2::monomial(BigRational::one(), 0, 1)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Poly2::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, u32, u32)>) -> Self {
        let mut p = Poly2::zero();
        for (c, i, j) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    /// `a·x + b·y`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Poly2::from_terms([(a, 1, 0), (b, 0, 1)])
    }

    fn add_term(&mut self, c: BigRational, i: u32, j: u32) {
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `((deg_x, deg_y), coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn depends_on_y(&self) -> bool {
        self.terms.keys().any(|&(_, j)| j > 0)
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * pow(x, i) * pow(y, j))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Coefficients of `P(w, w)`, lowest degree first, trailing zeros trimmed.
    pub fn diagonal(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let d = (i + j) as usize;
            if out.len() <= d {
                out.resize(d + 1, BigRational::zero());
            }
            out[d] += c;
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
}

fn pow(b: &BigRational, e: u32) -> BigRational {
    num_traits::pow(b.clone(), e as usize)
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (k, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let (i, j) = *key;
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) });
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl From<Poly2> for String {
    fn from(p: Poly2) -> Self {
        p.to_string()
    }
}

impl TryFrom<String> for Poly2 {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Sum of `c*x^i*y^j` terms. Coefficients may be integers, decimals or
/// fractions, optionally parenthesized: `(1/2)*x + 1/2*y`, `x^4*y^5 + 2*x^3 - x`.
impl FromStr for Poly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Malformed("empty polynomial".into()));
        }
        let mut p = Poly2::zero();
        let mut rest = src.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::Malformed(format!("expected '+' or '-' at {rest:?}"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let (c, i, j) = parse_term(term)?;
            p.add_term(if negative { -c } else { c }, i, j);
            rest = tail;
        }
        Ok(p)
    }
}

fn parse_term(term: &str) -> Result<(BigRational, u32, u32)> {
    let bad = |why: &str| Error::Malformed(format!("{why} in term {term:?}"));
    if term.is_empty() {
        return Err(bad("empty term"));
    }
    let mut c = BigRational::one();
    let (mut i, mut j) = (0u32, 0u32);
    for factor in term.split('*') {
        let factor = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')).unwrap_or(factor);
        if factor.is_empty() {
            return Err(bad("empty factor"));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, Some(e.parse::<u32>().map_err(|_| bad("bad exponent"))?)),
            None => (factor, None),
        };
        match base {
            "x" => i = i.checked_add(exp.unwrap_or(1)).ok_or_else(|| bad("exponent overflow"))?,
            "y" => j = j.checked_add(exp.unwrap_or(1)).ok_or_else(|| bad("exponent overflow"))?,
            num => {
                let v: crate::affine::RationalParam = num.parse().map_err(|_| bad("bad coefficient"))?;
                c *= pow(v.value(), exp.unwrap_or(1));
            }
        }
    }
    Ok((c, i, j))
}

/// Sparse trivariate polynomial used for exact compositions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Poly3 {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl Poly3 {
    pub(crate) fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Poly3 { terms: BTreeMap::from([(e, BigRational::one())]) }
    }

    fn constant(c: BigRational) -> Self {
        let mut p = Poly3::default();
        if !c.is_zero() {
            p.terms.insert([0; 3], c);
        }
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn sub(&self, other: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, -c.clone());
        }
        out
    }

    fn accumulate(&mut self, e: [u32; 3], c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, other: &Poly3) -> Poly3 {
        let mut out = Poly3::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.accumulate([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }

    fn scaled_add(&mut self, other: &Poly3, c: &BigRational) {
        for (e, v) in &other.terms {
            self.accumulate(*e, v * c);
        }
    }

    /// `P(a, b)` where `P` is bivariate.
    pub(crate) fn compose(p: &Poly2, a: &Poly3, b: &Poly3) -> Poly3 {
        let max_i = p.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_j = p.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let powers = |base: &Poly3, n: usize| {
            let mut v = vec![Poly3::constant(BigRational::one())];
            for k in 0..n {
                let next = v[k].mul(base);
                v.push(next);
            }
            v
        };
        let (pa, pb) = (powers(a, max_i), powers(b, max_j));
        let mut out = Poly3::default();
        for (&(i, j), c) in &p.terms {
            out.scaled_add(&pa[i as usize].mul(&pb[j as usize]), c);
        }
        out
    }

    /// Degree in variable `k`, `None` for the zero polynomial.
    pub(crate) fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[k]).max()
    }

    pub(crate) fn eval(&self, v: &[BigRational; 3]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| c * pow(&v[0], e[0]) * pow(&v[1], e[1]) * pow(&v[2], e[2]))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["x^4*y^5 + 2*x^3 - x", "3*x - 2*y", "1/2*x + 1/2*y", "x^2", "-x*y + 7", "0"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("(1/2)*x + (1/2)*y"), p("0.5*x+0.5*y"));
        assert_eq!(p("x*x*y"), p("x^2*y"));
        assert_eq!(p("x - x"), Poly2::zero());
        assert_eq!(p("2^3*x"), p("8*x"));
        for bad in ["", "x +", "3**x", "z", "x^-1", "x^a", "2 x"] {
            assert!(bad.parse::<Poly2>().is_err(), "{bad}");
        }
    }

    #[test]
    fn eval_and_diagonal() {
        let q = p("x^4*y^5 + 2*x^3 - x");
        assert_eq!(q.eval(&rat(1, 1), &rat(2, 1)), rat(33, 1));
        let d = q.diagonal();
        assert_eq!(d.len(), 10);
        assert_eq!(d[9], rat(1, 1));
        assert!(p("x - y").diagonal().is_empty());
    }

    #[test]
    fn composition_matches_evaluation() {
        let q = p("x^2*y - 3*x + 1/2*y^2");
        let (x, y, z) = (Poly3::var(0), Poly3::var(1), Poly3::var(2));
        let inner = Poly3::compose(&q, &x, &y);
        let outer = Poly3::compose(&q, &inner, &z);
        let pt = [rat(2, 3), rat(-1, 1), rat(5, 2)];
        let direct = q.eval(&q.eval(&pt[0], &pt[1]), &pt[2]);
        assert_eq!(outer.eval(&pt), direct);
    }

    #[test]
    fn serde_as_string() {
        let q = p("3*x - 2*y");
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "\"3*x - 2*y\"");
        assert_eq!(serde_json::from_str::<Poly2>(&s).unwrap(), q);
    }
}
