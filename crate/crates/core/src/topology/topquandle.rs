use serde::{Deserialize, Serialize};

use super::FiniteSpace;
use crate::error::{Error, Result};
use crate::quandle::enumerate::{search_labeled, with_threads};
use crate::quandle::{FiniteQuandle, Perm};

fn same_size(q: &FiniteQuandle, t: &FiniteSpace) -> Result<()> {
    if q.n() != t.n() {
        return Err(Error::InvalidArgument(format!("quandle has {} elements, space has {} points", q.n(), t.n())));
    }
    Ok(())
}

/// Why an operation fails to make a topological quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum TopFailure {
    /// `x ≤ x'` but `x ∗ y ≰ x' ∗ y`.
    LeftArgument { x: usize, x2: usize, y: usize },
    /// `y ≤ y'` but `x ∗ y ≰ x ∗ y'`.
    RightArgument { x: usize, y: usize, y2: usize },
    /// `R_x⁻¹` is not monotone: `R_x(a) ≤ R_x(b)` but `a ≰ b`.
    InverseTranslation { x: usize, a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TopCheck {
    Passes,
    Fails(TopFailure),
}

impl TopCheck {
    pub fn passes(&self) -> bool {
        matches!(self, TopCheck::Passes)
    }
}

fn continuity_failure(q: &FiniteQuandle, t: &FiniteSpace) -> Option<TopFailure> {
    monotonicity_failure(q.n(), |x, y| q.op(x, y), t)
}

fn monotonicity_failure(n: usize, op: impl Fn(usize, usize) -> usize, t: &FiniteSpace) -> Option<TopFailure> {
    for y in 0..n {
        for x in 0..n {
            for x2 in 0..n {
                if t.leq(x, x2) && !t.leq(op(x, y), op(x2, y)) {
                    return Some(TopFailure::LeftArgument { x, x2, y });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for y2 in 0..n {
                if t.leq(y, y2) && !t.leq(op(x, y), op(x, y2)) {
                    return Some(TopFailure::RightArgument { x, y, y2 });
                }
            }
        }
    }
    None
}

/// Continuity of `∗: X × X → X` for the product topology, decided as
/// monotonicity in each argument for the specialization preorder.
pub fn is_continuous_op(q: &FiniteQuandle, t: &FiniteSpace) -> Result<bool> {
    same_size(q, t)?;
    Ok(continuity_failure(q, t).is_none())
}

/// [`is_continuous_op`] for an arbitrary operation table.
pub fn is_continuous_table(table: &[Vec<usize>], t: &FiniteSpace) -> Result<bool> {
    check_table(table, t)?;
    Ok(monotonicity_failure(t.n(), |x, y| table[x][y], t).is_none())
}

fn check_table(table: &[Vec<usize>], t: &FiniteSpace) -> Result<()> {
    let n = t.n();
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(Error::Malformed("operation table does not match the space".into()));
    }
    Ok(())
}

/// Reference check straight from the definitions: the preimage of every
/// open set must be a union of open rectangles `U × W`. Exponential in the
/// number of open sets; meant for small spaces.
pub fn is_continuous_op_by_preimages(table: &[Vec<usize>], t: &FiniteSpace) -> Result<bool> {
    check_table(table, t)?;
    let n = t.n();
    // subsets of X × X as bitsets over pairs (x, y) ↦ x·n + y
    let cells = n * n;
    if cells > 128 {
        return Err(Error::guard("pair count for preimage check", cells as u128, 128u128));
    }
    let rect = |u: u64, w: u64| -> u128 {
        let mut m = 0u128;
        for x in (0..n).filter(|&x| u >> x & 1 == 1) {
            for y in (0..n).filter(|&y| w >> y & 1 == 1) {
                m |= 1 << (x * n + y);
            }
        }
        m
    };
    let rects: Vec<u128> = t
        .open_masks()
        .iter()
        .flat_map(|&u| t.open_masks().iter().map(move |&w| (u, w)))
        .map(|(u, w)| rect(u, w))
        .collect();
    for &v in t.open_masks() {
        let mut pre = 0u128;
        for x in 0..n {
            for y in 0..n {
                if v >> table[x][y] & 1 == 1 {
                    pre |= 1 << (x * n + y);
                }
            }
        }
        let covered = rects.iter().filter(|&&r| r & !pre == 0).fold(0u128, |acc, &r| acc | r);
        if covered != pre {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Continuity of `∗` and of every `R_x` and `R_x⁻¹`. Reports the first failure.
pub fn is_topological_quandle(q: &FiniteQuandle, t: &FiniteSpace) -> Result<TopCheck> {
    same_size(q, t)?;
    if let Some(f) = continuity_failure(q, t) {
        return Ok(TopCheck::Fails(f));
    }
    // R_x continuity is the left-argument monotonicity above.
    let n = q.n();
    for x in 0..n {
        for a in 0..n {
            for b in 0..n {
                if t.leq(q.op(a, x), q.op(b, x)) && !t.leq(a, b) {
                    return Ok(TopCheck::Fails(TopFailure::InverseTranslation { x, a, b }));
                }
            }
        }
    }
    Ok(TopCheck::Passes)
}

fn homeo_search(a: &FiniteSpace, b: &FiniteSpace, img: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
    let k = img.len();
    let n = a.n();
    if k == n {
        out.push(Perm::from_images(img.clone()).expect("bijective by construction"));
        return;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        let ok = (0..k).all(|x| a.leq(x, k) == b.leq(img[x], y) && a.leq(k, x) == b.leq(y, img[x]));
        if ok {
            used[y] = true;
            img.push(y);
            homeo_search(a, b, img, used, out);
            img.pop();
            used[y] = false;
        }
    }
}

/// All homeomorphisms `a → b` (order isomorphisms of the specialization
/// preorders), sorted. Empty iff the spaces are not homeomorphic.
pub fn homeomorphisms(a: &FiniteSpace, b: &FiniteSpace) -> Vec<Perm> {
    if a.n() != b.n() || a.open_masks().len() != b.open_masks().len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    homeo_search(a, b, &mut Vec::with_capacity(a.n()), &mut vec![false; a.n()], &mut out);
    out
}

/// Reference version of [`homeomorphisms`]: every permutation that maps the
/// open family of `a` onto that of `b`.
pub fn homeomorphisms_by_opens(a: &FiniteSpace, b: &FiniteSpace) -> Vec<Perm> {
    if a.n() != b.n() {
        return Vec::new();
    }
    Perm::all(a.n())
        .filter(|p| {
            let mut mapped: Vec<u64> = a.open_masks().iter().map(|&m| FiniteSpace::map_mask(m, p.images())).collect();
            mapped.sort_unstable();
            mapped == b.open_masks()
        })
        .collect()
}

/// A quandle together with a topology that makes it a topological quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TopQuandleJson")]
pub struct TopQuandle {
    quandle: FiniteQuandle,
    topology: FiniteSpace,
}

#[derive(Deserialize)]
struct TopQuandleJson {
    quandle: FiniteQuandle,
    topology: FiniteSpace,
}

impl TryFrom<TopQuandleJson> for TopQuandle {
    type Error = Error;
    fn try_from(raw: TopQuandleJson) -> Result<Self> {
        TopQuandle::new(raw.quandle, raw.topology)
    }
}

impl TopQuandle {
    pub fn new(quandle: FiniteQuandle, topology: FiniteSpace) -> Result<Self> {
        match is_topological_quandle(&quandle, &topology)? {
            TopCheck::Passes => Ok(TopQuandle { quandle, topology }),
            TopCheck::Fails(f) => Err(Error::InvalidArgument(format!("not a topological quandle: {f:?}"))),
        }
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn topology(&self) -> &FiniteSpace {
        &self.topology
    }

    /// Always true: construction checks continuity.
    pub fn continuity_verified(&self) -> bool {
        true
    }
}

/// A permutation that is both a homeomorphism and a quandle isomorphism.
/// Exhaustive over homeomorphisms, so `None` proves non-isomorphism.
pub fn top_quandle_isomorphic(a: &TopQuandle, b: &TopQuandle) -> Option<Perm> {
    homeomorphisms(&a.topology, &b.topology)
        .into_iter()
        .find(|p| a.quandle.is_homomorphism_to(&b.quandle, p))
}

/// All topological quandle structures on `t` up to isomorphism, one per
/// class: the least table among its relabelings by homeomorphisms of `t`.
/// Refuses spaces with more than 5 points.
pub fn enumerate_top_quandles(t: &FiniteSpace) -> Result<Vec<TopQuandle>> {
    enumerate_top_quandles_with(t, 5, None)
}

pub fn enumerate_top_quandles_with(t: &FiniteSpace, max_n: usize, threads: Option<usize>) -> Result<Vec<TopQuandle>> {
    let n = t.n();
    if n > max_n {
        return Err(Error::guard("topological enumeration size", n as u128, max_n as u128));
    }
    let homeo = homeomorphisms(t, t);
    // Every R_k is a homeomorphism fixing k.
    let candidates: Vec<Vec<Perm>> = (0..n)
        .map(|k| homeo.iter().filter(|p| p.apply(k) == k).cloned().collect())
        .collect();
    // Right-argument monotonicity on the columns assigned so far.
    let monotone = |cols: &[Option<Perm>]| {
        cols.iter().enumerate().all(|(y, cy)| {
            let Some(cy) = cy else { return true };
            cols.iter().enumerate().all(|(y2, cy2)| match cy2 {
                Some(cy2) if t.leq(y, y2) => (0..n).all(|x| t.leq(cy.apply(x), cy2.apply(x))),
                _ => true,
            })
        })
    };
    let run = || {
        let mut reps: Vec<FiniteQuandle> = search_labeled(n, &candidates, &monotone)
            .into_iter()
            .filter(|q| homeo.iter().all(|h| q.relabel(h) >= *q))
            .collect();
        reps.sort();
        reps
    };
    with_threads(threads, run)
        .into_iter()
        .map(|q| TopQuandle::new(q, t.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::enumerate_quandles;

    fn tau1() -> FiniteSpace {
        FiniteSpace::new(3, &[vec![], vec![0], vec![0, 1, 2]]).unwrap()
    }

    fn tau2() -> FiniteSpace {
        FiniteSpace::new(3, &[vec![], vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn pointed_swap_is_topological_on_tau1_only() {
        let q = FiniteQuandle::pointed_swap();
        assert!(is_continuous_op(&q, &tau1()).unwrap());
        assert!(is_continuous_op_by_preimages(&q.rows(), &tau1()).unwrap());
        assert!(is_topological_quandle(&q, &tau1()).unwrap().passes());
        // R_0 swaps 1 and 2, but {1} is open in tau2 and {2} is not.
        assert!(!is_continuous_op(&q, &tau2()).unwrap());
        assert!(!is_continuous_op_by_preimages(&q.rows(), &tau2()).unwrap());
        assert_eq!(
            is_topological_quandle(&q, &tau2()).unwrap(),
            TopCheck::Fails(TopFailure::LeftArgument { x: 0, x2: 2, y: 0 })
        );
        let on_tau2 = enumerate_top_quandles(&tau2()).unwrap();
        assert_eq!(on_tau2.len(), 1);
        assert!(on_tau2[0].quandle().is_trivial());
    }

    #[test]
    fn dihedral_3_is_not_continuous_on_tau1() {
        let q = FiniteQuandle::dihedral(3);
        assert!(!is_continuous_op(&q, &tau1()).unwrap());
        assert!(!is_continuous_op_by_preimages(&q.rows(), &tau1()).unwrap());
        assert!(!is_topological_quandle(&q, &FiniteSpace::chain(3)).unwrap().passes());
    }

    #[test]
    fn trivial_quandle_passes_everywhere() {
        for t in FiniteSpace::all_on(3).unwrap() {
            assert!(is_topological_quandle(&FiniteQuandle::trivial(3), &t).unwrap().passes());
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(is_continuous_op(&FiniteQuandle::trivial(2), &FiniteSpace::chain(3)).is_err());
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(homeomorphisms(&tau1(), &tau2()).is_empty());
        assert!(homeomorphisms(&tau1(), &tau1()).contains(&Perm::identity(3)));
        assert_eq!(homeomorphisms(&FiniteSpace::discrete(3), &FiniteSpace::discrete(3)).len(), 6);
        for a in FiniteSpace::all_on(3).unwrap() {
            for b in FiniteSpace::all_on(3).unwrap() {
                assert_eq!(homeomorphisms(&a, &b), homeomorphisms_by_opens(&a, &b));
            }
        }
    }

    #[test]
    fn top_iso_examples() {
        let q = FiniteQuandle::pointed_swap();
        let a = TopQuandle::new(q.clone(), tau1()).unwrap();
        assert!(TopQuandle::new(q, tau2()).is_err());
        let t1 = TopQuandle::new(FiniteQuandle::trivial(3), tau1()).unwrap();
        let t2 = TopQuandle::new(FiniteQuandle::trivial(3), tau2()).unwrap();
        assert!(top_quandle_isomorphic(&t1, &t2).is_none());
        assert!(top_quandle_isomorphic(&a, &a).is_some());
        let t = TopQuandle::new(FiniteQuandle::trivial(3), FiniteSpace::discrete(3)).unwrap();
        let d = TopQuandle::new(FiniteQuandle::dihedral(3), FiniteSpace::discrete(3)).unwrap();
        assert!(top_quandle_isomorphic(&t, &d).is_none());
    }

    #[test]
    fn enumeration_examples() {
        let chain = enumerate_top_quandles(&FiniteSpace::chain(3)).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(chain[0].quandle().is_trivial());
        let discrete: Vec<FiniteQuandle> = enumerate_top_quandles(&FiniteSpace::discrete(3))
            .unwrap()
            .into_iter()
            .map(|tq| tq.quandle().clone())
            .collect();
        assert_eq!(discrete, enumerate_quandles(3).unwrap());
        assert_eq!(enumerate_top_quandles(&FiniteSpace::indiscrete(2)).unwrap().len(), 1);
        assert!(enumerate_top_quandles(&FiniteSpace::chain(6)).is_err());
    }
}
