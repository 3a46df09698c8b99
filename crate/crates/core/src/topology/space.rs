use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest point count representable in the bitset encoding.
pub const MAX_POINTS: usize = 64;

/// A topology on `0..n`, stored as its full family of open sets.
///
/// The specialization preorder is derived from the minimal open sets `U_x`
/// (intersection of all opens containing `x`): `x ≤ y ⟺ U_x ⊆ U_y`. With
/// this convention `U_x = ↓x` and the open sets are exactly the down-sets.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TopologyJson", into = "TopologyJson")]
pub struct FiniteSpace {
    n: usize,
    /// Sorted bitsets.
    opens: Vec<u64>,
    minimal: Vec<u64>,
}

/// Wire form `{"n": .., "opens": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

impl TryFrom<TopologyJson> for FiniteSpace {
    type Error = Error;

    fn try_from(raw: TopologyJson) -> Result<Self> {
        FiniteSpace::new(raw.n, &raw.opens)
    }
}

impl From<FiniteSpace> for TopologyJson {
    fn from(t: FiniteSpace) -> Self {
        TopologyJson { n: t.n, opens: t.open_sets() }
    }
}

/// Result of [`validate_topology`]. Sets are listed as sorted point lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TopologyReport {
    Valid,
    MissingEmptySet,
    MissingWholeSpace,
    UnionNotOpen { a: Vec<usize>, b: Vec<usize> },
    IntersectionNotOpen { a: Vec<usize>, b: Vec<usize> },
}

impl TopologyReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, TopologyReport::Valid)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn to_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn encode(n: usize, opens: &[Vec<usize>]) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::Malformed(format!("point count {n} outside 1..={MAX_POINTS}")));
    }
    let mut masks = Vec::with_capacity(opens.len());
    for set in opens {
        let mut m = 0u64;
        for &p in set {
            if p >= n {
                return Err(Error::Malformed(format!("point {p} out of range 0..{n}")));
            }
            m |= 1 << p;
        }
        masks.push(m);
    }
    masks.sort_unstable();
    masks.dedup();
    Ok(masks)
}

fn check(n: usize, opens: &[u64]) -> TopologyReport {
    let has = |m: u64| opens.binary_search(&m).is_ok();
    if !has(0) {
        return TopologyReport::MissingEmptySet;
    }
    if !has(full_mask(n)) {
        return TopologyReport::MissingWholeSpace;
    }
    for (i, &a) in opens.iter().enumerate() {
        for &b in &opens[..i] {
            if !has(a | b) {
                return TopologyReport::UnionNotOpen { a: to_points(b), b: to_points(a) };
            }
            if !has(a & b) {
                return TopologyReport::IntersectionNotOpen { a: to_points(b), b: to_points(a) };
            }
        }
    }
    TopologyReport::Valid
}

/// Checks the topology axioms on a family of subsets of `0..n`. Finite, so
/// pairwise closure suffices.
pub fn validate_topology(n: usize, opens: &[Vec<usize>]) -> Result<TopologyReport> {
    Ok(check(n, &encode(n, opens)?))
}

impl FiniteSpace {
    pub fn new(n: usize, opens: &[Vec<usize>]) -> Result<Self> {
        let masks = encode(n, opens)?;
        match check(n, &masks) {
            TopologyReport::Valid => Ok(Self::from_masks(n, masks)),
            bad => Err(Error::InvalidArgument(format!("not a topology: {bad:?}"))),
        }
    }

    fn from_masks(n: usize, opens: Vec<u64>) -> Self {
        let minimal = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|&&u| u >> x & 1 == 1)
                    .fold(full_mask(n), |acc, &u| acc & u)
            })
            .collect();
        FiniteSpace { n, opens, minimal }
    }

    /// The topology whose opens are the down-sets of a preorder given as
    /// `leq[x][y] ⟺ x ≤ y`. The relation must be reflexive and transitive.
    pub fn from_preorder(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if n == 0 || n > 20 || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("preorder must be a square relation on 1..=20 points".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::InvalidArgument(format!("preorder not reflexive at {x}")));
            }
            for y in 0..n {
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::InvalidArgument(format!("preorder not transitive at ({x},{y},{z})")));
                    }
                }
            }
        }
        let down: Vec<u64> = (0..n)
            .map(|x| (0..n).filter(|&y| leq[y][x]).fold(0u64, |m, y| m | 1 << y))
            .collect();
        let opens = (0..1u64 << n)
            .filter(|&s| (0..n).all(|x| s >> x & 1 == 0 || down[x] & !s == 0))
            .collect();
        Ok(Self::from_masks(n, opens))
    }

    /// Nested prefixes `∅ ⊂ {0} ⊂ {0,1} ⊂ … ⊂ {0,…,n−1}`.
    pub fn chain(n: usize) -> Self {
        assert!((1..=MAX_POINTS).contains(&n));
        Self::from_masks(n, (0..=n).map(full_mask).collect())
    }

    pub fn discrete(n: usize) -> Self {
        assert!((1..=20).contains(&n));
        Self::from_masks(n, (0..1u64 << n).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        assert!((1..=MAX_POINTS).contains(&n));
        Self::from_masks(n, vec![0, full_mask(n)])
    }

    /// Every topology on `n` labeled points (one per preorder).
    pub fn all_on(n: usize) -> Result<Vec<Self>> {
        const LIMIT: usize = 5;
        if n > LIMIT {
            return Err(Error::guard("topology enumeration size", n as u128, LIMIT as u128));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one point".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
        let mut out = Vec::new();
        for bits in 0u64..1 << pairs.len() {
            let mut leq = vec![vec![false; n]; n];
            for (x, row) in leq.iter_mut().enumerate() {
                row[x] = true;
            }
            for (k, &(x, y)) in pairs.iter().enumerate() {
                leq[x][y] = bits >> k & 1 == 1;
            }
            if let Ok(t) = Self::from_preorder(&leq) {
                out.push(t);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn open_masks(&self) -> &[u64] {
        &self.opens
    }

    pub fn open_sets(&self) -> Vec<Vec<usize>> {
        self.opens.iter().map(|&m| to_points(m)).collect()
    }

    pub fn is_open_mask(&self, m: u64) -> bool {
        self.opens.binary_search(&m).is_ok()
    }

    /// The minimal open neighbourhood `U_x`.
    pub fn minimal_open(&self, x: usize) -> Vec<usize> {
        to_points(self.minimal[x])
    }

    /// Specialization preorder, `x ≤ y ⟺ U_x ⊆ U_y`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.minimal[x] & !self.minimal[y] == 0
    }

    /// Connected components of the comparability graph of the specialization
    /// preorder. For finite spaces these are also the path components.
    pub fn path_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut block = vec![s];
            let mut k = 0;
            while k < block.len() {
                let x = block[k];
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        comp[y] = id;
                        block.push(y);
                    }
                }
                k += 1;
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    /// Image of an open-set bitmask under a point map.
    pub(crate) fn map_mask(mask: u64, images: &[usize]) -> u64 {
        images.iter().enumerate().filter(|(x, _)| mask >> x & 1 == 1).fold(0, |m, (_, &y)| m | 1 << y)
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSpace(n={}, opens={:?})", self.n, self.open_sets())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let chain3 = vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]];
        assert!(validate_topology(3, &chain3).unwrap().is_valid());
        let bad = vec![vec![], vec![0], vec![1], vec![0, 1, 2]];
        assert_eq!(
            validate_topology(3, &bad).unwrap(),
            TopologyReport::UnionNotOpen { a: vec![0], b: vec![1] }
        );
        assert!(validate_topology(3, &FiniteSpace::discrete(3).open_sets()).unwrap().is_valid());
        assert_eq!(validate_topology(2, &[vec![0, 1]]).unwrap(), TopologyReport::MissingEmptySet);
        assert_eq!(validate_topology(2, &[vec![]]).unwrap(), TopologyReport::MissingWholeSpace);
        assert!(matches!(validate_topology(2, &[vec![2]]), Err(Error::Malformed(_))));
    }

    #[test]
    fn chain_topology() {
        assert_eq!(FiniteSpace::chain(1).open_sets(), vec![vec![], vec![0]]);
        assert_eq!(FiniteSpace::chain(3).open_masks().len(), 4);
        for n in 1..=8 {
            let t = FiniteSpace::chain(n);
            assert!(validate_topology(n, &t.open_sets()).unwrap().is_valid());
            assert_eq!(t.path_components().len(), 1);
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(t.leq(x, y), x <= y);
                }
            }
        }
    }

    #[test]
    fn components() {
        assert_eq!(FiniteSpace::discrete(2).path_components(), vec![vec![0], vec![1]]);
        let tau2 = FiniteSpace::new(3, &[vec![], vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(tau2.minimal_open(2), vec![0, 1, 2]);
        assert_eq!(tau2.path_components(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn topology_counts_on_small_sets() {
        // topologies on n labeled points: 1, 4, 29, 355
        let counts: Vec<usize> = (1..=4).map(|n| FiniteSpace::all_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn preorder_round_trip() {
        for t in FiniteSpace::all_on(3).unwrap() {
            let leq: Vec<Vec<bool>> = (0..3).map(|x| (0..3).map(|y| t.leq(x, y)).collect()).collect();
            assert_eq!(FiniteSpace::from_preorder(&leq).unwrap(), t);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = FiniteSpace::chain(3);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"n":3,"opens":[[],[0],[0,1],[0,1,2]]}"#);
        assert_eq!(serde_json::from_str::<FiniteSpace>(&s).unwrap(), t);
    }
}
