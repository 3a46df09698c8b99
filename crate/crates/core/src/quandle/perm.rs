use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Malformed(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm(images)
    }

    /// The transposition of `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm(v)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        other.compose(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Sorted cycle lengths, longest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }

    /// Iterator over all permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        let mut next = Some((0..n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut v = cur.clone();
            if next_permutation(&mut v) {
                next = Some(v);
            }
            Some(Perm(cur))
        })
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Advances `v` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A permutation group with all of its elements materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    /// Sorted, deduplicated.
    elements: Vec<Perm>,
}

impl PermGroup {
    /// Default cap on the number of materialized elements.
    pub const DEFAULT_ORDER_LIMIT: usize = 3_628_800;

    /// Closure of `generators` under composition. An empty generator list
    /// yields the trivial group.
    pub fn generated_by(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::generated_by_with_limit(degree, generators, Self::DEFAULT_ORDER_LIMIT)
    }

    pub fn generated_by_with_limit(degree: usize, generators: Vec<Perm>, limit: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!("generator {g:?} has degree {} != {degree}", g.degree())));
        }
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = p.then(g);
                if !seen.contains(&q) {
                    if seen.len() >= limit {
                        return Err(Error::guard("permutation group order", seen.len() as u128 + 1, limit as u128));
                    }
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: seen.into_iter().collect(),
        })
    }

    /// Wraps an element list that is already known to be a group. Closure is
    /// checked, so a non-group list is rejected.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let group = PermGroup {
            degree,
            generators: elements.clone(),
            elements,
        };
        if !group.contains(&Perm::identity(degree)) {
            return Err(Error::InvalidArgument("element list lacks the identity".into()));
        }
        for a in &group.elements {
            for b in &group.elements {
                if !group.contains(&a.then(b)) {
                    return Err(Error::InvalidArgument("element list is not closed under composition".into()));
                }
            }
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Orbits of the action on `0..degree`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens: &[Perm] = if self.generators.is_empty() { &self.elements } else { &self.generators };
        let mut label = vec![usize::MAX; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in gens {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<Perm> {
        self.elements.iter().filter(|p| p.apply(point) == point).cloned().collect()
    }
}
