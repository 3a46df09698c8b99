//! Finite quandles as operation tables.
//!
//! Elements are `0..n` and `table[i][j]` is `i ∗ j` (row = left operand).
//! The right translation `R_j: i ↦ i ∗ j` is column `j` of the table.

mod construct;
pub(crate) mod enumerate;
mod group;
mod iso;
mod perm;
mod realization;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_quandles, enumerate_quandles_with, EnumerateOptions};
pub use group::{GroupAutomorphism, GroupTable};
pub use iso::{automorphism_group, automorphism_group_with_limit, canonical_form, is_isomorphic, DEFAULT_AUT_LIMIT};
pub use perm::{Perm, PermGroup};
pub use realization::{coset_quandle, joyce_realization, CosetQuandle, JoyceRealization};

/// A validated finite quandle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "QuandleJson", into = "QuandleJson")]
pub struct FiniteQuandle {
    n: usize,
    /// Row-major, `table[i * n + j] = i ∗ j`.
    table: Vec<usize>,
}

/// Wire form of a quandle table, `{"n": .., "table": [[..], ..]}`. Parsing
/// this does not check any axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl TryFrom<QuandleJson> for FiniteQuandle {
    type Error = Error;

    fn try_from(raw: QuandleJson) -> Result<Self> {
        if raw.table.len() != raw.n {
            return Err(Error::Malformed(format!("n = {} but table has {} rows", raw.n, raw.table.len())));
        }
        FiniteQuandle::from_rows(raw.table)
    }
}

impl From<FiniteQuandle> for QuandleJson {
    fn from(q: FiniteQuandle) -> Self {
        QuandleJson { n: q.n, table: q.rows() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Idempotency,
    RightBijectivity,
    RightDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Idempotency => "idempotency",
            Axiom::RightBijectivity => "right bijectivity",
            Axiom::RightDistributivity => "right distributivity",
        })
    }
}

/// Outcome of checking a table against the quandle axioms.
///
/// Witnesses: idempotency `[i]` with `i∗i ≠ i`; right bijectivity
/// `[i1, i2, j]` with `i1∗j = i2∗j`; distributivity `[i, j, k]` with
/// `(i∗j)∗k ≠ (i∗k)∗(j∗k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ValidationReport {
    Valid,
    Violation { axiom: Axiom, witness: Vec<usize> },
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }
}

fn flatten_rows(rows: &[Vec<usize>]) -> Result<(usize, Vec<usize>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Malformed("empty table".into()));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Malformed(format!("row {i} has length {} but the table has {n} rows", r.len())));
    }
    let table: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(&v) = table.iter().find(|&&v| v >= n) {
        return Err(Error::Malformed(format!("entry {v} out of range 0..{n}")));
    }
    Ok((n, table))
}

fn check_axioms(n: usize, t: &[usize], idempotent: bool) -> ValidationReport {
    if idempotent {
        if let Some(i) = (0..n).find(|&i| t[i * n + i] != i) {
            return ValidationReport::Violation { axiom: Axiom::Idempotency, witness: vec![i] };
        }
    }
    for j in 0..n {
        let mut hit = vec![usize::MAX; n];
        for i in 0..n {
            let v = t[i * n + j];
            if hit[v] != usize::MAX {
                return ValidationReport::Violation { axiom: Axiom::RightBijectivity, witness: vec![hit[v], i, j] };
            }
            hit[v] = i;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = t[i * n + j];
            for k in 0..n {
                if t[ij * n + k] != t[t[i * n + k] * n + t[j * n + k]] {
                    return ValidationReport::Violation { axiom: Axiom::RightDistributivity, witness: vec![i, j, k] };
                }
            }
        }
    }
    ValidationReport::Valid
}

/// Checks a raw table against the quandle axioms. Shape problems are errors,
/// axiom failures are reported.
pub fn validate_quandle(rows: &[Vec<usize>]) -> Result<ValidationReport> {
    let (n, t) = flatten_rows(rows)?;
    Ok(check_axioms(n, &t, true))
}

/// Same as [`validate_quandle`] without the idempotency axiom.
pub fn validate_rack(rows: &[Vec<usize>]) -> Result<ValidationReport> {
    let (n, t) = flatten_rows(rows)?;
    Ok(check_axioms(n, &t, false))
}

impl FiniteQuandle {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let (n, table) = flatten_rows(&rows)?;
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        match check_axioms(n, &table, true) {
            ValidationReport::Valid => Ok(FiniteQuandle { n, table }),
            ValidationReport::Violation { axiom, witness } => {
                Err(Error::InvalidArgument(format!("{axiom} fails at {witness:?}")))
            }
        }
    }

    /// For tables produced by code paths that already guarantee the axioms.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert!(check_axioms(n, &table, true).is_valid());
        FiniteQuandle { n, table }
    }

    /// `x ∗ y = x`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_flat_unchecked(n, (0..n * n).map(|k| k / n).collect())
    }

    /// `Z_n` with `i ∗ j = 2j − i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_flat_unchecked(n, (0..n * n).map(|k| (2 * (k % n) + n - k / n) % n).collect())
    }

    /// `Z_n` with `i ∗ j = t·i + (1 − t)·j`; `t` must be a unit mod `n`.
    pub fn alexander_mod(n: u64, t: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let t = t % n;
        if t.gcd(&n) != 1 {
            return Err(Error::InvalidArgument(format!("{t} is not a unit mod {n}")));
        }
        let s = (1 + n - t) % n;
        let nn = n as usize;
        let table = (0..nn * nn)
            .map(|k| {
                let (i, j) = ((k / nn) as u64, (k % nn) as u64);
                ((t * i + s * j) % n) as usize
            })
            .collect();
        Ok(Self::from_flat_unchecked(nn, table))
    }

    /// Three elements where `0` acts by swapping `1` and `2` and the other
    /// translations are trivial: `[[0,0,0],[2,1,1],[1,2,2]]`. Smallest
    /// quandle that is neither trivial nor algebraically connected.
    pub fn pointed_swap() -> Self {
        Self::from_flat_unchecked(3, vec![0, 0, 0, 2, 1, 1, 1, 2, 2])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    /// `i ∗⁻¹ j`, the unique `x` with `x ∗ j = i`.
    pub fn op_inv(&self, i: usize, j: usize) -> usize {
        (0..self.n).find(|&x| self.op(x, j) == i).expect("columns are permutations")
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// The right translation `R_j`.
    pub fn right_translation(&self, j: usize) -> Perm {
        Perm::from_images_unchecked((0..self.n).map(|i| self.op(i, j)).collect())
    }

    pub fn right_translations(&self) -> Vec<Perm> {
        (0..self.n).map(|j| self.right_translation(j)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.op(i, j) == i))
    }

    /// Each column replaced by its inverse permutation: `i ∗' j = i ∗⁻¹ j`.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let mut table = vec![0; n * n];
        for j in 0..n {
            for i in 0..n {
                table[self.op(i, j) * n + j] = i;
            }
        }
        Self::from_flat_unchecked(n, table)
    }

    /// Componentwise product; the pair `(i, j)` is element `i·n2 + j`.
    pub fn product(&self, other: &FiniteQuandle) -> Self {
        let m = other.n;
        let n = self.n * m;
        let table = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                self.op(a / m, b / m) * m + other.op(a % m, b % m)
            })
            .collect();
        Self::from_flat_unchecked(n, table)
    }

    /// The quandle transported along `p`: `p(i) ∗' p(j) = p(i ∗ j)`.
    pub fn relabel(&self, p: &Perm) -> Self {
        assert_eq!(p.degree(), self.n);
        let n = self.n;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[p.apply(i) * n + p.apply(j)] = p.apply(self.op(i, j));
            }
        }
        Self::from_flat_unchecked(n, table)
    }

    /// True iff `p` satisfies `p(i ∗ j) = p(i) ∗' p(j)` into `target`.
    pub fn is_homomorphism_to(&self, target: &FiniteQuandle, p: &Perm) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| p.apply(self.op(i, j)) == target.op(p.apply(i), p.apply(j))))
    }

    /// The inner group, generated by the right translations. On a finite
    /// discrete carrier no closure is needed.
    pub fn inner_group(&self) -> PermGroup {
        PermGroup::generated_by(self.n, self.right_translations()).expect("inner group within default order limit")
    }

    /// Orbits of the inner group; a single orbit means algebraically connected.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        // Orbits only need the generators, so avoid materializing the group.
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let (a, b) = (find(&mut parent, i), find(&mut parent, self.op(i, j)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(x);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True iff the full automorphism group acts transitively.
    pub fn is_homogeneous(&self) -> Result<bool> {
        self.is_homogeneous_with_limit(DEFAULT_AUT_LIMIT)
    }

    pub fn is_homogeneous_with_limit(&self, max_n: usize) -> Result<bool> {
        if self.is_connected() {
            return Ok(true);
        }
        Ok(automorphism_group_with_limit(self, max_n)?.is_transitive())
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle({:?})", self.rows())
    }
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = (self.n.max(2) - 1).to_string().len();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub use construct::{conj_quandle, core_quandle, twist_quandle};
