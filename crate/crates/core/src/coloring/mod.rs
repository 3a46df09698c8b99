//! Quandle colorings of braid closures.
//!
//! Strands are numbered left to right and a word is read left to right.
//! At a positive crossing `σ_i` strand `i` passes under strand `i+1`:
//!
//! ```text
//!   a   b          b   a∗b
//!    \ /            |   |
//!     /      ==>    σ_i
//!    / \
//! ```
//!
//! so colors `(a, b)` at positions `(i, i+1)` become `(b, a∗b)`, and `σ_i⁻¹`
//! sends `(a, b)` to `(b ∗⁻¹ a, a)`. A coloring of the closure is a tuple
//! fixed by the whole word.

mod alexander;
mod braid;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

pub use alexander::{alexander_coloring_count, AlexanderCount};
pub use braid::BraidWord;

/// Largest tuple space the brute-force counter walks.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCount {
    pub quandle: String,
    pub braid: BraidWord,
    pub count: u128,
}

/// Applies `w` to a coloring of its strands.
pub fn braid_action(q: &FiniteQuandle, w: &BraidWord, coloring: &[usize]) -> Result<Vec<usize>> {
    if coloring.len() != w.strands() {
        return Err(Error::InvalidArgument(format!(
            "coloring has {} entries for {} strands",
            coloring.len(),
            w.strands()
        )));
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= q.n()) {
        return Err(Error::InvalidArgument(format!("color {c} outside a quandle of order {}", q.n())));
    }
    let inv = inverse_table(q);
    let mut v = coloring.to_vec();
    act(q, &inv, w.letters(), &mut v);
    Ok(v)
}

fn inverse_table(q: &FiniteQuandle) -> Vec<usize> {
    let n = q.n();
    let mut inv = vec![0; n * n];
    for x in 0..n {
        for j in 0..n {
            inv[q.op(x, j) * n + j] = x;
        }
    }
    inv
}

fn act(q: &FiniteQuandle, inv: &[usize], letters: &[i32], v: &mut [usize]) {
    let n = q.n();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (v[i], v[i + 1]);
        if l > 0 {
            v[i] = b;
            v[i + 1] = q.op(a, b);
        } else {
            v[i] = inv[b * n + a];
            v[i + 1] = a;
        }
    }
}

/// Number of colorings of the closure of `w` by `q`, by exhaustion over
/// `Qᵏ`. Refuses beyond [`BRUTE_FORCE_LIMIT`] tuples.
pub fn count_colorings(q: &FiniteQuandle, w: &BraidWord) -> Result<ColoringCount> {
    let (n, k) = (q.n() as u128, w.strands() as u32);
    let total = n.checked_pow(k).unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::guard(
            "colorings to enumerate (n^k); for Alexander quandles use alexander_coloring_count",
            total,
            BRUTE_FORCE_LIMIT,
        ));
    }
    let inv = inverse_table(q);
    let k = k as usize;
    let n = q.n();
    let count = (0..total as u64)
        .into_par_iter()
        .filter(|&idx| {
            let mut start = vec![0usize; k];
            let mut r = idx as usize;
            for c in start.iter_mut() {
                *c = r % n;
                r /= n;
            }
            let mut v = start.clone();
            act(q, &inv, w.letters(), &mut v);
            v == start
        })
        .count() as u128;
    Ok(ColoringCount { quandle: format!("order-{n} quandle"), braid: w.clone(), count })
}
