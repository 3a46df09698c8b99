//! Exhaustive isomorph-free enumeration of small quandles.
//!
//! A quandle is a tuple of right translations `R_0..R_{n-1}` with
//! `R_k(k) = k` and `R_k R_j R_k⁻¹ = R_{R_k(j)}` (right distributivity
//! restated). The search assigns columns one at a time and closes the
//! partial tuple under that rule, so one free choice usually fixes several
//! columns.

use rayon::prelude::*;

use super::iso::canonical_form;
use super::{FiniteQuandle, Perm};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Largest accepted `n`.
    pub max_n: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_n: 6, threads: None }
    }
}

/// One representative per isomorphism class of quandles of order `n`: the
/// lexicographically least table in the class. Sorted by table.
pub fn enumerate_quandles(n: usize) -> Result<Vec<FiniteQuandle>> {
    enumerate_quandles_with(n, &EnumerateOptions::default())
}

pub fn enumerate_quandles_with(n: usize, opts: &EnumerateOptions) -> Result<Vec<FiniteQuandle>> {
    if n == 0 {
        return Err(Error::InvalidArgument("quandles need at least one element".into()));
    }
    if n > opts.max_n {
        return Err(Error::guard("enumeration size", n as u128, opts.max_n as u128));
    }
    let candidates: Vec<Vec<Perm>> = (0..n)
        .map(|k| Perm::all(n).filter(|p| p.apply(k) == k).collect())
        .collect();
    let run = || {
        let mut out: Vec<FiniteQuandle> = search_labeled(n, &candidates, &|_| true)
            .into_par_iter()
            .filter(|q| canonical_form(q).0 == *q)
            .collect();
        out.sort();
        out
    };
    Ok(with_threads(opts.threads, run))
}

pub(crate) fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Every labeled quandle whose column `k` is drawn from `candidates[k]`
/// (each list sorted) and whose partial column tuples pass `partial_ok`.
pub(crate) fn search_labeled(
    n: usize,
    candidates: &[Vec<Perm>],
    partial_ok: &(dyn Fn(&[Option<Perm>]) -> bool + Sync),
) -> Vec<FiniteQuandle> {
    debug_assert!(candidates.iter().all(|c| c.windows(2).all(|w| w[0] < w[1])));
    candidates[0]
        .par_iter()
        .flat_map_iter(|r0| {
            let mut cols: Vec<Option<Perm>> = vec![None; n];
            let mut out = Vec::new();
            cols[0] = Some(r0.clone());
            if close(&mut cols, candidates) && partial_ok(&cols) {
                extend(&mut cols, candidates, partial_ok, &mut out);
            }
            out
        })
        .collect()
}

fn extend(
    cols: &mut Vec<Option<Perm>>,
    candidates: &[Vec<Perm>],
    partial_ok: &(dyn Fn(&[Option<Perm>]) -> bool + Sync),
    out: &mut Vec<FiniteQuandle>,
) {
    let n = cols.len();
    let Some(k) = cols.iter().position(Option::is_none) else {
        let table = (0..n * n)
            .map(|idx| cols[idx % n].as_ref().unwrap().apply(idx / n))
            .collect();
        out.push(FiniteQuandle::from_flat_unchecked(n, table));
        return;
    };
    for cand in &candidates[k] {
        let saved = cols.clone();
        cols[k] = Some(cand.clone());
        if close(cols, candidates) && partial_ok(cols) {
            extend(cols, candidates, partial_ok, out);
        }
        *cols = saved;
    }
}

/// Closes the assigned columns under `R_{R_k(j)} = R_k R_j R_k⁻¹`.
/// Returns false on a contradiction or a forced column outside its
/// candidate list.
fn close(cols: &mut [Option<Perm>], candidates: &[Vec<Perm>]) -> bool {
    let n = cols.len();
    loop {
        let mut changed = false;
        for k in 0..n {
            let Some(rk) = cols[k].clone() else { continue };
            let rk_inv = rk.inverse();
            for j in 0..n {
                let Some(rj) = &cols[j] else { continue };
                let forced = rk.compose(rj).compose(&rk_inv);
                let target = rk.apply(j);
                match &cols[target] {
                    Some(existing) => {
                        if *existing != forced {
                            return false;
                        }
                    }
                    None => {
                        if candidates[target].binary_search(&forced).is_err() {
                            return false;
                        }
                        cols[target] = Some(forced);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}
