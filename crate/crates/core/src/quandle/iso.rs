//! Isomorphism search, automorphism groups and canonical forms.

use std::ops::ControlFlow;

use super::{FiniteQuandle, Perm, PermGroup};
use crate::error::{Error, Result};

/// Default size guard for materializing automorphism groups.
pub const DEFAULT_AUT_LIMIT: usize = 10;

/// Isomorphism-invariant data attached to each element, used to prune the
/// search: cycle type of `R_x`, size of the inner orbit of `x`, and the
/// number of `y` with `x ∗ y = x`.
fn element_invariants(q: &FiniteQuandle) -> Vec<(Vec<usize>, usize, usize)> {
    let orbits = q.orbits();
    let mut orbit_size = vec![0; q.n()];
    for o in &orbits {
        for &x in o {
            orbit_size[x] = o.len();
        }
    }
    (0..q.n())
        .map(|x| {
            let fixed_row = (0..q.n()).filter(|&y| q.op(x, y) == x).count();
            (q.right_translation(x).cycle_type(), orbit_size[x], fixed_row)
        })
        .collect()
}

struct Search<'a> {
    a: &'a FiniteQuandle,
    b: &'a FiniteQuandle,
    inv_a: Vec<(Vec<usize>, usize, usize)>,
    inv_b: Vec<(Vec<usize>, usize, usize)>,
    img: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(a: &'a FiniteQuandle, b: &'a FiniteQuandle) -> Self {
        let n = a.n();
        Search {
            a,
            b,
            inv_a: element_invariants(a),
            inv_b: element_invariants(b),
            img: vec![usize::MAX; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
        }
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.used[y] || self.inv_a[x] != self.inv_b[y] {
            return false;
        }
        self.img[x] = y;
        self.used[y] = true;
        self.assigned.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            self.used[self.img[x]] = false;
            self.img[x] = usize::MAX;
        }
    }

    /// Closes the partial map under the operation, starting from the
    /// assignments after `from`. Fails on the first inconsistency.
    fn propagate(&mut self, from: usize) -> bool {
        let mut k = from;
        while k < self.assigned.len() {
            let u = self.assigned[k];
            let mut i = 0;
            while i < self.assigned.len() {
                let v = self.assigned[i];
                for (l, r) in [(u, v), (v, u)] {
                    let w = self.a.op(l, r);
                    let target = self.b.op(self.img[l], self.img[r]);
                    if self.img[w] == usize::MAX {
                        if !self.assign(w, target) {
                            return false;
                        }
                    } else if self.img[w] != target {
                        return false;
                    }
                }
                i += 1;
            }
            k += 1;
        }
        true
    }

    fn run<F: FnMut(&Perm) -> ControlFlow<()>>(&mut self, visit: &mut F) -> ControlFlow<()> {
        let n = self.a.n();
        let Some(x) = (0..n).find(|&x| self.img[x] == usize::MAX) else {
            return visit(&Perm::from_images_unchecked(self.img.clone()));
        };
        for y in 0..n {
            let mark = self.assigned.len();
            if self.assign(x, y) && self.propagate(mark) {
                self.run(visit)?;
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every isomorphism `a → b` until it breaks.
pub(crate) fn for_each_isomorphism<F>(a: &FiniteQuandle, b: &FiniteQuandle, mut visit: F)
where
    F: FnMut(&Perm) -> ControlFlow<()>,
{
    if a.n() != b.n() {
        return;
    }
    let _ = Search::new(a, b).run(&mut visit);
}

/// A permutation `p` with `p(i ∗ j) = p(i) ∗ p(j)`, if one exists. The
/// search is exhaustive, so `None` proves non-isomorphism.
pub fn is_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> Option<Perm> {
    let mut found = None;
    for_each_isomorphism(a, b, |p| {
        found = Some(p.clone());
        ControlFlow::Break(())
    });
    found
}

/// `Aut(Q)` with every element materialized. Refuses `n > DEFAULT_AUT_LIMIT`.
pub fn automorphism_group(q: &FiniteQuandle) -> Result<PermGroup> {
    automorphism_group_with_limit(q, DEFAULT_AUT_LIMIT)
}

pub fn automorphism_group_with_limit(q: &FiniteQuandle, max_n: usize) -> Result<PermGroup> {
    if q.n() > max_n {
        return Err(Error::guard("quandle size for automorphism group", q.n() as u128, max_n as u128));
    }
    let mut all = Vec::new();
    for_each_isomorphism(q, q, |p| {
        all.push(p.clone());
        ControlFlow::Continue(())
    });
    PermGroup::from_elements(q.n(), all)
}

/// The lexicographically least (row-major) table isomorphic to `q`,
/// together with the relabeling `p` with `q.relabel(p) == canonical`.
///
/// Branch and bound over the relabeling: the first row of the relabeled
/// table fixes the whole permutation. Position `(0, c)` branches over the
/// preimage of label `c` when it is still free; an entry whose value is
/// not labeled yet must take the smallest free label, since any other
/// choice makes that entry, and hence the table, larger.
pub fn canonical_form(q: &FiniteQuandle) -> (FiniteQuandle, Perm) {
    let n = q.n();
    let mut st = Canon {
        q,
        p: vec![usize::MAX; n],
        pinv: vec![usize::MAX; n],
        next: 0,
        row: vec![0; n],
        best: None,
    };
    st.row0(0, false);
    let (table, perm) = st.best.expect("at least one relabeling");
    (FiniteQuandle::from_flat_unchecked(n, table), Perm::from_images_unchecked(perm))
}

struct Canon<'a> {
    q: &'a FiniteQuandle,
    p: Vec<usize>,
    pinv: Vec<usize>,
    next: usize,
    row: Vec<usize>,
    best: Option<(Vec<usize>, Vec<usize>)>,
}

impl Canon<'_> {
    fn label(&mut self, old: usize) {
        self.p[old] = self.next;
        self.pinv[self.next] = old;
        self.next += 1;
    }

    fn unlabel_to(&mut self, next: usize) {
        while self.next > next {
            self.next -= 1;
            let old = self.pinv[self.next];
            self.p[old] = usize::MAX;
            self.pinv[self.next] = usize::MAX;
        }
    }

    /// Fills `row[c..]`. `below` means the prefix is already strictly smaller
    /// than the best row found so far.
    fn row0(&mut self, c: usize, below: bool) {
        let n = self.q.n();
        if c == n {
            self.leaf();
            return;
        }
        if self.pinv[c] != usize::MAX {
            self.entry(c, below);
            return;
        }
        for old in 0..n {
            if self.p[old] != usize::MAX {
                continue;
            }
            let mark = self.next;
            self.label(old);
            self.entry(c, below);
            self.unlabel_to(mark);
        }
    }

    fn entry(&mut self, c: usize, below: bool) {
        let mark = self.next;
        let v = self.q.op(self.pinv[0], self.pinv[c]);
        if self.p[v] == usize::MAX {
            self.label(v);
        }
        let val = self.p[v];
        self.row[c] = val;
        let mut below = below;
        if !below {
            if let Some((best, _)) = &self.best {
                if val > best[c] {
                    self.unlabel_to(mark);
                    return;
                }
                below = val < best[c];
            }
        }
        self.row0(c + 1, below);
        self.unlabel_to(mark);
    }

    fn leaf(&mut self) {
        let n = self.q.n();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[self.p[i] * n + self.p[j]] = self.p[self.q.op(i, j)];
            }
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => table < *best,
        };
        if better {
            self.best = Some((table, self.p.clone()));
        }
    }
}
