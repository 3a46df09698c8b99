use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::error::{Error, Result};

/// Colorings by `ℤₙ` with `x ∗ y = t·x + (1−t)·y`, counted by linear algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderCount {
    pub modulus: u64,
    pub t: u64,
    pub count: u128,
    /// Diagonal of the reduced fixed-point system `M − I` over `ℤₙ`.
    pub diagonal: Vec<u64>,
    /// Number of unit pivots; the rank of `M − I` when `n` is prime.
    pub rank: usize,
}

/// The braid acts linearly on `ℤₙᵏ`; colorings are the kernel of `M − I`.
/// The kernel is counted by diagonalizing over `ℤₙ` with invertible row and
/// column operations: `|ker| = ∏ gcd(dᵢ, n)`.
pub fn alexander_coloring_count(n: u64, t: u64, w: &BraidWord) -> Result<AlexanderCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let t_red = t % n;
    if t_red.gcd(&n) != 1 {
        return Err(Error::InvalidArgument(format!("{t} is not a unit mod {n}")));
    }
    let m = n as u128;
    let tt = t_red as u128;
    let t_inv = mod_inverse(tt, m);
    let s = (1 + m - tt) % m; // 1 − t
    let k = w.strands();
    let mut a = identity(k);
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        // new rows i, i+1 as combinations of old rows i, i+1
        let (ri, rj) = (a[i].clone(), a[i + 1].clone());
        let comb = |c0: u128, c1: u128| -> Vec<u128> {
            ri.iter().zip(&rj).map(|(&x, &y)| (c0 * x + c1 * y) % m).collect()
        };
        if l > 0 {
            // (a, b) → (b, t·a + (1−t)·b)
            a[i] = comb(0, 1);
            a[i + 1] = comb(tt, s);
        } else {
            // (a, b) → (t⁻¹·b − t⁻¹(1−t)·a, a)
            a[i] = comb((m - t_inv * s % m) % m, t_inv);
            a[i + 1] = comb(1, 0);
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = (row[i] + m - 1 % m) % m;
    }
    let diagonal = diagonalize(a, m);
    let mut count: u128 = 1;
    let mut rank = 0;
    for &d in &diagonal {
        let g = if d == 0 { m } else { d.gcd(&m) };
        if g == 1 {
            rank += 1;
        }
        count = count
            .checked_mul(g)
            .ok_or_else(|| Error::guard("Alexander coloring count exceeding u128", u128::MAX, u128::MAX))?;
    }
    Ok(AlexanderCount { modulus: n, t: t_red, count, diagonal: diagonal.iter().map(|&d| d as u64).collect(), rank })
}

fn identity(k: usize) -> Vec<Vec<u128>> {
    (0..k).map(|i| (0..k).map(|j| u128::from(i == j)).collect()).collect()
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u128
}

/// Diagonal entries after reducing `a` with row and column operations that
/// are invertible over `ℤₘ`. Entries stay in `[0, m)`.
fn diagonalize(mut a: Vec<Vec<u128>>, m: u128) -> Vec<u128> {
    let k = a.len();
    let mut diag = Vec::with_capacity(k);
    for p in 0..k {
        loop {
            let pivot = (p..k)
                .flat_map(|i| (p..k).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j]);
            let Some((pi, pj)) = pivot else { break };
            a.swap(p, pi);
            for row in a.iter_mut() {
                row.swap(p, pj);
            }
            let d = a[p][p];
            let mut clean = true;
            for i in p + 1..k {
                let q = a[i][p] / d;
                if q != 0 {
                    for j in p..k {
                        a[i][j] = (a[i][j] + m - q * a[p][j] % m) % m;
                    }
                }
                clean &= a[i][p] == 0;
            }
            for j in p + 1..k {
                let q = a[p][j] / d;
                if q != 0 {
                    for row in a.iter_mut().skip(p) {
                        row[j] = (row[j] + m - q * row[p] % m) % m;
                    }
                }
                clean &= a[p][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag.push(a[p][p]);
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(alexander_coloring_count(3, 2, &b("B2: s1 s1 s1")).unwrap().count, 9);
        assert_eq!(alexander_coloring_count(3, 2, &b("B3: s1 -s2 s1 -s2")).unwrap().count, 3);
        let fig8 = b("B3: s1 -s2 s1 -s2");
        let q = crate::quandle::FiniteQuandle::alexander_mod(5, 2).unwrap();
        let brute = crate::coloring::count_colorings(&q, &fig8).unwrap().count;
        assert_eq!(alexander_coloring_count(5, 2, &fig8).unwrap().count, brute);
        for w in ["B3: s1 s2 -s1", "B4: s1 s1 s3", "B2:"] {
            let w = b(w);
            assert_eq!(alexander_coloring_count(7, 1, &w).unwrap().count, 7u128.pow(w.components() as u32));
        }
        assert!(alexander_coloring_count(6, 2, &b("B2: s1")).is_err());
        assert!(alexander_coloring_count(0, 1, &b("B2: s1")).is_err());
    }

    #[test]
    fn diagonalize_counts_kernel_over_composite_modulus() {
        // kernel of [[2, 4], [0, 6]] over ℤ₈ by exhaustion
        let a = vec![vec![2, 4], vec![0, 6]];
        let brute = (0..8u128)
            .flat_map(|x| (0..8u128).map(move |y| (x, y)))
            .filter(|&(x, y)| (2 * x + 4 * y) % 8 == 0 && (6 * y) % 8 == 0)
            .count() as u128;
        let prod: u128 = diagonalize(a, 8).iter().map(|&d| if d == 0 { 8 } else { d.gcd(&8) }).product();
        assert_eq!(prod, brute);
    }
}
