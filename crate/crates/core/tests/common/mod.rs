#![allow(dead_code)]

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quandlekit::poly::Poly2;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Polynomials of total degree ≤ 4, biased so that a useful share is
/// distributive: a third are `a·x + b·y` (half of those with `a + b = 1`),
/// a third involve only `x`, the rest are sparse and general.
pub fn poly_corpus(count: usize, seed: u64) -> Vec<Poly2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials: Vec<(u32, u32)> = (0..=4).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let coeff = |rng: &mut ChaCha8Rng| {
        let choices = [(-2, 1), (-1, 1), (1, 1), (2, 1), (3, 1), (1, 2), (-1, 2)];
        let (n, d) = choices[rng.random_range(0..choices.len())];
        rat(n, d)
    };
    let sparse = |rng: &mut ChaCha8Rng, support: &[(u32, u32)], p: f64| {
        let mut terms = Vec::new();
        for &(i, j) in support {
            if rng.random_bool(p) {
                terms.push((coeff(rng), i, j));
            }
        }
        Poly2::from_terms(terms)
    };
    let pure_x: Vec<(u32, u32)> = (0..=4).map(|i| (i, 0)).collect();
    (0..count)
        .map(|k| match k % 3 {
            0 => {
                let a = coeff(&mut rng);
                let b = if rng.random_bool(0.5) { rat(1, 1) - &a } else { coeff(&mut rng) };
                Poly2::linear(a, b)
            }
            1 => sparse(&mut rng, &pure_x, 0.4),
            _ => sparse(&mut rng, &monomials, 0.2),
        })
        .collect()
}

/// Distributivity judged only by evaluation at `samples` random rational
/// triples.
pub fn sampled_distributive(p: &Poly2, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let mut r = || rat(rng.random_range(-40..=40), rng.random_range(1..=13));
        let (x, y, z) = (r(), r(), r());
        p.eval(&p.eval(&x, &y), &z) == p.eval(&p.eval(&x, &z), &p.eval(&y, &z))
    })
}
