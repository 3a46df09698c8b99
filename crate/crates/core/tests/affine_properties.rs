use std::f64::consts::TAU;

use num_rational::BigRational;
use proptest::prelude::*;
use quandlekit::affine::{
    affine_op, circle_op, decide_iso_circle, decide_iso_diag, decide_iso_line, validate_certificate, IsoDecision,
    RationalParam,
};

fn nonzero_param() -> impl Strategy<Value = RationalParam> {
    (-30i64..=30, 1i64..=30)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| RationalParam::new(n, d).unwrap())
}

fn unit_interval_param() -> impl Strategy<Value = RationalParam> {
    (1i64..=30).prop_flat_map(|d| (1..=d, Just(d))).prop_map(|(n, d)| RationalParam::new(n, d).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

#[test]
fn unit_log_ratio_is_increasing() {
    let f = |x: f64| (1.0 - x).ln() / x.ln();
    let pts: Vec<f64> = (1..10_000).map(|k| k as f64 / 10_000.0).collect();
    for w in pts.windows(2) {
        assert!(f(w[0]) < f(w[1]), "{} {}", w[0], w[1]);
    }
}

#[test]
fn squared_log_ratio_is_increasing() {
    let f = |x: f64| ((x - 1.0) * (x - 1.0)).ln() / x.ln();
    let pts: Vec<f64> = (0..=10_000).map(|k| 1.001 + (100.0 - 1.001) * k as f64 / 10_000.0).collect();
    for w in pts.windows(2) {
        assert!(f(w[0]) < f(w[1]), "{} {}", w[0], w[1]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn line_decision_is_equality_with_valid_certificates(t1 in nonzero_param(), t2 in nonzero_param()) {
        let d = decide_iso_line(&t1, &t2).unwrap();
        prop_assert_eq!(d.is_iso(), t1 == t2);
        if let IsoDecision::NonIso(c) = d {
            prop_assert!(validate_certificate(&c).unwrap());
            prop_assert!(validate_certificate(&c.swapped()).unwrap());
        }
    }

    #[test]
    fn circle_decision_is_equality_with_valid_certificates(t1 in unit_interval_param(), t2 in unit_interval_param()) {
        let d = decide_iso_circle(&t1, &t2).unwrap();
        prop_assert_eq!(d.is_iso(), t1 == t2);
        if let IsoDecision::NonIso(c) = d {
            prop_assert!(validate_certificate(&c).unwrap());
            prop_assert!(validate_certificate(&c.swapped()).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn affine_op_is_a_quandle_operation(t in nonzero_param(), x in rational(), y in rational(), z in rational()) {
        let op = |a: &BigRational, b: &BigRational| affine_op(&t, a, b).unwrap();
        prop_assert_eq!(op(&x, &x), x.clone());
        prop_assert_eq!(op(&op(&x, &y), &z), op(&op(&x, &z), &op(&y, &z)));
        // R_y is invertible: x = (x∗y − (1−t)y)/t
        let one = BigRational::from_integer(1.into());
        let back = (op(&x, &y) - (&one - t.value()) * &y) / t.value();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn circle_op_axioms(t in unit_interval_param(), a in 0.0..TAU, b in 0.0..TAU, c in 0.0..TAU) {
        let op = |x: f64, y: f64| circle_op(&t, x, y).unwrap();
        let close = |u: f64, v: f64| {
            let d = (u - v).rem_euclid(TAU);
            d.min(TAU - d) < 1e-12
        };
        prop_assert!(close(op(a, a), a));
        let (l, r) = (op(op(a, b), c), op(op(a, c), op(b, c)));
        prop_assert!(close(l, r), "{} {}", l, r);
    }

    #[test]
    fn diag_presence_is_permutation_invariant(
        t in prop::collection::vec(nonzero_param(), 1..5),
        seed in any::<u64>(),
    ) {
        let mut s = t.clone();
        let k = s.len();
        s.rotate_left((seed as usize) % k);
        if k > 1 && seed % 3 == 0 {
            s[0] = RationalParam::integer(1000);
        }
        let base = decide_iso_diag(&t, &s).unwrap().is_some();
        let mut t2 = t.clone();
        t2.reverse();
        prop_assert_eq!(decide_iso_diag(&t2, &s).unwrap().is_some(), base);
        let mut s2 = s.clone();
        s2.rotate_right(1);
        prop_assert_eq!(decide_iso_diag(&t, &s2).unwrap().is_some(), base);
    }
}

#[test]
fn one_dimensional_diag_matches_line() {
    for (a, b) in [("2", "2"), ("2", "3"), ("-1/2", "-1/2"), ("1/3", "3")] {
        let (a, b): (RationalParam, RationalParam) = (a.parse().unwrap(), b.parse().unwrap());
        let diag = decide_iso_diag(std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap();
        assert_eq!(diag.is_some(), decide_iso_line(&a, &b).unwrap().is_iso());
        if let Some(p) = diag {
            assert!(p.is_identity());
        }
    }
}
