mod common;

use quandlekit::affine::{affine_op, RationalParam};
use quandlekit::poly::{classify_distributive, is_distributive, Classification, Distributivity, Poly2};

use common::{poly_corpus, rat, sampled_distributive};

#[test]
fn exact_test_matches_evaluation_oracle() {
    let corpus = poly_corpus(500, 7);
    let mut distributive = 0;
    for p in &corpus {
        let exact = is_distributive(p).unwrap();
        assert_eq!(exact.holds(), sampled_distributive(p, 200, 99), "{p}");
        if let Distributivity::NotDistributive { witness: w } = &exact {
            let (x, y, z) = (w.x.value(), w.y.value(), w.z.value());
            let left = p.eval(&p.eval(x, y), z);
            let right = p.eval(&p.eval(x, z), &p.eval(y, z));
            assert_eq!((&left, &right), (w.left.value(), w.right.value()));
            assert_ne!(left, right);
        }
        distributive += usize::from(exact.holds());
    }
    assert!(distributive > 50, "corpus too thin: {distributive}");
}

#[test]
fn distributive_polynomials_have_the_expected_form() {
    for p in poly_corpus(500, 7) {
        match classify_distributive(&p).unwrap() {
            Classification::NotDistributive { .. } => {}
            Classification::Affine { a } => {
                assert_eq!(p, Poly2::linear(a.value().clone(), rat(1, 1) - a.value()));
            }
            Classification::RightIndependent { p: q } => assert!(!q.depends_on_y()),
            Classification::NeedsReview { p, reason } => panic!("counterexample to the lemma: {p} ({reason})"),
        }
    }
}

#[test]
fn affine_classes_satisfy_affine_op_axioms() {
    let samples = [rat(0, 1), rat(1, 1), rat(-3, 2), rat(5, 7), rat(11, 3)];
    for p in poly_corpus(300, 11) {
        let Classification::Affine { a } = classify_distributive(&p).unwrap() else { continue };
        if a.is_zero() {
            continue;
        }
        let t: RationalParam = a;
        for x in &samples {
            assert_eq!(&affine_op(&t, x, x).unwrap(), x);
            for y in &samples {
                assert_eq!(affine_op(&t, x, y).unwrap(), p.eval(x, y));
                for z in &samples {
                    let op = |u: &_, v: &_| affine_op(&t, u, v).unwrap();
                    assert_eq!(op(&op(x, y), z), op(&op(x, z), &op(y, z)));
                }
            }
        }
    }
}
