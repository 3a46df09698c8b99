use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quandlekit::quandle::validate_quandle;
use quandlekit::topology::{
    enumerate_top_quandles, homeomorphisms, homeomorphisms_by_opens, is_continuous_op, is_continuous_op_by_preimages,
    is_continuous_table, is_topological_quandle, validate_topology,
};
use quandlekit::{FiniteQuandle, FiniteSpace, PermGroup};

fn all_spaces(max_n: usize) -> Vec<FiniteSpace> {
    (1..=max_n).flat_map(|n| FiniteSpace::all_on(n).unwrap()).collect()
}

#[test]
fn monotonicity_agrees_with_open_preimages_on_random_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut continuous = 0;
    for t in all_spaces(4) {
        let n = t.n();
        for _ in 0..200 {
            let table: Vec<Vec<usize>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(0..n)).collect()).collect();
            let fast = is_continuous_table(&table, &t).unwrap();
            assert_eq!(fast, is_continuous_op_by_preimages(&table, &t).unwrap(), "{t:?} {table:?}");
            continuous += usize::from(fast);
        }
    }
    // the sample must exercise both outcomes
    assert!(continuous > 1000);
}

#[test]
fn monotonicity_agrees_with_open_preimages_on_quandles() {
    let quandles: Vec<FiniteQuandle> = (1..=4).flat_map(|n| quandlekit::quandle::enumerate_quandles(n).unwrap()).collect();
    for t in all_spaces(4) {
        for q in quandles.iter().filter(|q| q.n() == t.n()) {
            assert_eq!(is_continuous_op(q, &t).unwrap(), is_continuous_op_by_preimages(&q.rows(), &t).unwrap());
        }
    }
}

#[test]
fn enumerated_structures_are_topological_quandles() {
    for t in all_spaces(4) {
        for tq in enumerate_top_quandles(&t).unwrap() {
            assert!(validate_quandle(&tq.quandle().rows()).unwrap().is_valid());
            assert!(is_topological_quandle(tq.quandle(), &t).unwrap().passes());
        }
    }
}

#[test]
fn two_path_components_force_disconnected_quandles() {
    let mut checked = 0;
    for t in all_spaces(4).into_iter().filter(|t| t.path_components().len() == 2) {
        for tq in enumerate_top_quandles(&t).unwrap() {
            assert!(tq.quandle().orbits().len() > 1, "{t:?} {:?}", tq.quandle());
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn self_homeomorphisms_form_a_group_and_match_reference() {
    for t in all_spaces(4) {
        let h = homeomorphisms(&t, &t);
        assert_eq!(h, homeomorphisms_by_opens(&t, &t));
        let g = PermGroup::from_elements(t.n(), h.clone()).expect("closed under composition and inverse");
        assert_eq!(g.order(), h.len());
    }
}

#[test]
fn enumerated_topologies_validate() {
    for t in all_spaces(4) {
        assert!(validate_topology(t.n(), &t.open_sets()).unwrap().is_valid());
    }
}

#[test]
fn chains_admit_only_the_trivial_structure() {
    for n in 1..=4 {
        let found = enumerate_top_quandles(&FiniteSpace::chain(n)).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].quandle().is_trivial());
    }
}
