use super::{FiniteQuandle, GroupAutomorphism, GroupTable};
use crate::error::Result;

fn build(g: &GroupTable, f: impl Fn(usize, usize) -> usize) -> FiniteQuandle {
    let n = g.order();
    let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
    FiniteQuandle::from_flat(n, table).expect("group-derived operation satisfies the quandle axioms")
}

/// Conjugation quandle, `x ∗ y = y x y⁻¹`.
pub fn conj_quandle(g: &GroupTable) -> FiniteQuandle {
    build(g, |x, y| g.mul(g.mul(y, x), g.inv(y)))
}

/// Core quandle, `x ∗ y = y x⁻¹ y`.
pub fn core_quandle(g: &GroupTable) -> FiniteQuandle {
    build(g, |x, y| g.mul(g.mul(y, g.inv(x)), y))
}

/// Twisted quandle, `x ∗ y = σ(x y⁻¹) y`. `sigma` is re-verified against `g`.
pub fn twist_quandle(g: &GroupTable, sigma: &GroupAutomorphism) -> Result<FiniteQuandle> {
    sigma.verify(g)?;
    Ok(build(g, |x, y| g.mul(sigma.apply(g.mul(x, g.inv(y))), y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{is_isomorphic, Perm};

    #[test]
    fn conj_of_abelian_is_trivial() {
        assert_eq!(conj_quandle(&GroupTable::cyclic(4)), FiniteQuandle::trivial(4));
        assert!(!conj_quandle(&GroupTable::symmetric(3)).is_trivial());
    }

    #[test]
    fn core_examples() {
        assert_eq!(core_quandle(&GroupTable::cyclic(3)), FiniteQuandle::dihedral(3));
        let v4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert_eq!(core_quandle(&v4), FiniteQuandle::trivial(4));
    }

    #[test]
    fn twist_examples() {
        let z3 = GroupTable::cyclic(3);
        let id = GroupAutomorphism::identity(&z3);
        assert_eq!(twist_quandle(&z3, &id).unwrap(), FiniteQuandle::trivial(3));
        let neg = GroupAutomorphism::new(&z3, Perm::transposition(3, 1, 2)).unwrap();
        assert_eq!(twist_quandle(&z3, &neg).unwrap(), FiniteQuandle::dihedral(3));
        let z5 = GroupTable::cyclic(5);
        let double = GroupAutomorphism::new(&z5, Perm::from_images(vec![0, 2, 4, 1, 3]).unwrap()).unwrap();
        assert_eq!(twist_quandle(&z5, &double).unwrap(), FiniteQuandle::alexander_mod(5, 2).unwrap());
    }

    #[test]
    fn twist_rejects_foreign_automorphism() {
        let z4 = GroupTable::cyclic(4);
        let neg4 = GroupAutomorphism::new(&z4, Perm::from_images(vec![0, 3, 2, 1]).unwrap()).unwrap();
        assert!(twist_quandle(&GroupTable::cyclic(3), &neg4).is_err());
    }

    #[test]
    fn conj_s3_is_dihedral_3_plus_fixed_points() {
        // transpositions form a dihedral-3 subquandle; the quandle has 3 orbits
        let q = conj_quandle(&GroupTable::symmetric(3));
        assert_eq!(q.orbits().len(), 3);
        assert!(is_isomorphic(&q, &q).is_some());
    }
}
