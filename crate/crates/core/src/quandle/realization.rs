//! Coset quandles `G/H` and the realization of homogeneous quandles as
//! coset quandles of their automorphism group.

use serde::Serialize;

use super::iso::automorphism_group_with_limit;
use super::{FiniteQuandle, GroupAutomorphism, GroupTable, Perm, DEFAULT_AUT_LIMIT};
use crate::error::{Error, Result};

/// A coset quandle together with the cosets backing each element.
#[derive(Clone, Debug, Serialize)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    /// Right cosets `Hg`, each sorted, ordered by least element. Element `i`
    /// of `quandle` is `cosets[i]`.
    pub cosets: Vec<Vec<usize>>,
}

/// Right cosets of `H` in `G` with `Hf ∗ Hg = Hσ(fg⁻¹)g`.
///
/// `H` must be a subgroup fixed pointwise by `σ`; the operation is checked
/// to be independent of the chosen representatives.
pub fn coset_quandle(g: &GroupTable, sigma: &GroupAutomorphism, h: &[usize]) -> Result<CosetQuandle> {
    sigma.verify(g)?;
    if !g.is_subgroup(h) {
        return Err(Error::InvalidArgument(format!("{h:?} is not a subgroup")));
    }
    if let Some(&x) = h.iter().find(|&&x| sigma.apply(x) != x) {
        return Err(Error::InvalidArgument(format!("automorphism moves subgroup element {x}")));
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for rep in 0..order {
        if coset_of[rep] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&x| g.mul(x, rep)).collect();
        c.sort_unstable();
        c.dedup();
        for &x in &c {
            coset_of[x] = cosets.len();
        }
        cosets.push(c);
    }
    let m = cosets.len();
    let mut table = vec![usize::MAX; m * m];
    for (a, ca) in cosets.iter().enumerate() {
        for (b, cb) in cosets.iter().enumerate() {
            for &f in ca {
                for &gg in cb {
                    let r = coset_of[g.mul(sigma.apply(g.mul(f, g.inv(gg))), gg)];
                    let cell = &mut table[a * m + b];
                    if *cell == usize::MAX {
                        *cell = r;
                    } else if *cell != r {
                        return Err(Error::InvalidArgument(format!(
                            "coset operation depends on representatives at cosets ({a},{b})"
                        )));
                    }
                }
            }
        }
    }
    let quandle = FiniteQuandle::from_flat(m, table)?;
    Ok(CosetQuandle { quandle, cosets })
}

/// Data exhibiting `Q ≅ Aut(Q)/Stab(base)`.
#[derive(Clone, Debug, Serialize)]
pub struct JoyceRealization {
    /// `Aut(Q)`, elements indexed in sorted permutation order; `a·b` is
    /// "apply `a`, then `b`".
    pub group: GroupTable,
    /// The automorphism permutations behind the group indices.
    pub elements: Vec<Perm>,
    /// Conjugation by the right translation at `base`.
    pub sigma: GroupAutomorphism,
    /// Indices of the stabilizer of `base`.
    pub subgroup: Vec<usize>,
    pub coset: CosetQuandle,
    /// `phi[i] = f(base)` for any `f` in coset `i`; verified to be a
    /// quandle isomorphism from `coset.quandle` onto `Q`.
    pub phi: Perm,
}

/// Realizes a homogeneous quandle as the coset quandle `G/H` with
/// `G = Aut(Q)`, `σ(f) = R_b⁻¹ f R_b` and `H = Stab(b)`, and verifies the
/// map `Hf ↦ f(b)`.
pub fn joyce_realization(q: &FiniteQuandle, base: usize) -> Result<JoyceRealization> {
    if base >= q.n() {
        return Err(Error::InvalidArgument(format!("base point {base} out of range")));
    }
    let aut = automorphism_group_with_limit(q, DEFAULT_AUT_LIMIT)?;
    if !aut.is_transitive() {
        return Err(Error::InvalidArgument("quandle is not homogeneous".into()));
    }
    let group = GroupTable::from_perm_group(&aut);
    let elements = aut.elements().to_vec();
    let rb = q.right_translation(base);
    let rb_inv = rb.inverse();
    let sigma_images: Vec<usize> = elements
        .iter()
        .map(|f| aut.index_of(&rb_inv.then(f).then(&rb)).expect("Aut(Q) is closed under conjugation by R_b"))
        .collect();
    let sigma = GroupAutomorphism::new(&group, Perm::from_images(sigma_images)?)?;
    let subgroup: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].apply(base) == base).collect();
    let coset = coset_quandle(&group, &sigma, &subgroup)?;
    let phi_images: Vec<usize> = coset.cosets.iter().map(|c| elements[c[0]].apply(base)).collect();
    let phi = Perm::from_images(phi_images)
        .map_err(|_| Error::InvalidArgument("coset map is not a bijection".into()))?;
    if !coset.quandle.is_homomorphism_to(q, &phi) {
        return Err(Error::InvalidArgument("coset map is not a quandle homomorphism".into()));
    }
    Ok(JoyceRealization {
        group,
        elements,
        sigma,
        subgroup,
        coset,
        phi,
    })
}
