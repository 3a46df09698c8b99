use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermGroup};
use crate::error::{Error, Result};

/// A finite group given by its Cayley table. `mul[a][b]` is the product `ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct GroupTable {
    n: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    n: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl TryFrom<GroupJson> for GroupTable {
    type Error = Error;

    fn try_from(raw: GroupJson) -> Result<Self> {
        if raw.mul.len() != raw.n {
            return Err(Error::Malformed(format!("n = {} but table has {} rows", raw.n, raw.mul.len())));
        }
        GroupTable::new(raw.mul, raw.identity)
    }
}

impl From<GroupTable> for GroupJson {
    fn from(g: GroupTable) -> Self {
        GroupJson {
            n: g.n,
            mul: g.mul.chunks(g.n.max(1)).map(|r| r.to_vec()).collect(),
            identity: g.identity,
        }
    }
}

impl GroupTable {
    /// Validates the table (shape, identity, inverses, associativity).
    pub fn new(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty group table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("group table is not square".into()));
        }
        if identity >= n {
            return Err(Error::Malformed(format!("identity {identity} out of range")));
        }
        let mul: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(&v) = mul.iter().find(|&&v| v >= n) {
            return Err(Error::Malformed(format!("entry {v} out of range 0..{n}")));
        }
        for a in 0..n {
            if mul[identity * n + a] != a || mul[a * n + identity] != a {
                return Err(Error::InvalidArgument(format!("identity law fails at {a}")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a * n + b] == identity && mul[b * n + a] == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::InvalidArgument(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidArgument(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { n, mul, identity, inverse })
    }

    fn from_fn(n: usize, identity: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        GroupTable::new(rows, identity).expect("constructed table is a group")
    }

    /// The cyclic group `Z_n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, 0, |a, b| (a + b) % n)
    }

    /// `G × H` with pair `(g, h)` stored at index `g·|H| + h`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let m = h.n;
        Self::from_fn(g.n * m, g.identity * m + h.identity, |a, b| {
            g.mul(a / m, b / m) * m + h.mul(a % m, b % m)
        })
    }

    /// The group of all elements of a permutation group, indexed in sorted
    /// order, with `a·b` meaning "apply `a`, then `b`".
    pub fn from_perm_group(group: &PermGroup) -> Self {
        let els = group.elements();
        let id = group.index_of(&Perm::identity(group.degree())).expect("groups contain the identity");
        Self::from_fn(els.len(), id, |a, b| {
            group.index_of(&els[a].then(&els[b])).expect("closed under composition")
        })
    }

    /// Symmetric group on `k` points.
    pub fn symmetric(k: usize) -> Self {
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Perm::transposition(k, 0, 1));
            gens.push(Perm::from_images_unchecked((1..k).chain(std::iter::once(0)).collect()));
        }
        Self::from_perm_group(&PermGroup::generated_by(k, gens).expect("small symmetric group"))
    }

    /// Dihedral group of order `2m`, acting on the vertices of an `m`-gon.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 3);
        let rot = Perm::from_images_unchecked((0..m).map(|i| (i + 1) % m).collect());
        let refl = Perm::from_images_unchecked((0..m).map(|i| (m - i) % m).collect());
        Self::from_perm_group(&PermGroup::generated_by(m, vec![rot, refl]).expect("small dihedral group"))
    }

    /// Quaternion group `Q8`. Index `4s + u` encodes `(-1)^s · [1, i, j, k][u]`.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit) for e_a * e_b with e = [1, i, j, k]
        const PROD: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Self::from_fn(8, 0, |a, b| {
            let (s, u) = PROD[a % 4][b % 4];
            ((a / 4 + b / 4 + s) % 2) * 4 + u
        })
    }

    /// One representative of every isomorphism class of groups of order ≤ 8,
    /// with a short name.
    pub fn small_groups() -> Vec<(&'static str, GroupTable)> {
        let c = GroupTable::cyclic;
        vec![
            ("C1", c(1)),
            ("C2", c(2)),
            ("C3", c(3)),
            ("C4", c(4)),
            ("C2xC2", Self::direct_product(&c(2), &c(2))),
            ("C5", c(5)),
            ("C6", c(6)),
            ("S3", Self::symmetric(3)),
            ("C7", c(7)),
            ("C8", c(8)),
            ("C4xC2", Self::direct_product(&c(4), &c(2))),
            ("C2xC2xC2", Self::direct_product(&Self::direct_product(&c(2), &c(2)), &c(2))),
            ("D4", Self::dihedral(4)),
            ("Q8", Self::quaternion()),
        ]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// True iff `set` is a subgroup (finite: nonempty and closed under products).
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        !s.is_empty()
            && s.iter().all(|&a| a < self.n)
            && s.contains(&self.identity)
            && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    /// The inner automorphism `x ↦ g x g⁻¹`.
    pub fn conjugation(&self, g: usize) -> GroupAutomorphism {
        let gi = self.inv(g);
        GroupAutomorphism {
            perm: Perm::from_images_unchecked((0..self.n).map(|x| self.mul(self.mul(g, x), gi)).collect()),
        }
    }

    /// All automorphisms, found by backtracking. Refuses groups larger than `max_order`.
    pub fn automorphisms(&self, max_order: usize) -> Result<Vec<GroupAutomorphism>> {
        if self.n > max_order {
            return Err(Error::guard("group order", self.n as u128, max_order as u128));
        }
        let mut out = Vec::new();
        let mut img = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.auto_search(0, &mut img, &mut used, &mut out);
        out.sort_by(|a, b| a.perm.cmp(&b.perm));
        Ok(out)
    }

    fn auto_search(&self, k: usize, img: &mut [usize], used: &mut [bool], out: &mut Vec<GroupAutomorphism>) {
        let n = self.n;
        if k == n {
            out.push(GroupAutomorphism { perm: Perm::from_images_unchecked(img.to_vec()) });
            return;
        }
        for v in 0..n {
            if used[v] || self.element_order(k) != self.element_order(v) {
                continue;
            }
            img[k] = v;
            let consistent = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = self.mul(a, b);
                    ab > k || img[ab] == self.mul(img[a], img[b])
                })
            });
            if consistent {
                used[v] = true;
                self.auto_search(k + 1, img, used, out);
                used[v] = false;
            }
            img[k] = usize::MAX;
        }
    }
}

/// A verified automorphism of a specific [`GroupTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    perm: Perm,
}

impl GroupAutomorphism {
    pub fn new(group: &GroupTable, perm: Perm) -> Result<Self> {
        if perm.degree() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "permutation degree {} != group order {}",
                perm.degree(),
                group.order()
            )));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if perm.apply(group.mul(a, b)) != group.mul(perm.apply(a), perm.apply(b)) {
                    return Err(Error::InvalidArgument(format!("not a homomorphism at ({a},{b})")));
                }
            }
        }
        Ok(GroupAutomorphism { perm })
    }

    pub fn identity(group: &GroupTable) -> Self {
        GroupAutomorphism { perm: Perm::identity(group.order()) }
    }

    /// Checks that this automorphism really belongs to `group`.
    pub fn verify(&self, group: &GroupTable) -> Result<()> {
        GroupAutomorphism::new(group, self.perm.clone()).map(|_| ())
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.perm.apply(a)
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_have_expected_orders_and_abelianness() {
        let groups = GroupTable::small_groups();
        assert_eq!(groups.len(), 14);
        for (name, g) in &groups {
            let abelian = !matches!(*name, "S3" | "D4" | "Q8");
            assert_eq!(g.is_abelian(), abelian, "{name}");
        }
        let q8 = GroupTable::quaternion();
        // i, j, k and their negatives all have order 4; -1 has order 2
        let orders: Vec<usize> = (0..8).map(|a| q8.element_order(a)).collect();
        assert_eq!(orders, vec![1, 4, 4, 4, 2, 4, 4, 4]);
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(Z5)| = 4, |Aut(S3)| = 6, |Aut(C2^2)| = 6
        assert_eq!(GroupTable::cyclic(5).automorphisms(8).unwrap().len(), 4);
        assert_eq!(GroupTable::symmetric(3).automorphisms(8).unwrap().len(), 6);
        let v4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert_eq!(v4.automorphisms(8).unwrap().len(), 6);
        assert!(GroupTable::cyclic(9).automorphisms(8).is_err());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(matches!(GroupTable::new(vec![vec![0, 1], vec![1, 1]], 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(GroupTable::new(vec![vec![0, 1], vec![1]], 0), Err(Error::Malformed(_))));
        let z3 = GroupTable::cyclic(3);
        assert!(GroupAutomorphism::new(&z3, Perm::transposition(3, 0, 1)).is_err());
        assert!(GroupAutomorphism::new(&z3, Perm::transposition(3, 1, 2)).is_ok());
    }

    #[test]
    fn subgroups() {
        let s3 = GroupTable::symmetric(3);
        let t = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        assert!(s3.is_subgroup(&[s3.identity(), t]));
        assert!(!s3.is_subgroup(&[t]));
    }

    #[test]
    fn group_json_round_trip() {
        let g = GroupTable::quaternion();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.starts_with("{\"n\":8,\"mul\":"));
        let back: GroupTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
