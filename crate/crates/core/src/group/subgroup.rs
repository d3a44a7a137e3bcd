use fixedbitset::FixedBitSet;

use super::{AutGroup, Elem, Group, GroupError, NONE};

/// A subgroup stored as a sorted element set of its parent, plus the
/// generators it was built from. Equality is element-set equality.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    elems: Vec<Elem>,
    gens: Vec<Elem>,
    mask: FixedBitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.elems == other.elems
    }
}

impl Eq for Subgroup {}

/// Breadth-first closure of `gens` under right multiplication.
pub fn close_subgroup(g: &dyn Group, gens: &[Elem]) -> Subgroup {
    let n = g.order();
    let mut mask = FixedBitSet::with_capacity(n);
    mask.insert(g.identity() as usize);
    let mut elems = vec![g.identity()];
    let mut head = 0;
    let gens: Vec<Elem> = gens.iter().copied().filter(|&s| s != g.identity()).collect();
    while head < elems.len() {
        let e = elems[head];
        head += 1;
        for &s in &gens {
            let f = g.mul(e, s);
            if !mask.put(f as usize) {
                elems.push(f);
            }
        }
    }
    elems.sort_unstable();
    debug_assert_eq!(n % elems.len(), 0);
    Subgroup {
        parent_order: n,
        elems,
        gens,
        mask,
    }
}

impl Subgroup {
    pub fn trivial(g: &dyn Group) -> Subgroup {
        close_subgroup(g, &[])
    }

    pub fn whole(g: &dyn Group) -> Subgroup {
        close_subgroup(g, &g.generators())
    }

    /// Wraps an element set after checking it is closed and contains the
    /// identity.
    pub fn from_elements(g: &dyn Group, elems: impl IntoIterator<Item = Elem>) -> Result<Subgroup, GroupError> {
        let n = g.order();
        let mut mask = FixedBitSet::with_capacity(n);
        for e in elems {
            if e as usize >= n {
                return Err(GroupError::NotSubgroup(format!(
                    "element {e} outside parent of order {n}"
                )));
            }
            mask.insert(e as usize);
        }
        if !mask.contains(g.identity() as usize) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        let set: Vec<Elem> = mask.ones().map(|e| e as Elem).collect();
        let mut gens = Vec::new();
        let mut span = close_subgroup(g, &gens);
        for &e in &set {
            if !span.contains(e) {
                gens.push(e);
                span = close_subgroup(g, &gens);
                if span.elems.iter().any(|&x| !mask.contains(x as usize)) {
                    return Err(GroupError::NotSubgroup(format!("not closed (generated by {gens:?})")));
                }
            }
        }
        Ok(span)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    fn same_parent(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.parent_order == other.parent_order {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch(self.parent_order, other.parent_order))
        }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent_order == other.parent_order && self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn intersection(&self, g: &dyn Group, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.same_parent(other)?;
        Subgroup::from_elements(g, self.elems.iter().copied().filter(|&e| other.contains(e)))
    }

    /// Whether `self` is normalised by every element of `big` (conjugating
    /// generators by generators suffices in a finite group).
    pub fn is_normal_in(&self, g: &dyn Group, big: &Subgroup) -> bool {
        self.normality_witness(g, big).is_none()
    }

    pub(crate) fn normality_witness(&self, g: &dyn Group, big: &Subgroup) -> Option<(Elem, Elem)> {
        let outer = if big.gens.is_empty() { &big.elems } else { &big.gens };
        let inner = if self.gens.is_empty() { &self.elems } else { &self.gens };
        for &x in outer {
            let xi = g.inv(x);
            for &n in inner {
                if !self.contains(g.mul(g.mul(x, n), xi)) {
                    return Some((x, n));
                }
            }
        }
        None
    }

    /// Image of the subgroup under an element-wise map, closed up.
    pub fn image(&self, target: &dyn Group, f: impl Fn(Elem) -> Elem) -> Subgroup {
        let gens: Vec<Elem> = self.gens.iter().map(|&e| f(e)).collect();
        close_subgroup(target, &gens)
    }
}

/// The product set `AB` as a membership mask of the parent.
#[derive(Clone, Debug)]
pub struct ProductSet {
    mask: FixedBitSet,
    len: usize,
}

impl ProductSet {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.ones().map(|e| e as Elem)
    }

    pub fn equals_subgroup(&self, s: &Subgroup) -> bool {
        self.len == s.order() && s.elements().iter().all(|&e| self.contains(e))
    }
}

impl PartialEq for ProductSet {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.mask == other.mask
    }
}

/// `{ab : a in A, b in B}` as a union of cosets `aB` over a transversal of
/// `A/(A∩B)`, cross-checked against `|A||B| / |A∩B|`.
pub fn product_set(g: &dyn Group, a: &Subgroup, b: &Subgroup) -> Result<ProductSet, GroupError> {
    a.same_parent(b)?;
    let meet: Vec<Elem> = a.elems.iter().copied().filter(|&e| b.contains(e)).collect();
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut mask = FixedBitSet::with_capacity(g.order());
    for &x in &a.elems {
        if covered.contains(x as usize) {
            continue;
        }
        for &m in &meet {
            covered.insert(g.mul(x, m) as usize);
        }
        for &y in &b.elems {
            mask.insert(g.mul(x, y) as usize);
        }
    }
    let len = mask.count_ones(..);
    let meet = meet.len();
    if len * meet != a.order() * b.order() {
        return Err(GroupError::ProductFormula(format!(
            "|AB| = {len}, |A∩B| = {meet}, |A| = {}, |B| = {}",
            a.order(),
            b.order()
        )));
    }
    Ok(ProductSet { mask, len })
}

/// Elements commuting with a generating set.
pub fn centre(g: &dyn Group) -> Subgroup {
    let gens = g.generators();
    let elems = (0..g.order() as Elem).filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)));
    Subgroup::from_elements(g, elems).expect("centre is a subgroup")
}

/// Inn(K) inside an automorphism group, with the conjugation map
/// `zeta: K -> Inn(K)` and its inverse when the centre of K is trivial.
#[derive(Clone, Debug)]
pub struct InnerAutomorphisms {
    pub inn: Subgroup,
    zeta: Vec<Elem>,
    zeta_inv: Vec<Elem>,
    centre_order: usize,
}

pub fn inner_automorphism_group(aut: &dyn AutGroup) -> InnerAutomorphisms {
    let k = aut.base().order();
    let zeta: Vec<Elem> = (0..k as Elem).map(|x| aut.conjugation(x)).collect();
    let kgens = aut.base().generators();
    let inn = close_subgroup(aut, &kgens.iter().map(|&x| zeta[x as usize]).collect::<Vec<_>>());
    let mut zeta_inv = vec![NONE; aut.order()];
    let mut centre_order = 0;
    for (x, &phi) in zeta.iter().enumerate() {
        if phi == aut.identity() {
            centre_order += 1;
        }
        if zeta_inv[phi as usize] == NONE {
            zeta_inv[phi as usize] = x as Elem;
        }
    }
    InnerAutomorphisms {
        inn,
        zeta,
        zeta_inv,
        centre_order,
    }
}

impl InnerAutomorphisms {
    pub fn zeta(&self, k: Elem) -> Elem {
        self.zeta[k as usize]
    }

    pub fn centre_is_trivial(&self) -> bool {
        self.centre_order == 1
    }

    pub fn require_trivial_centre(&self) -> Result<(), GroupError> {
        if self.centre_is_trivial() {
            Ok(())
        } else {
            Err(GroupError::CentreNotTrivial(self.centre_order))
        }
    }

    /// `zeta^-1(phi)`; only meaningful when the centre is trivial.
    pub fn zeta_inverse(&self, phi: Elem) -> Option<Elem> {
        if !self.centre_is_trivial() {
            return None;
        }
        let k = self.zeta_inv[phi as usize];
        (k != NONE).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm::symmetric_group;
    use crate::group::TableGroup;

    #[test]
    fn empty_generators_give_trivial_subgroup() {
        let g = TableGroup::cyclic(12);
        let t = close_subgroup(&g, &[]);
        assert_eq!(t.elements(), &[0]);
        assert_eq!(close_subgroup(&g, &[4]).order(), 3);
        assert_eq!(close_subgroup(&g, &[4, 6]).order(), 6);
    }

    #[test]
    fn from_elements_rejects_non_subgroups() {
        let g = TableGroup::cyclic(6);
        assert!(Subgroup::from_elements(&g, [0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, [1, 2]).is_err());
        assert_eq!(Subgroup::from_elements(&g, [0, 2, 4]).unwrap().order(), 3);
    }

    #[test]
    fn product_of_subgroup_with_itself() {
        let (s4, _) = symmetric_group(4);
        let a = close_subgroup(&s4, &[1, 2]);
        let p = product_set(&s4, &a, &a).unwrap();
        assert!(p.equals_subgroup(&a));
    }

    #[test]
    fn product_formula_on_all_cyclic_pairs_of_s4() {
        let (s4, _) = symmetric_group(4);
        let cyclics: Vec<_> = (0..24).map(|x| close_subgroup(&s4, &[x])).collect();
        for a in &cyclics {
            for b in &cyclics {
                let p = product_set(&s4, a, b).unwrap();
                let meet = a.intersection(&s4, b).unwrap();
                assert_eq!(p.len() * meet.order(), a.order() * b.order());
            }
        }
    }

    #[test]
    fn parent_mismatch() {
        let g = TableGroup::cyclic(4);
        let h = TableGroup::cyclic(6);
        let a = Subgroup::whole(&g);
        let b = Subgroup::whole(&h);
        assert_eq!(product_set(&g, &a, &b).unwrap_err(), GroupError::ParentMismatch(4, 6));
    }

    #[test]
    fn centres() {
        let (s3, _) = symmetric_group(3);
        assert!(centre(&s3).is_trivial());
        let (s4, _) = symmetric_group(4);
        assert!(centre(&s4).is_trivial());
        let c = TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::cyclic(3));
        assert_eq!(centre(&c).order(), 6);
    }

    #[test]
    fn normality_in_s4() {
        let (s4, perms) = symmetric_group(4);
        let idx = |p: [u32; 4]| perms.iter().position(|q| q[..] == p[..]).unwrap() as Elem;
        let whole = Subgroup::whole(&s4);
        let v4 = close_subgroup(&s4, &[idx([1, 0, 3, 2]), idx([2, 3, 0, 1])]);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal_in(&s4, &whole));
        let c2 = close_subgroup(&s4, &[idx([1, 0, 2, 3])]);
        assert!(!c2.is_normal_in(&s4, &whole));
    }
}
