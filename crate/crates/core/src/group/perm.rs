//! Permutation groups, and automorphism groups of small groups stored as
//! hash-consed permutations of the base's element indices.

use std::collections::HashMap;
use std::sync::Arc;

use super::{element_order, extend_homomorphism, AutGroup, Elem, Group, GroupError, TABLE_LIMIT};

pub type Perm = Vec<Elem>;

/// `(a ∘ b)(i) = a[b[i]]`.
pub fn compose(a: &[Elem], b: &[Elem]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn invert(a: &[Elem]) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j as usize] = i as Elem;
    }
    r
}

pub fn is_permutation(a: &[Elem]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter()
        .all(|&j| (j as usize) < a.len() && !std::mem::replace(&mut seen[j as usize], true))
}

/// A group of permutations, composed as functions, elements indexed in the
/// order they were supplied with the identity first.
#[derive(Clone, Debug)]
pub struct PermGroup {
    perms: Vec<Perm>,
    index: HashMap<Perm, Elem>,
    table: Option<Vec<Elem>>,
    inv: Vec<Elem>,
    gens: Vec<Elem>,
}

impl PermGroup {
    /// Closure of `gens`; elements sorted lexicographically.
    pub fn generated(degree: usize, gens: &[Perm]) -> PermGroup {
        let id: Perm = (0..degree as Elem).collect();
        let mut index: HashMap<Perm, Elem> = HashMap::new();
        let mut perms = vec![id.clone()];
        index.insert(id, 0);
        let mut head = 0;
        while head < perms.len() {
            let p = perms[head].clone();
            head += 1;
            for s in gens {
                let q = compose(&p, s);
                if !index.contains_key(&q) {
                    index.insert(q.clone(), perms.len() as Elem);
                    perms.push(q);
                }
            }
        }
        perms.sort();
        PermGroup::from_sorted(perms, gens)
    }

    fn from_sorted(perms: Vec<Perm>, gens: &[Perm]) -> PermGroup {
        let index: HashMap<Perm, Elem> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let inv = perms.iter().map(|p| index[&invert(p)]).collect();
        let mut g = PermGroup {
            perms,
            index,
            table: None,
            inv,
            gens: Vec::new(),
        };
        g.gens = gens.iter().filter_map(|s| g.index_of(s)).filter(|&i| i != 0).collect();
        let n = g.perms.len();
        if n <= TABLE_LIMIT {
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = g.index[&compose(&g.perms[a], &g.perms[b])];
                }
            }
            g.table = Some(table);
        }
        g
    }

    pub fn index_of(&self, p: &[Elem]) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn perm(&self, a: Elem) -> &[Elem] {
        &self.perms[a as usize]
    }

    pub fn degree(&self) -> usize {
        self.perms[0].len()
    }
}

impl Group for PermGroup {
    fn order(&self) -> usize {
        self.perms.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.perms.len() + b as usize],
            None => self.index[&compose(&self.perms[a as usize], &self.perms[b as usize])],
        }
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

/// `S_n` with elements in lexicographic order; returns the group and its
/// permutations.
pub fn symmetric_group(n: usize) -> (PermGroup, Vec<Perm>) {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Perm = (0..n as Elem).collect();
        swap.swap(0, 1);
        let cycle: Perm = (0..n as Elem).map(|i| (i + 1) % n as Elem).collect();
        gens.push(swap);
        gens.push(cycle);
    }
    let g = PermGroup::generated(n, &gens);
    let perms = g.perms.clone();
    (g, perms)
}

/// `A_n`, generated by the 3-cycles `(0 1 i)`.
pub fn alternating_group(n: usize) -> (PermGroup, Vec<Perm>) {
    let gens: Vec<Perm> = (2..n)
        .map(|i| {
            let mut p: Perm = (0..n as Elem).collect();
            p[0] = 1;
            p[1] = i as Elem;
            p[i] = 0;
            p
        })
        .collect();
    let g = PermGroup::generated(n, &gens);
    let perms = g.perms.clone();
    (g, perms)
}

/// A group of automorphisms of `base`, each stored as the permutation of
/// base indices it induces.
#[derive(Clone)]
pub struct PermAutGroup {
    base: Arc<dyn Group>,
    perms: PermGroup,
}

impl std::fmt::Debug for PermAutGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermAutGroup")
            .field("base_order", &self.base.order())
            .field("order", &self.perms.order())
            .finish()
    }
}

/// Whether `p` is an automorphism of `g`, checked on all pairs
/// `(a, s)` with `s` a generator.
pub fn is_automorphism(g: &dyn Group, p: &[Elem]) -> bool {
    if p.len() != g.order() || !is_permutation(p) {
        return false;
    }
    let gens = g.generators();
    let images: Vec<Elem> = gens.iter().map(|&s| p[s as usize]).collect();
    extend_homomorphism(g, g, &gens, &images).is_ok_and(|m| m == p)
}

/// The inner automorphism `x -> k x k^-1` as a permutation.
pub fn conjugation_perm(g: &dyn Group, k: Elem) -> Perm {
    let ki = g.inv(k);
    (0..g.order() as Elem).map(|x| g.mul(g.mul(k, x), ki)).collect()
}

impl PermAutGroup {
    /// The group generated by `gens` together with Inn(base).
    pub fn from_generators(base: Arc<dyn Group>, gens: &[Perm]) -> Result<PermAutGroup, GroupError> {
        for (i, p) in gens.iter().enumerate() {
            if !is_automorphism(base.as_ref(), p) {
                return Err(GroupError::NotHomomorphism(format!(
                    "generator {i} is not an automorphism"
                )));
            }
        }
        let mut all: Vec<Perm> = base
            .generators()
            .iter()
            .map(|&k| conjugation_perm(base.as_ref(), k))
            .collect();
        all.extend_from_slice(gens);
        let perms = PermGroup::generated(base.order(), &all);
        Ok(PermAutGroup { base, perms })
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perms
    }
}

impl Group for PermAutGroup {
    fn order(&self) -> usize {
        self.perms.order()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.perms.mul(a, b)
    }

    fn inv(&self, a: Elem) -> Elem {
        self.perms.inv(a)
    }

    fn generators(&self) -> Vec<Elem> {
        self.perms.generators()
    }
}

impl AutGroup for PermAutGroup {
    fn base(&self) -> &Arc<dyn Group> {
        &self.base
    }

    fn apply(&self, phi: Elem, k: Elem) -> Elem {
        self.perms.perm(phi)[k as usize]
    }

    fn conjugation(&self, k: Elem) -> Elem {
        self.perms
            .index_of(&conjugation_perm(self.base.as_ref(), k))
            .expect("inner automorphisms are included")
    }

    fn permutation(&self, phi: Elem) -> Vec<Elem> {
        self.perms.perm(phi).to_vec()
    }

    fn find_permutation(&self, perm: &[Elem]) -> Option<Elem> {
        self.perms.index_of(perm)
    }
}

/// Upper bound on generator-image assignments tried by
/// [`automorphism_group`].
pub const AUT_SEARCH_LIMIT: u128 = 50_000_000;

/// Aut(base) by trying every assignment of generator images of matching
/// element orders.
pub fn automorphism_group(base: Arc<dyn Group>) -> Result<PermAutGroup, GroupError> {
    let g = base.as_ref();
    let n = g.order();
    let gens = g.generators();
    let orders: Vec<usize> = (0..n as Elem).map(|x| element_order(g, x)).collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            (0..n as Elem)
                .filter(|&x| orders[x as usize] == orders[s as usize])
                .collect()
        })
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > AUT_SEARCH_LIMIT {
        return Err(GroupError::SearchTooLarge(total));
    }
    let mut found: Vec<Perm> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(map) = extend_homomorphism(g, g, &gens, &images) {
            if is_permutation(&map) {
                found.push(map);
            }
        }
        for slot in (0..choice.len()).rev() {
            choice[slot] += 1;
            if choice[slot] < candidates[slot].len() {
                continue 'outer;
            }
            choice[slot] = 0;
        }
        break;
    }
    found.sort();
    let mut perms = PermGroup::from_sorted(found, &[]);
    perms.gens = super::greedy_generators(&perms);
    Ok(PermAutGroup { base, perms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{verify_group_axioms, TableGroup};
    use crate::sampling::Regime;

    #[test]
    fn symmetric_orders() {
        assert_eq!(symmetric_group(1).0.order(), 1);
        assert_eq!(symmetric_group(3).0.order(), 6);
        assert_eq!(symmetric_group(4).0.order(), 24);
        assert_eq!(alternating_group(5).0.order(), 60);
        let (s4, perms) = symmetric_group(4);
        assert_eq!(perms[0], vec![0, 1, 2, 3]);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
        verify_group_axioms(&s4, Regime::Exhaustive).unwrap();
    }

    #[test]
    fn automorphism_counts() {
        let (s3, _) = symmetric_group(3);
        assert_eq!(automorphism_group(Arc::new(s3)).unwrap().order(), 6);
        let (s4, _) = symmetric_group(4);
        assert_eq!(automorphism_group(Arc::new(s4)).unwrap().order(), 24);
        assert_eq!(automorphism_group(Arc::new(TableGroup::cyclic(8))).unwrap().order(), 4);
        let v4 = TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::cyclic(2));
        assert_eq!(automorphism_group(Arc::new(v4)).unwrap().order(), 6);
        let (a5, _) = alternating_group(5);
        assert_eq!(automorphism_group(Arc::new(a5)).unwrap().order(), 120);
    }

    #[test]
    fn inner_only_group() {
        let (s3, _) = symmetric_group(3);
        let aut = PermAutGroup::from_generators(Arc::new(s3), &[]).unwrap();
        assert_eq!(aut.order(), 6);
        for k in 0..6 {
            assert_eq!(aut.apply(aut.conjugation(k), 0), 0);
        }
        assert!(PermAutGroup::from_generators(aut.base().clone(), &[vec![1, 0, 2, 3, 4, 5]]).is_err());
    }
}
