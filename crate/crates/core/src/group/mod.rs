//! Finite groups on an indexed element universe.
//!
//! Every group in this crate numbers its elements `0..order()` with the
//! identity at index 0. Automorphism groups additionally act on a base group
//! through [`AutGroup::apply`].

mod hom;
pub mod perm;
mod quotient;
mod subgroup;

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::sampling::{self, Regime};

pub use hom::{extend_homomorphism, iso_check, iso_onto};
pub use quotient::{quotient, verify_coset_iso, CosetIso, CosetIsoError, Quotient, ResolvedCosetIso};
pub use subgroup::{
    centre, close_subgroup, inner_automorphism_group, product_set, InnerAutomorphisms, ProductSet, Subgroup,
};

pub type Elem = u32;

/// Sentinel for "no element" in dense lookup tables.
pub const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("subgroups live in groups of different orders ({0} vs {1})")]
    ParentMismatch(usize, usize),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not bijective: {0}")]
    NotBijective(String),
    #[error("generator images do not generate the source group")]
    NotGenerating,
    #[error("group has nontrivial centre of order {0}")]
    CentreNotTrivial(usize),
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("product formula |AB||A∩B| = |A||B| failed ({0})")]
    ProductFormula(String),
    #[error("automorphism search too large ({0} candidate assignments)")]
    SearchTooLarge(u128),
    #[error("invalid table: {0}")]
    InvalidTable(String),
}

pub trait Group: Send + Sync {
    fn order(&self) -> usize;

    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn inv(&self, a: Elem) -> Elem;

    fn identity(&self) -> Elem {
        0
    }

    /// A generating set. The default picks elements greedily in index order.
    fn generators(&self) -> Vec<Elem> {
        greedy_generators(self)
    }
}

/// A finite group of automorphisms of `base()`, elements indexed like any
/// other group. Multiplication is composition: `apply(mul(s, t), k) ==
/// apply(s, apply(t, k))`.
pub trait AutGroup: Group {
    fn base(&self) -> &Arc<dyn Group>;

    fn apply(&self, phi: Elem, k: Elem) -> Elem;

    /// The inner automorphism `x -> k x k^-1`.
    fn conjugation(&self, k: Elem) -> Elem;

    fn permutation(&self, phi: Elem) -> Vec<Elem> {
        (0..self.base().order() as Elem).map(|k| self.apply(phi, k)).collect()
    }

    /// Index of the automorphism acting as `perm`, if this group contains it.
    fn find_permutation(&self, perm: &[Elem]) -> Option<Elem> {
        let base = self.base();
        if perm.len() != base.order() {
            return None;
        }
        let gens = base.generators();
        (0..self.order() as Elem)
            .find(|&phi| gens.iter().all(|&g| self.apply(phi, g) == perm[g as usize]))
            .filter(|&phi| self.permutation(phi) == perm)
    }
}

pub fn greedy_generators<G: Group + ?Sized>(g: &G) -> Vec<Elem> {
    let n = g.order();
    let mut inside = FixedBitSet::with_capacity(n);
    inside.insert(0);
    let mut elems: Vec<Elem> = vec![0];
    let mut gens = Vec::new();
    for cand in 0..n as Elem {
        if inside.contains(cand as usize) {
            continue;
        }
        gens.push(cand);
        let mut queue = elems.clone();
        while let Some(e) = queue.pop() {
            for &s in &gens {
                let f = g.mul(e, s);
                if !inside.put(f as usize) {
                    elems.push(f);
                    queue.push(f);
                }
            }
        }
        if elems.len() == n {
            break;
        }
    }
    gens
}

pub fn pow<G: Group + ?Sized>(g: &G, a: Elem, k: i64) -> Elem {
    let base = if k < 0 { g.inv(a) } else { a };
    let mut e = k.unsigned_abs();
    let (mut r, mut b) = (g.identity(), base);
    while e > 0 {
        if e & 1 == 1 {
            r = g.mul(r, b);
        }
        b = g.mul(b, b);
        e >>= 1;
    }
    r
}

pub fn element_order<G: Group + ?Sized>(g: &G, a: Elem) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != g.identity() {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// Checks identity, inverse and associativity laws: exhaustively over all
/// triples under `Regime::Exhaustive`, otherwise on sampled triples.
pub fn verify_group_axioms(g: &dyn Group, regime: Regime) -> Result<(), GroupError> {
    let n = g.order();
    let e = g.identity();
    let unit = sampling::find_first::<1, String, _>(n, Regime::Exhaustive, |[a]| {
        if g.mul(a, e) != a || g.mul(e, a) != a {
            Some(format!("identity fails at {a}"))
        } else if g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e {
            Some(format!("inverse fails at {a}"))
        } else {
            None
        }
    });
    if let Some((_, msg)) = unit {
        return Err(GroupError::AxiomViolation(msg));
    }
    let assoc = sampling::find_first::<3, (), _>(n, regime, |[a, b, c]| {
        (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))).then_some(())
    });
    if let Some(([a, b, c], ())) = assoc {
        return Err(GroupError::AxiomViolation(format!(
            "associativity fails at ({a}, {b}, {c})"
        )));
    }
    Ok(())
}

/// Above this order groups are not tabulated.
pub const TABLE_LIMIT: usize = 4096;

/// A group given by its full Cayley table.
#[derive(Clone, Debug)]
pub struct TableGroup {
    n: usize,
    table: Vec<Elem>,
    inv: Vec<Elem>,
    gens: Vec<Elem>,
}

impl TableGroup {
    /// Validates a row-major Cayley table with identity 0.
    pub fn from_table(n: usize, table: Vec<Elem>) -> Result<TableGroup, GroupError> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, got {}",
                n * n,
                table.len()
            )));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let mut inv = vec![NONE; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as Elem;
                    break;
                }
            }
        }
        if let Some(a) = inv.iter().position(|&x| x == NONE) {
            return Err(GroupError::AxiomViolation(format!("element {a} has no right inverse")));
        }
        let mut g = TableGroup {
            n,
            table,
            inv,
            gens: Vec::new(),
        };
        verify_group_axioms(&g, Regime::auto(n, 200, 100_000, 0))?;
        g.gens = greedy_generators(&g);
        Ok(g)
    }

    /// Tabulates a trusted group.
    pub fn materialize(g: &dyn Group) -> TableGroup {
        let n = g.order();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = g.mul(a as Elem, b as Elem);
            }
        }
        let inv = (0..n as Elem).map(|a| g.inv(a)).collect();
        let mut t = TableGroup {
            n,
            table,
            inv,
            gens: Vec::new(),
        };
        t.gens = g.generators();
        t
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Cyclic group of order n, element k standing for the k-th power.
    pub fn cyclic(n: usize) -> TableGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as Elem).collect();
        TableGroup::from_table(n, table).expect("cyclic table is a group")
    }

    /// Direct product, element (a, b) at index a * |h| + b.
    pub fn direct_product(g: &dyn Group, h: &dyn Group) -> TableGroup {
        let (m, k) = (g.order(), h.order());
        let n = m * k;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = g.mul((x / k) as Elem, (y / k) as Elem) as usize;
                let b = h.mul((x % k) as Elem, (y % k) as Elem) as usize;
                table[x * n + y] = (a * k + b) as Elem;
            }
        }
        TableGroup::from_table(n, table).expect("direct product of groups is a group")
    }
}

impl Group for TableGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let c6 = TableGroup::cyclic(6);
        assert_eq!(element_order(&c6, 1), 6);
        assert_eq!(element_order(&c6, 2), 3);
        assert_eq!(pow(&c6, 1, -1), 5);
        assert_eq!(c6.generators(), vec![1]);
    }

    #[test]
    fn non_associative_table_rejected() {
        // Z/3 with two products swapped keeps a Latin square but breaks associativity
        let mut table = TableGroup::cyclic(3).table().to_vec();
        table.swap(4, 5);
        table.swap(7, 8);
        assert!(TableGroup::from_table(3, table).is_err());
    }

    #[test]
    fn greedy_generators_generate() {
        let g = TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::cyclic(4));
        let gens = g.generators();
        assert_eq!(close_subgroup(&g, &gens).order(), 8);
    }
}
