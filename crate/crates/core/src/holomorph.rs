//! Hol(K) = K ⋊ Aut(K) without enumerating it: elements are pairs of a K
//! index and an index into a supplied automorphism group.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{AutGroup, Elem, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolError {
    #[error("element ({k}, {phi}) does not belong to this holomorph")]
    GroupMismatch { k: Elem, phi: Elem },
    #[error("not a regular subgroup: {0}")]
    NotRegular(String),
    #[error("closure exceeds {0} elements")]
    TooLarge(usize),
    #[error("trifactorisation fails: {0}")]
    Trifactorisation(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolElem {
    pub k: Elem,
    pub phi: Elem,
}

impl HolElem {
    pub const IDENTITY: HolElem = HolElem { k: 0, phi: 0 };
}

#[derive(Clone)]
pub struct Holomorph {
    aut: Arc<dyn AutGroup>,
}

impl std::fmt::Debug for Holomorph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hol(order {}, |Aut| = {})", self.base().order(), self.aut.order())
    }
}

impl Holomorph {
    pub fn new(aut: Arc<dyn AutGroup>) -> Holomorph {
        Holomorph { aut }
    }

    pub fn aut(&self) -> &Arc<dyn AutGroup> {
        &self.aut
    }

    pub fn base(&self) -> &dyn Group {
        self.aut.base().as_ref()
    }

    pub fn element(&self, k: Elem, phi: Elem) -> Result<HolElem, HolError> {
        if (k as usize) < self.base().order() && (phi as usize) < self.aut.order() {
            Ok(HolElem { k, phi })
        } else {
            Err(HolError::GroupMismatch { k, phi })
        }
    }

    /// `(a, α)(b, β) = (a·α(b), αβ)`.
    pub fn mul(&self, u: HolElem, v: HolElem) -> HolElem {
        HolElem {
            k: self.base().mul(u.k, self.aut.apply(u.phi, v.k)),
            phi: self.aut.mul(u.phi, v.phi),
        }
    }

    /// `(a, α)⁻¹ = (α⁻¹(a⁻¹), α⁻¹)`.
    pub fn inv(&self, u: HolElem) -> HolElem {
        let pi = self.aut.inv(u.phi);
        HolElem {
            k: self.aut.apply(pi, self.base().inv(u.k)),
            phi: pi,
        }
    }

    pub fn checked_mul(&self, u: HolElem, v: HolElem) -> Result<HolElem, HolError> {
        self.element(u.k, u.phi)?;
        self.element(v.k, v.phi)?;
        Ok(self.mul(u, v))
    }

    /// The copy `{(k, id)}` of K.
    pub fn base_copy(&self) -> Vec<HolElem> {
        (0..self.base().order() as Elem)
            .map(|k| HolElem {
                k,
                phi: self.aut.identity(),
            })
            .collect()
    }
}

/// A regular subgroup `H = {(k, λ_k)}` stored by its second components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubgroup {
    lam: Vec<Elem>,
    gens: Vec<HolElem>,
}

impl RegularSubgroup {
    pub fn order(&self) -> usize {
        self.lam.len()
    }

    /// The automorphism `λ_k` of the unique element over `k`.
    pub fn lambda(&self, k: Elem) -> Elem {
        self.lam[k as usize]
    }

    pub fn lambdas(&self) -> &[Elem] {
        &self.lam
    }

    pub fn element(&self, k: Elem) -> HolElem {
        HolElem {
            k,
            phi: self.lam[k as usize],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = HolElem> + '_ {
        self.lam
            .iter()
            .enumerate()
            .map(|(k, &phi)| HolElem { k: k as Elem, phi })
    }

    pub fn generators(&self) -> &[HolElem] {
        &self.gens
    }

    pub fn contains(&self, u: HolElem) -> bool {
        self.lam.get(u.k as usize) == Some(&u.phi)
    }

    /// Sorted element list, the canonical census key.
    pub fn sorted_elements(&self) -> Vec<HolElem> {
        self.elements().collect()
    }
}

/// Decides whether `elems` is a regular subgroup of `hol`: order |K|,
/// bijective first projection, identity present, and equal to the closure
/// of generators picked from it.
pub fn is_regular_subgroup(hol: &Holomorph, elems: &[HolElem]) -> Result<RegularSubgroup, HolError> {
    let n = hol.base().order();
    if elems.len() != n {
        return Err(HolError::NotRegular(format!("{} elements for |K| = {n}", elems.len())));
    }
    let mut lam = vec![crate::group::NONE; n];
    for &u in elems {
        hol.element(u.k, u.phi)?;
        if lam[u.k as usize] != crate::group::NONE {
            return Err(HolError::NotRegular(format!("first projection repeats {}", u.k)));
        }
        lam[u.k as usize] = u.phi;
    }
    if lam[0] != hol.aut.identity() {
        return Err(HolError::NotRegular("identity missing".into()));
    }
    let h = RegularSubgroup { lam, gens: Vec::new() };
    let gens = generate_within(hol, &h)?;
    Ok(RegularSubgroup { gens, ..h })
}

/// Greedy generators of the candidate set, failing as soon as a product
/// leaves it.
fn generate_within(hol: &Holomorph, h: &RegularSubgroup) -> Result<Vec<HolElem>, HolError> {
    let n = h.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![HolElem::IDENTITY];
    let mut gens = Vec::new();
    for k in 0..n as Elem {
        if inside[k as usize] {
            continue;
        }
        gens.push(h.element(k));
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for &g in &gens {
                let v = hol.mul(u, g);
                if !h.contains(v) {
                    return Err(HolError::NotRegular(format!(
                        "({}, {})·({}, {}) leaves the set",
                        u.k, u.phi, g.k, g.phi
                    )));
                }
                if !std::mem::replace(&mut inside[v.k as usize], true) {
                    members.push(v);
                }
            }
        }
        if members.len() == n {
            break;
        }
    }
    Ok(gens)
}

/// A finite set of holomorph elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HolSet {
    set: HashSet<HolElem>,
}

impl HolSet {
    pub fn from_elements(elems: impl IntoIterator<Item = HolElem>) -> HolSet {
        HolSet {
            set: elems.into_iter().collect(),
        }
    }

    /// Closure of `gens` under multiplication, aborting past `limit`.
    pub fn closure(hol: &Holomorph, gens: &[HolElem], limit: usize) -> Result<HolSet, HolError> {
        let mut set = HashSet::new();
        set.insert(HolElem::IDENTITY);
        let mut queue = vec![HolElem::IDENTITY];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &g in gens {
                let v = hol.mul(u, g);
                if set.insert(v) {
                    if set.len() > limit {
                        return Err(HolError::TooLarge(limit));
                    }
                    queue.push(v);
                }
            }
        }
        Ok(HolSet { set })
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, u: &HolElem) -> bool {
        self.set.contains(u)
    }

    pub fn is_subset(&self, other: &HolSet) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn intersection_len(&self, other: &HolSet) -> usize {
        self.set.intersection(&other.set).count()
    }

    pub fn sorted(&self) -> Vec<HolElem> {
        let mut v: Vec<HolElem> = self.set.iter().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = &HolElem> {
        self.set.iter()
    }
}

/// Above this many products, `AB = S` is decided by `|A||B| = |S||A∩B|`
/// with `A, B ⊆ S`, which is exact for subgroups.
const PRODUCT_LIMIT: usize = 1 << 22;

fn product_equals(hol: &Holomorph, a: &HolSet, b: &HolSet, s: &HolSet, name: &str) -> Result<(), HolError> {
    if !a.is_subset(s) || !b.is_subset(s) {
        return Err(HolError::Trifactorisation(format!(
            "a factor of {name} is not inside S"
        )));
    }
    let meet = a.intersection_len(b);
    if a.len() * b.len() != s.len() * meet {
        return Err(HolError::Trifactorisation(format!(
            "{name}: |A||B|/|A∩B| = {}·{}/{} but |S| = {}",
            a.len(),
            b.len(),
            meet,
            s.len()
        )));
    }
    if a.len() * b.len() <= PRODUCT_LIMIT {
        let av = a.sorted();
        let bv = b.sorted();
        let prod: HashSet<HolElem> = av
            .par_iter()
            .flat_map_iter(|&x| bv.iter().map(move |&y| hol.mul(x, y)))
            .collect();
        if prod != s.set {
            return Err(HolError::Trifactorisation(format!("{name} ≠ S as sets")));
        }
    }
    Ok(())
}

/// `S = KH = KE = HE`, `K∩E = H∩E = 1`, and `Cent_E(K) = 1`.
pub fn trifactorisation_check(hol: &Holomorph, s: &HolSet, k: &HolSet, h: &HolSet, e: &HolSet) -> Result<(), HolError> {
    product_equals(hol, k, h, s, "KH")?;
    product_equals(hol, k, e, s, "KE")?;
    product_equals(hol, h, e, s, "HE")?;
    if k.intersection_len(e) != 1 {
        return Err(HolError::Trifactorisation(format!("|K∩E| = {}", k.intersection_len(e))));
    }
    if h.intersection_len(e) != 1 {
        return Err(HolError::Trifactorisation(format!("|H∩E| = {}", h.intersection_len(e))));
    }
    let kgens: Vec<HolElem> = hol
        .base()
        .generators()
        .into_iter()
        .map(|g| HolElem {
            k: g,
            phi: hol.aut.identity(),
        })
        .collect();
    let central = e
        .iter()
        .filter(|&&x| kgens.iter().all(|&g| hol.mul(x, g) == hol.mul(g, x)))
        .count();
    if central != 1 {
        return Err(HolError::Trifactorisation(format!("|Cent_E(K)| = {central}")));
    }
    Ok(())
}
