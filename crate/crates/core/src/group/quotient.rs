use std::sync::Arc;

use thiserror::Error;

use super::{Elem, Group, GroupError, Subgroup, NONE};

/// The quotient `S/N` of a subgroup `S` of `parent` by a normal subgroup
/// `N` of `S`. Cosets are numbered by their least parent index, so the
/// coset `N` itself is 0.
#[derive(Clone)]
pub struct Quotient {
    parent: Arc<dyn Group>,
    label: Vec<Elem>,
    reps: Vec<Elem>,
    gens: Vec<Elem>,
    kernel_order: usize,
}

impl std::fmt::Debug for Quotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quotient")
            .field("order", &self.reps.len())
            .field("kernel_order", &self.kernel_order)
            .finish()
    }
}

pub fn quotient(parent: Arc<dyn Group>, sub: &Subgroup, normal: &Subgroup) -> Result<Quotient, GroupError> {
    let g: &dyn Group = parent.as_ref();
    if sub.parent_order() != g.order() || normal.parent_order() != g.order() {
        return Err(GroupError::ParentMismatch(sub.parent_order(), normal.parent_order()));
    }
    if !normal.is_subset_of(sub) {
        return Err(GroupError::NotNormal("not contained in the ambient subgroup".into()));
    }
    if let Some((x, n)) = normal.normality_witness(g, sub) {
        return Err(GroupError::NotNormal(format!(
            "conjugate of {n} by {x} leaves the subgroup"
        )));
    }
    let mut label = vec![NONE; g.order()];
    let mut reps = Vec::new();
    for &e in sub.elements() {
        if label[e as usize] != NONE {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(e);
        for &k in normal.elements() {
            label[g.mul(e, k) as usize] = c;
        }
    }
    let mut gens: Vec<Elem> = sub
        .generators()
        .iter()
        .map(|&s| label[s as usize])
        .filter(|&c| c != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    Ok(Quotient {
        parent,
        label,
        reps,
        gens,
        kernel_order: normal.order(),
    })
}

impl Quotient {
    /// Coset index of a parent element, `None` outside the ambient subgroup.
    pub fn project(&self, e: Elem) -> Option<Elem> {
        let c = *self.label.get(e as usize)?;
        (c != NONE).then_some(c)
    }

    pub fn representative(&self, c: Elem) -> Elem {
        self.reps[c as usize]
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel_order
    }

    pub fn parent(&self) -> &Arc<dyn Group> {
        &self.parent
    }
}

impl Group for Quotient {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.label[self.parent.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.label[self.parent.inv(self.reps[a as usize]) as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

/// A candidate isomorphism `Y/M -> X/N` listed as pairs `(y, x)` meaning
/// `yM -> xN`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CosetIso {
    pub pairs: Vec<(Elem, Elem)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetIsoError {
    #[error("{which} is not a normal subgroup: {source}")]
    Quotient {
        which: &'static str,
        #[source]
        source: GroupError,
    },
    #[error("element {elem} is not in {which}")]
    OutsideSubgroup { which: &'static str, elem: Elem },
    #[error("coset of {y} is sent to two different cosets (of {x1} and {x2})")]
    NotWellDefined { y: Elem, x1: Elem, x2: Elem },
    #[error("coset of {y} has no image")]
    NotTotal { y: Elem },
    #[error("not multiplicative on the cosets of {a} and {b}")]
    NotHomomorphism { a: Elem, b: Elem },
    #[error("not bijective ({domain} cosets onto {codomain}, {image} hit)")]
    NotBijective {
        domain: usize,
        codomain: usize,
        image: usize,
    },
}

/// A verified isomorphism of quotients, as a dense coset-to-coset map.
#[derive(Clone, Debug)]
pub struct ResolvedCosetIso {
    pub domain: Quotient,
    pub codomain: Quotient,
    map: Vec<Elem>,
}

impl ResolvedCosetIso {
    /// Whether `gamma(yM) = xN`. False if either element is outside its
    /// ambient subgroup.
    pub fn relates(&self, y: Elem, x: Elem) -> bool {
        match (self.domain.project(y), self.codomain.project(x)) {
            (Some(cy), Some(cx)) => self.map[cy as usize] == cx,
            _ => false,
        }
    }

    /// Coset index of `gamma(yM)` in the codomain.
    pub fn image_coset(&self, y: Elem) -> Option<Elem> {
        self.domain.project(y).map(|c| self.map[c as usize])
    }

    /// A representative of `gamma(yM)`.
    pub fn image_rep(&self, y: Elem) -> Option<Elem> {
        self.image_coset(y).map(|c| self.codomain.representative(c))
    }

    pub fn to_pairs(&self) -> CosetIso {
        let pairs = (0..self.domain.order())
            .map(|c| {
                (
                    self.domain.representative(c as Elem),
                    self.codomain.representative(self.map[c]),
                )
            })
            .collect();
        CosetIso { pairs }
    }
}

pub fn verify_coset_iso(
    parent: Arc<dyn Group>,
    y: &Subgroup,
    m: &Subgroup,
    x: &Subgroup,
    n: &Subgroup,
    iso: &CosetIso,
) -> Result<ResolvedCosetIso, CosetIsoError> {
    let domain = quotient(parent.clone(), y, m).map_err(|source| CosetIsoError::Quotient { which: "M", source })?;
    let codomain = quotient(parent, x, n).map_err(|source| CosetIsoError::Quotient { which: "N", source })?;
    let mut map = vec![NONE; domain.order()];
    for &(ye, xe) in &iso.pairs {
        let cy = domain
            .project(ye)
            .ok_or(CosetIsoError::OutsideSubgroup { which: "Y", elem: ye })?;
        let cx = codomain
            .project(xe)
            .ok_or(CosetIsoError::OutsideSubgroup { which: "X", elem: xe })?;
        let slot = &mut map[cy as usize];
        if *slot != NONE && *slot != cx {
            return Err(CosetIsoError::NotWellDefined {
                y: ye,
                x1: codomain.representative(*slot),
                x2: xe,
            });
        }
        *slot = cx;
    }
    if let Some(c) = map.iter().position(|&c| c == NONE) {
        return Err(CosetIsoError::NotTotal {
            y: domain.representative(c as Elem),
        });
    }
    for a in 0..domain.order() as Elem {
        for s in domain.generators() {
            if map[domain.mul(a, s) as usize] != codomain.mul(map[a as usize], map[s as usize]) {
                return Err(CosetIsoError::NotHomomorphism {
                    a: domain.representative(a),
                    b: domain.representative(s),
                });
            }
        }
    }
    let mut hit = vec![false; codomain.order()];
    for &c in &map {
        hit[c as usize] = true;
    }
    let image = hit.iter().filter(|&&h| h).count();
    if domain.order() != codomain.order() || image != codomain.order() {
        return Err(CosetIsoError::NotBijective {
            domain: domain.order(),
            codomain: codomain.order(),
            image,
        });
    }
    Ok(ResolvedCosetIso { domain, codomain, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm::symmetric_group;
    use crate::group::{close_subgroup, element_order};

    #[test]
    fn s4_mod_v4_has_order_six() {
        let (s4, perms) = symmetric_group(4);
        let idx = |p: [u32; 4]| perms.iter().position(|q| q[..] == p[..]).unwrap() as Elem;
        let s4: Arc<dyn Group> = Arc::new(s4);
        let whole = Subgroup::whole(s4.as_ref());
        let v4 = close_subgroup(s4.as_ref(), &[idx([1, 0, 3, 2]), idx([2, 3, 0, 1])]);
        let q = quotient(s4.clone(), &whole, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.kernel_order(), 4);
        let orders: Vec<usize> = (0..6).map(|c| element_order(&q, c)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        let c2 = close_subgroup(s4.as_ref(), &[idx([1, 0, 2, 3])]);
        assert!(matches!(quotient(s4, &whole, &c2), Err(GroupError::NotNormal(_))));
    }

    #[test]
    fn coset_iso_checks() {
        let c = crate::group::TableGroup::cyclic(12);
        let g: Arc<dyn Group> = Arc::new(c);
        let whole = Subgroup::whole(g.as_ref());
        let sub4 = close_subgroup(g.as_ref(), &[3]);
        let sub3 = close_subgroup(g.as_ref(), &[4]);
        // Z12/<3> = Z3 and Z12/<4> = Z4: no isomorphism either way
        let bad = CosetIso {
            pairs: vec![(0, 0), (1, 1), (2, 2)],
        };
        assert!(verify_coset_iso(g.clone(), &whole, &sub4, &whole, &sub3, &bad).is_err());
        let id = CosetIso {
            pairs: (0..3).map(|i| (i, i)).collect(),
        };
        let r = verify_coset_iso(g.clone(), &whole, &sub4, &whole, &sub4, &id).unwrap();
        assert!(r.relates(4, 1));
        assert!(!r.relates(4, 2));
        let inv = CosetIso {
            pairs: vec![(0, 0), (1, 2), (2, 1)],
        };
        assert!(verify_coset_iso(g.clone(), &whole, &sub4, &whole, &sub4, &inv).is_ok());
        let not_hom = CosetIso {
            pairs: vec![(0, 1), (1, 0), (2, 2)],
        };
        assert!(matches!(
            verify_coset_iso(g.clone(), &whole, &sub4, &whole, &sub4, &not_hom),
            Err(CosetIsoError::NotHomomorphism { .. })
        ));
        let clash = CosetIso {
            pairs: vec![(0, 0), (1, 1), (4, 2), (2, 2)],
        };
        assert!(matches!(
            verify_coset_iso(g.clone(), &whole, &sub4, &whole, &sub4, &clash),
            Err(CosetIsoError::NotWellDefined { .. })
        ));
        let partial = CosetIso {
            pairs: vec![(0, 0), (1, 1)],
        };
        assert!(matches!(
            verify_coset_iso(g, &whole, &sub4, &whole, &sub4, &partial),
            Err(CosetIsoError::NotTotal { .. })
        ));
    }
}
