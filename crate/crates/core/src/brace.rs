//! Skew left braces on an indexed carrier: `(B, +)` is a [`Group`] written
//! additively, `(B, ·)` is either a table or read off a regular subgroup of
//! the holomorph.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::group::{greedy_generators, verify_group_axioms, AutGroup, Elem, Group, GroupError, NONE, TABLE_LIMIT};
use crate::holomorph::{is_regular_subgroup, HolElem, HolError, HolSet, Holomorph, RegularSubgroup};
use crate::sampling::{self, Regime};

/// Exhaustive checks up to this carrier size.
pub const EXHAUSTIVE_LIMIT: usize = 200;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error(transparent)]
    NotRegular(#[from] HolError),
    #[error("multiplication is not a group: {0}")]
    MulNotGroup(GroupError),
    #[error("additive group has order {add} but multiplication table has {mul} entries")]
    SizeMismatch { add: usize, mul: usize },
    #[error("λ_{a} is not an automorphism of (B,+): {reason}")]
    LambdaNotAdditiveAutomorphism { a: Elem, reason: String },
    #[error("λ_{0} is not in the supplied automorphism group")]
    LambdaNotInAut(Elem),
    #[error("braid relation fails at ({0}, {1}, {2})")]
    BraidViolation(Elem, Elem, Elem),
    #[error("the solution is not bijective")]
    NotBijective,
}

type Regular = (Arc<dyn AutGroup>, Arc<RegularSubgroup>);

/// A skew left brace, not necessarily verified.
#[derive(Clone)]
pub struct Brace {
    add: Arc<dyn Group>,
    table: Option<Arc<Vec<Elem>>>,
    regular: Option<Regular>,
    inv: Arc<Vec<Elem>>,
}

impl std::fmt::Debug for Brace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Brace(n = {}, table: {}, regular: {})",
            self.order(),
            self.table.is_some(),
            self.regular.is_some()
        )
    }
}

impl Brace {
    /// `a·b = a + b`.
    pub fn trivial(add: Arc<dyn Group>) -> Brace {
        let n = add.order();
        let table = (0..n * n).map(|i| add.mul((i / n) as Elem, (i % n) as Elem)).collect();
        let inv = (0..n as Elem).map(|a| add.inv(a)).collect();
        Brace {
            add,
            table: Some(Arc::new(table)),
            regular: None,
            inv: Arc::new(inv),
        }
    }

    /// From a row-major multiplication table with identity 0. Group axioms
    /// of `·` are checked here; the brace law is left to [`verify_brace`].
    pub fn from_table(add: Arc<dyn Group>, table: Vec<Elem>) -> Result<Brace, BraceError> {
        let n = add.order();
        if table.len() != n * n {
            return Err(BraceError::SizeMismatch {
                add: n,
                mul: table.len(),
            });
        }
        let g = crate::group::TableGroup::from_table(n, table).map_err(BraceError::MulNotGroup)?;
        let inv = (0..n as Elem).map(|a| g.inv(a)).collect();
        Ok(Brace {
            add,
            table: Some(Arc::new(g.table().to_vec())),
            regular: None,
            inv: Arc::new(inv),
        })
    }

    /// Like [`Brace::from_table`] without any checks; elements lacking a
    /// right inverse get `NONE`.
    pub fn from_table_unchecked(add: Arc<dyn Group>, table: Vec<Elem>) -> Result<Brace, BraceError> {
        let n = add.order();
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(BraceError::SizeMismatch {
                add: n,
                mul: table.len(),
            });
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).map_or(NONE, |b| b as Elem))
            .collect();
        Ok(Brace {
            add,
            table: Some(Arc::new(table)),
            regular: None,
            inv: Arc::new(inv),
        })
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &Arc<dyn Group> {
        &self.add
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.mul(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.add.inv(a)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match (&self.table, &self.regular) {
            (Some(t), _) => t[a as usize * self.order() + b as usize],
            (None, Some((aut, h))) => self.add.mul(a, aut.apply(h.lambda(a), b)),
            (None, None) => unreachable!("brace without multiplication"),
        }
    }

    pub fn mul_inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `λ_a(b) = -a + ab`.
    pub fn lambda(&self, a: Elem, b: Elem) -> Elem {
        match &self.regular {
            Some((aut, h)) => aut.apply(h.lambda(a), b),
            None => self.add.mul(self.add.inv(a), self.mul(a, b)),
        }
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// The multiplication table, computed if necessary. Intended for
    /// `n ≤ 4096`.
    pub fn mul_table(&self) -> Vec<Elem> {
        match &self.table {
            Some(t) => t.to_vec(),
            None => {
                let n = self.order();
                (0..n * n).map(|i| self.mul((i / n) as Elem, (i % n) as Elem)).collect()
            }
        }
    }

    /// The regular subgroup this brace was read from, if any.
    pub fn regular(&self) -> Option<(&Arc<dyn AutGroup>, &Arc<RegularSubgroup>)> {
        self.regular.as_ref().map(|(a, h)| (a, h))
    }

    /// `(B, ·)` as a group.
    pub fn multiplicative(&self) -> MulGroup {
        let gens = match &self.regular {
            Some((_, h)) => h.generators().iter().map(|u| u.k).collect(),
            None => Vec::new(),
        };
        let mut g = MulGroup {
            brace: self.clone(),
            gens,
        };
        if g.gens.is_empty() && self.order() > 1 {
            g.gens = greedy_generators(&g);
        }
        g
    }

    /// Whether both braces have the same multiplication, element by element.
    pub fn same_multiplication(&self, other: &Brace) -> bool {
        let n = self.order();
        n == other.order() && (0..n as Elem).all(|a| (0..n as Elem).all(|b| self.mul(a, b) == other.mul(a, b)))
    }
}

/// `(B, ·)` of a brace.
#[derive(Clone)]
pub struct MulGroup {
    brace: Brace,
    gens: Vec<Elem>,
}

impl Group for MulGroup {
    fn order(&self) -> usize {
        self.brace.order()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.brace.mul(a, b)
    }

    fn inv(&self, a: Elem) -> Elem {
        self.brace.mul_inv(a)
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

/// The brace with `a·b = a + λ_a(b)` for `H = {(a, λ_a)}`. A table is built
/// when `n ≤ 4096`.
pub fn brace_from_regular(hol: &Holomorph, h: RegularSubgroup) -> Brace {
    let add = hol.aut().base().clone();
    let aut = hol.aut().clone();
    let inv = (0..h.order() as Elem).map(|a| hol.inv(h.element(a)).k).collect();
    let mut brace = Brace {
        add,
        table: None,
        regular: Some((aut, Arc::new(h))),
        inv: Arc::new(inv),
    };
    if brace.order() <= TABLE_LIMIT {
        brace.table = Some(Arc::new(brace.mul_table()));
    }
    brace
}

/// Checks a set of holomorph elements is regular, then reads the brace.
pub fn brace_from_elements(hol: &Holomorph, elems: &[HolElem]) -> Result<Brace, BraceError> {
    Ok(brace_from_regular(hol, is_regular_subgroup(hol, elems)?))
}

/// `H = {(a, λ_a)}` inside `Hol(B, +)` for the given automorphism group.
pub fn regular_subgroup_of(b: &Brace, hol: &Holomorph) -> Result<RegularSubgroup, BraceError> {
    if let Some((aut, h)) = b.regular() {
        if Arc::ptr_eq(aut, hol.aut()) {
            return Ok(h.as_ref().clone());
        }
    }
    let n = b.order();
    let aut = hol.aut();
    let mut elems = Vec::with_capacity(n);
    for a in 0..n as Elem {
        let perm: Vec<Elem> = (0..n as Elem).map(|x| b.lambda(a, x)).collect();
        let phi = aut.find_permutation(&perm).ok_or(BraceError::LambdaNotInAut(a))?;
        elems.push(HolElem { k: a, phi });
    }
    Ok(is_regular_subgroup(hol, &elems)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraceReport {
    pub n: usize,
    pub regime: Regime,
    pub triples_checked: u64,
    /// Why `(B, ·)` is not a group, if it is not.
    pub mul_group_violation: Option<String>,
    /// First `(a, b, c)` with `a(b+c) ≠ ab - a + ac`.
    pub violation: Option<[Elem; 3]>,
}

impl BraceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.mul_group_violation.is_none()
    }
}

/// Exhaustive up to [`EXHAUSTIVE_LIMIT`], otherwise this many samples.
pub fn default_regime(n: usize, samples: u64, seed: u64) -> Regime {
    Regime::auto(n, EXHAUSTIVE_LIMIT, samples, seed)
}

/// Group axioms for `·` first, then the brace law on triples. Failures are
/// report content.
pub fn verify_brace(b: &Brace, regime: Regime) -> BraceReport {
    let n = b.order();
    let mul_group_violation = match b.inv.iter().position(|&x| x == NONE) {
        Some(a) => Some(format!("element {a} has no inverse")),
        None if (0..n as Elem).any(|a| b.mul(0, a) != a || b.mul(a, 0) != a) => Some("0 is not the identity".into()),
        None => {
            let g = MulGroup {
                brace: b.clone(),
                gens: Vec::new(),
            };
            verify_group_axioms(&g, regime).err().map(|e| e.to_string())
        }
    };
    let violation = sampling::find_first::<3, (), _>(n, regime, |[x, y, z]| {
        let lhs = b.mul(x, b.add(y, z));
        let rhs = b.add(b.add(b.mul(x, y), b.neg(x)), b.mul(x, z));
        (lhs != rhs).then_some(())
    })
    .map(|(t, ())| t);
    BraceReport {
        n,
        regime,
        triples_checked: regime.count(n, 3),
        mul_group_violation,
        violation,
    }
}

/// λ as automorphism data: either a full table (`n ≤ 4096`) or indices
/// into an automorphism group.
#[derive(Clone)]
pub enum LambdaMap {
    Table { n: usize, table: Vec<Elem> },
    Indexed { aut: Arc<dyn AutGroup>, lam: Vec<Elem> },
}

impl LambdaMap {
    pub fn apply(&self, a: Elem, x: Elem) -> Elem {
        match self {
            LambdaMap::Table { n, table } => table[a as usize * n + x as usize],
            LambdaMap::Indexed { aut, lam } => aut.apply(lam[a as usize], x),
        }
    }

    pub fn permutation(&self, a: Elem) -> Vec<Elem> {
        match self {
            LambdaMap::Table { n, table } => table[a as usize * n..(a as usize + 1) * n].to_vec(),
            LambdaMap::Indexed { aut, lam } => aut.permutation(lam[a as usize]),
        }
    }

    /// The automorphism-group index of `λ_a`, for indexed maps.
    pub fn index(&self, a: Elem) -> Option<Elem> {
        match self {
            LambdaMap::Indexed { lam, .. } => Some(lam[a as usize]),
            LambdaMap::Table { .. } => None,
        }
    }
}

/// Reads λ and checks that every `λ_a` fixes 0, is a bijection preserving
/// `+`, and that `λ_{ab} = λ_a λ_b`. Pairs are visited per `regime`.
pub fn lambda_map(b: &Brace, regime: Regime) -> Result<LambdaMap, BraceError> {
    let n = b.order();
    let map = match b.regular() {
        Some((aut, h)) => LambdaMap::Indexed {
            aut: aut.clone(),
            lam: h.lambdas().to_vec(),
        },
        None => {
            let table: Vec<Elem> = (0..n * n).map(|i| b.lambda((i / n) as Elem, (i % n) as Elem)).collect();
            LambdaMap::Table { n, table }
        }
    };
    let bad = |a: Elem, reason: String| BraceError::LambdaNotAdditiveAutomorphism { a, reason };
    if let LambdaMap::Table { table, .. } = &map {
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            if row[0] != 0 {
                return Err(bad(a as Elem, "does not fix 0".into()));
            }
            let mut seen = FixedBitSet::with_capacity(n);
            if row.iter().any(|&x| seen.put(x as usize)) {
                return Err(bad(a as Elem, "not injective".into()));
            }
        }
    }
    if let Some(([a, x, y], ())) = sampling::find_first::<3, (), _>(n, regime, |[a, x, y]| {
        (map.apply(a, b.add(x, y)) != b.add(map.apply(a, x), map.apply(a, y))).then_some(())
    }) {
        return Err(bad(a, format!("λ(x + y) ≠ λ(x) + λ(y) at x = {x}, y = {y}")));
    }
    if let Some(([a, c, x], ())) = sampling::find_first::<3, (), _>(n, regime, |[a, c, x]| {
        (map.apply(b.mul(a, c), x) != map.apply(a, map.apply(c, x))).then_some(())
    }) {
        return Err(bad(a, format!("λ_(a·{c}) ≠ λ_a λ_{c} at {x}")));
    }
    Ok(map)
}

/// The small trifactorised group `(S, K, H, E)` of a brace.
#[derive(Clone, Debug)]
pub struct SmallTrifactorised {
    pub s: HolSet,
    pub k: HolSet,
    pub h: HolSet,
    pub e: HolSet,
}

pub fn small_trifactorised(b: &Brace, hol: &Holomorph) -> Result<SmallTrifactorised, BraceError> {
    let h = regular_subgroup_of(b, hol)?;
    let kset = HolSet::from_elements(hol.base_copy());
    let hset = HolSet::from_elements(h.elements());
    let eset = HolSet::from_elements(h.elements().map(|u| HolElem { k: 0, phi: u.phi }));
    let mut gens: Vec<HolElem> = hol.base().generators().iter().map(|&k| HolElem { k, phi: 0 }).collect();
    gens.extend_from_slice(h.generators());
    let limit = b.order() * hol.aut().order();
    let s = HolSet::closure(hol, &gens, limit)?;
    crate::holomorph::trifactorisation_check(hol, &s, &kset, &hset, &eset)?;
    Ok(SmallTrifactorised {
        s,
        k: kset,
        h: hset,
        e: eset,
    })
}

/// `r(a, b) = (λ_a(b), λ_a(b)⁻¹ · a · b)`.
pub fn ybe_apply(b: &Brace, x: Elem, y: Elem) -> (Elem, Elem) {
    let u = b.lambda(x, y);
    (u, b.mul(b.mul(b.mul_inv(u), x), y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeReport {
    pub n: usize,
    pub regime: Regime,
    pub triples_checked: u64,
    /// `None` when the carrier is too large for the n² scan.
    pub bijective: Option<bool>,
}

/// Checks the braid relation on triples per `regime` and, for
/// `n ≤ 4096`, bijectivity of `r` on all pairs.
pub fn ybe_map(b: &Brace, regime: Regime) -> Result<YbeReport, BraceError> {
    let n = b.order();
    let bijective = (n <= TABLE_LIMIT).then(|| {
        let mut seen = FixedBitSet::with_capacity(n * n);
        (0..n as Elem).all(|x| {
            (0..n as Elem).all(|y| {
                let (u, v) = ybe_apply(b, x, y);
                !seen.put(u as usize * n + v as usize)
            })
        })
    });
    if bijective == Some(false) {
        return Err(BraceError::NotBijective);
    }
    let hit = sampling::find_first::<3, (), _>(n, regime, |[x, y, z]| {
        // left: (r×id)(id×r)(r×id)
        let (a1, b1) = ybe_apply(b, x, y);
        let (b2, c2) = ybe_apply(b, b1, z);
        let (a3, b3) = ybe_apply(b, a1, b2);
        let left = (a3, b3, c2);
        // right: (id×r)(r×id)(id×r)
        let (p1, q1) = ybe_apply(b, y, z);
        let (o2, p2) = ybe_apply(b, x, p1);
        let (p3, q3) = ybe_apply(b, p2, q1);
        let right = (o2, p3, q3);
        (left != right).then_some(())
    });
    if let Some(([x, y, z], ())) = hit {
        return Err(BraceError::BraidViolation(x, y, z));
    }
    Ok(YbeReport {
        n,
        regime,
        triples_checked: regime.count(n, 3),
        bijective,
    })
}
