//! Brute-force census of regular subgroups of Hol(K) for small K, and
//! cross-validation of both directions of the subdirect construction
//! against it.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::brace::{brace_from_regular, small_trifactorised, verify_brace, ybe_map, Brace};
use crate::group::{
    extend_homomorphism, inner_automorphism_group, AutGroup, Elem, Group, GroupError, InnerAutomorphisms, Subgroup,
    NONE,
};
use crate::holomorph::{HolElem, Holomorph, RegularSubgroup};
use crate::io::{GroupContext, GroupSpec, IoError};
use crate::sampling::Regime;
use crate::theorem_a::{check_conditions, construct_brace, corollary_pair, extract_with_inner, TheoremError};

pub const DEFAULT_BOUND: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("|K| = {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("unknown group {0:?} (known: S3, PSL2(2), S4, A5)")]
    UnknownGroup(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("entry {entry} fails at {stage}: {detail}")]
    ValidationFailure {
        entry: usize,
        stage: String,
        detail: String,
    },
}

pub const ROSTER: [&str; 4] = ["S3", "PSL2(2)", "S4", "A5"];

/// A group from the roster with its full automorphism group.
pub fn roster_context(name: &str) -> Result<GroupContext, OracleError> {
    let unknown = || OracleError::UnknownGroup(name.to_string());
    if !ROSTER.contains(&name) {
        return Err(unknown());
    }
    let spec = GroupSpec::parse_name(name).ok_or_else(unknown)?;
    spec.build().map_err(|e| match e {
        IoError::Group(g) => OracleError::Group(g),
        _ => unknown(),
    })
}

pub fn roster_group(name: &str) -> Result<Arc<dyn AutGroup>, OracleError> {
    Ok(roster_context(name)?.aut)
}

/// Every regular subgroup of Hol(K), sorted by element list.
#[derive(Clone, Debug)]
pub struct BraceCensus {
    pub name: String,
    pub k_order: usize,
    pub aut_order: usize,
    pub entries: Vec<RegularSubgroup>,
}

/// Depth-first search: repeatedly take the least uncovered `k`, try every
/// `λ_k`, close, and prune when the closure puts two automorphisms over
/// one point.
pub fn enumerate_regular_subgroups(
    name: &str,
    aut: Arc<dyn AutGroup>,
    bound: usize,
) -> Result<BraceCensus, OracleError> {
    let hol = Holomorph::new(aut.clone());
    let n = hol.base().order();
    if n > bound {
        return Err(OracleError::BoundExceeded { order: n, bound });
    }
    let phis = aut.order() as Elem;
    let start = vec![NONE; n];
    let mut root = start.clone();
    root[0] = aut.identity();
    let mut entries: Vec<Vec<Elem>> = if n == 1 {
        vec![root]
    } else {
        (0..phis)
            .into_par_iter()
            .flat_map_iter(|phi| {
                let mut found = Vec::new();
                let g = HolElem { k: 1, phi };
                if let Some(lam) = close_with(&hol, &[g]) {
                    search(&hol, vec![g], lam, &mut found);
                }
                found
            })
            .collect()
    };
    entries.sort();
    let entries = entries
        .into_iter()
        .map(|lam| {
            let elems: Vec<HolElem> = lam
                .iter()
                .enumerate()
                .map(|(k, &phi)| HolElem { k: k as Elem, phi })
                .collect();
            crate::holomorph::is_regular_subgroup(&hol, &elems).expect("search yields regular subgroups")
        })
        .collect();
    Ok(BraceCensus {
        name: name.to_string(),
        k_order: n,
        aut_order: aut.order(),
        entries,
    })
}

fn search(hol: &Holomorph, gens: Vec<HolElem>, lam: Vec<Elem>, found: &mut Vec<Vec<Elem>>) {
    let Some(k) = lam.iter().position(|&p| p == NONE) else {
        found.push(lam);
        return;
    };
    for phi in 0..hol.aut().order() as Elem {
        let mut next = gens.clone();
        next.push(HolElem { k: k as Elem, phi });
        if let Some(l) = close_with(hol, &next) {
            search(hol, next, l, found);
        }
    }
}

/// Closure of `gens` as a λ-array, or `None` on a projection collision.
fn close_with(hol: &Holomorph, gens: &[HolElem]) -> Option<Vec<Elem>> {
    let n = hol.base().order();
    let mut lam = vec![NONE; n];
    lam[0] = hol.aut().identity();
    let mut queue = vec![HolElem::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &g in gens {
            let v = hol.mul(u, g);
            match lam[v.k as usize] {
                NONE => {
                    lam[v.k as usize] = v.phi;
                    queue.push(v);
                }
                p if p != v.phi => return None,
                _ => {}
            }
        }
    }
    Some(lam)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub entry: usize,
    pub brace_axioms: bool,
    pub braid_relation: bool,
    pub ybe_bijective: bool,
    pub trifactorised: bool,
    pub s_order: usize,
    pub x: usize,
    pub y: usize,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub v: usize,
    pub conditions: bool,
    pub reconstructs_h: bool,
    pub mul_groups_isomorphic: bool,
    pub round_trip: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub x_index: usize,
    pub y_index: usize,
    pub x: usize,
    pub y: usize,
    pub conditions: bool,
    pub constructed: bool,
    pub subdirect: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub entry: usize,
    pub stage: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub group: String,
    pub k_order: usize,
    pub aut_order: usize,
    pub census_size: usize,
    pub entries: Vec<EntryReport>,
    pub distinct_x: usize,
    pub distinct_y: usize,
    /// Disjoint pooled pairs (X, Y) failing XY = X Inn = Y Inn, skipped.
    pub disjoint_pairs_without_factorisation: usize,
    pub corollary: Vec<CorollaryReport>,
    pub failures: Vec<Failure>,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<CrossReport, OracleError> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => Err(OracleError::ValidationFailure {
                entry: f.entry,
                stage: f.stage.clone(),
                detail: f.detail.clone(),
            }),
        }
    }
}

/// Pairs `c -> (α(c), π(c))` into W, then through `hw_iso⁻¹` into the
/// reconstructed multiplicative group; checks the composite is an
/// isomorphism.
fn mul_groups_isomorphic(
    original: &Brace,
    alpha_pi: &[(Elem, Elem)],
    construction: &crate::theorem_a::Construction,
) -> Result<(), String> {
    let w = &construction.w;
    let mut hw_inv = vec![NONE; w.order()];
    for (b, &wi) in construction.hw_iso.iter().enumerate() {
        hw_inv[wi as usize] = b as Elem;
    }
    let map: Vec<Elem> = alpha_pi
        .iter()
        .map(|&(x, y)| w.index_of(x, y).map(|wi| hw_inv[wi as usize]).ok_or("(α, π) leaves W"))
        .collect::<Result<_, _>>()?;
    let c = original.multiplicative();
    let c2 = construction.brace.multiplicative();
    let gens = c.generators();
    let images: Vec<Elem> = gens.iter().map(|&g| map[g as usize]).collect();
    let ext = crate::group::iso_check(&c, &c2, &gens, &images).map_err(|e| e.to_string())?;
    if ext != map {
        return Err("composite is not the pointwise map".into());
    }
    Ok(())
}

fn validate_entry(
    entry: usize,
    h: &RegularSubgroup,
    hol: &Holomorph,
    inner: &Arc<InnerAutomorphisms>,
) -> Result<(EntryReport, Subgroup, Subgroup), Failure> {
    let fail = |stage: &str, detail: String| Failure {
        entry,
        stage: stage.into(),
        detail,
    };
    let aut = hol.aut();
    let n = h.order();
    let brace = brace_from_regular(hol, h.clone());
    let mut r = EntryReport {
        entry,
        ..Default::default()
    };

    let br = verify_brace(&brace, Regime::Exhaustive);
    r.brace_axioms = br.passed();
    if !r.brace_axioms {
        return Err(fail("brace axioms", format!("{br:?}")));
    }
    let ybe = ybe_map(&brace, Regime::Exhaustive).map_err(|e| fail("yang-baxter", e.to_string()))?;
    r.braid_relation = true;
    r.ybe_bijective = ybe.bijective == Some(true);
    let st = small_trifactorised(&brace, hol).map_err(|e| fail("trifactorisation", e.to_string()))?;
    r.trifactorised = true;
    r.s_order = st.s.len();

    let ex = extract_with_inner(&brace, aut.clone(), inner.clone()).map_err(|e| fail("extraction", e.to_string()))?;
    let d = &ex.datum;
    r.x = d.x.order();
    r.y = d.y.order();
    r.n = d.n.order();
    r.m = d.m.order();
    r.t = ex.t.order();
    r.v = ex.v.order();
    r.conditions = ex.report.passed();
    if !r.conditions {
        return Err(fail("conditions", ex.report.summary()));
    }
    if r.x * r.m != n || r.y * r.n != n {
        return Err(fail(
            "orders",
            format!("|X||M| = {}, |Y||N| = {}", r.x * r.m, r.y * r.n),
        ));
    }

    let cons = construct_brace(d).map_err(|e| fail("construction", e.to_string()))?;
    r.reconstructs_h = cons.h.lambdas() == h.lambdas();
    if !r.reconstructs_h {
        return Err(fail("construction", "reconstructed regular subgroup differs".into()));
    }
    let a = aut.as_ref();
    let alpha_pi: Vec<(Elem, Elem)> = h.elements().map(|u| (a.mul(inner.zeta(u.k), u.phi), u.phi)).collect();
    mul_groups_isomorphic(&brace, &alpha_pi, &cons).map_err(|e| fail("isomorphism", e))?;
    r.mul_groups_isomorphic = true;
    let back =
        extract_with_inner(&cons.brace, aut.clone(), inner.clone()).map_err(|e| fail("round trip", e.to_string()))?;
    r.round_trip = back.datum.x == d.x && back.datum.y == d.y;
    if !r.round_trip {
        return Err(fail("round trip", "X or Y changed".into()));
    }
    Ok((r, d.x.clone(), d.y.clone()))
}

fn validate_corollary(
    xi: usize,
    yi: usize,
    x: &Subgroup,
    y: &Subgroup,
    aut: &Arc<dyn AutGroup>,
    inner: &Arc<InnerAutomorphisms>,
) -> Option<Result<CorollaryReport, Failure>> {
    let entry = usize::MAX;
    let fail = |stage: &str, detail: String| Failure {
        entry,
        stage: format!("corollary X{xi} Y{yi}: {stage}"),
        detail,
    };
    let d = match corollary_pair(aut.clone(), inner.clone(), x, y) {
        Ok(d) => d,
        Err(TheoremError::NotDisjoint(_)) | Err(TheoremError::FactorisationFails(_)) => return None,
        Err(e) => return Some(Err(fail("datum", e.to_string()))),
    };
    let mut r = CorollaryReport {
        x_index: xi,
        y_index: yi,
        x: x.order(),
        y: y.order(),
        ..Default::default()
    };
    let mut run = || -> Result<CorollaryReport, Failure> {
        let rep = check_conditions(&d).map_err(|e| fail("conditions", e.to_string()))?;
        r.conditions = rep.passed();
        if !r.conditions {
            return Err(fail("conditions", rep.summary()));
        }
        let cons = construct_brace(&d).map_err(|e| fail("construction", e.to_string()))?;
        let br = verify_brace(&cons.brace, Regime::Exhaustive);
        if !br.passed() {
            return Err(fail("brace axioms", format!("{br:?}")));
        }
        r.constructed = true;
        r.subdirect = cons.w.projections_surjective(x, y);
        if !r.subdirect {
            return Err(fail("subdirect", "a projection of W is not onto".into()));
        }
        Ok(r.clone())
    };
    Some(run())
}

/// Both directions for every census entry, then the disjoint-pair
/// construction over all X and Y seen in the extractions.
pub fn cross_validate(census: &BraceCensus, aut: Arc<dyn AutGroup>) -> CrossReport {
    let hol = Holomorph::new(aut.clone());
    let inner = Arc::new(inner_automorphism_group(aut.as_ref()));
    let mut report = CrossReport {
        group: census.name.clone(),
        k_order: census.k_order,
        aut_order: census.aut_order,
        census_size: census.entries.len(),
        ..Default::default()
    };
    if let Err(e) = inner.require_trivial_centre() {
        report.failures.push(Failure {
            entry: 0,
            stage: "precondition".into(),
            detail: e.to_string(),
        });
        return report;
    }
    let results: Vec<_> = census
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, h)| validate_entry(i, h, &hol, &inner))
        .collect();
    let mut xs: Vec<Subgroup> = Vec::new();
    let mut ys: Vec<Subgroup> = Vec::new();
    for res in results {
        match res {
            Ok((r, x, y)) => {
                report.entries.push(r);
                if !xs.contains(&x) {
                    xs.push(x);
                }
                if !ys.contains(&y) {
                    ys.push(y);
                }
            }
            Err(f) => report.failures.push(f),
        }
    }
    xs.sort_by(|a, b| a.elements().cmp(b.elements()));
    ys.sort_by(|a, b| a.elements().cmp(b.elements()));
    report.distinct_x = xs.len();
    report.distinct_y = ys.len();
    let a = aut.as_ref();
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| xs[i].intersection(a, &ys[j]).map(|s| s.is_trivial()).unwrap_or(false))
        .collect();
    let outcomes: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| validate_corollary(i, j, &xs[i], &ys[j], &aut, &inner))
        .collect();
    for o in outcomes {
        match o {
            None => report.disjoint_pairs_without_factorisation += 1,
            Some(Ok(r)) => report.corollary.push(r),
            Some(Err(f)) => report.failures.push(f),
        }
    }
    report
}

/// Whether `λ` of every entry is a homomorphism into Aut(K), checked via
/// generator extension; used as a light self-check of the census.
pub fn census_lambdas_are_homomorphic(census: &BraceCensus, aut: &Arc<dyn AutGroup>) -> bool {
    let hol = Holomorph::new(aut.clone());
    census.entries.iter().all(|h| {
        let b = brace_from_regular(&hol, h.clone());
        let c = b.multiplicative();
        let gens = c.generators();
        let images: Vec<Elem> = gens.iter().map(|&g| h.lambda(g)).collect();
        extend_homomorphism(&c, aut.as_ref(), &gens, &images).is_ok_and(|m| m == h.lambdas())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: every subset closed under the holomorph product,
    /// found by testing each λ-assignment for S₃ directly is infeasible, so
    /// instead each pair of generators (k1, φ1), (k2, φ2) is closed naively.
    fn naive_count(aut: Arc<dyn AutGroup>) -> usize {
        let hol = Holomorph::new(aut.clone());
        let n = hol.base().order();
        let all: Vec<HolElem> = (0..n as Elem)
            .flat_map(|k| (0..aut.order() as Elem).map(move |phi| HolElem { k, phi }))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for &g1 in &all {
            for &g2 in &all {
                let set = crate::holomorph::HolSet::closure(&hol, &[g1, g2], n * aut.order()).unwrap();
                if set.len() != n {
                    continue;
                }
                let mut ks: Vec<Elem> = set.iter().map(|u| u.k).collect();
                ks.sort();
                ks.dedup();
                if ks.len() == n {
                    seen.insert(set.sorted());
                }
            }
        }
        seen.len()
    }

    #[test]
    fn s3_census_matches_naive_count() {
        let aut = roster_group("S3").unwrap();
        let census = enumerate_regular_subgroups("S3", aut.clone(), DEFAULT_BOUND).unwrap();
        assert_eq!(census.entries.len(), naive_count(aut.clone()));
        assert!(census.entries.iter().any(|h| h.lambdas().iter().all(|&l| l == 0)));
        assert!(census_lambdas_are_homomorphic(&census, &aut));
        let report = cross_validate(&census, aut);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn psl2_2_census_agrees_with_s3() {
        let a = enumerate_regular_subgroups("S3", roster_group("S3").unwrap(), 24).unwrap();
        let b = enumerate_regular_subgroups("PSL2(2)", roster_group("PSL2(2)").unwrap(), 24).unwrap();
        assert_eq!(a.entries.len(), b.entries.len());
    }

    #[test]
    fn bound_is_enforced() {
        let aut = roster_group("A5").unwrap();
        assert_eq!(
            enumerate_regular_subgroups("A5", aut, 24).unwrap_err(),
            OracleError::BoundExceeded { order: 60, bound: 24 }
        );
        assert!(matches!(roster_group("Q8"), Err(OracleError::UnknownGroup(_))));
    }
}
