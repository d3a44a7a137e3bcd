//! Braces from subdirect data `(X, Y, N, M, γ)` in Aut(K), and back.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::brace::{brace_from_regular, regular_subgroup_of, Brace, BraceError};
use crate::group::{
    close_subgroup, extend_homomorphism, inner_automorphism_group, iso_onto, product_set, quotient, verify_coset_iso,
    AutGroup, CosetIso, Elem, Group, GroupError, InnerAutomorphisms, ResolvedCosetIso, Subgroup,
};
use crate::holomorph::{is_regular_subgroup, HolElem, HolError, Holomorph, RegularSubgroup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoremError {
    #[error("K has nontrivial centre of order {0}")]
    CentreNotTrivial(usize),
    #[error("K is trivial")]
    TrivialGroup,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Hol(#[from] HolError),
    #[error("conditions fail: {}", .0.summary())]
    Conditions(Box<ConditionReport>),
    #[error("pairing (x, y) -> xy⁻¹ is not a bijection onto Inn(K): {0}")]
    PairingNotBijective(String),
    #[error("constructed set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("X ∩ Y has order {0}, not 1")]
    NotDisjoint(usize),
    #[error("factorisation XY = X Inn(K) = Y Inn(K) fails: {0}")]
    FactorisationFails(String),
    #[error("hw_iso is not an isomorphism: {0}")]
    HwIso(String),
    #[error("extraction check failed: {0}")]
    Extraction(String),
}

/// `(X, Y, N, M, γ)` inside an automorphism group of K.
#[derive(Clone)]
pub struct SubdirectDatum {
    pub aut: Arc<dyn AutGroup>,
    pub inner: Arc<InnerAutomorphisms>,
    pub x: Subgroup,
    pub y: Subgroup,
    pub n: Subgroup,
    pub m: Subgroup,
    pub gamma: CosetIso,
}

impl std::fmt::Debug for SubdirectDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubdirectDatum(|K| = {}, |X| = {}, |Y| = {}, |N| = {}, |M| = {})",
            self.k_order(),
            self.x.order(),
            self.y.order(),
            self.n.order(),
            self.m.order()
        )
    }
}

impl SubdirectDatum {
    pub fn new(
        aut: Arc<dyn AutGroup>,
        x: Subgroup,
        y: Subgroup,
        n: Subgroup,
        m: Subgroup,
        gamma: CosetIso,
    ) -> SubdirectDatum {
        let inner = Arc::new(inner_automorphism_group(aut.as_ref()));
        SubdirectDatum {
            aut,
            inner,
            x,
            y,
            n,
            m,
            gamma,
        }
    }

    pub fn with_inner(
        aut: Arc<dyn AutGroup>,
        inner: Arc<InnerAutomorphisms>,
        x: Subgroup,
        y: Subgroup,
        n: Subgroup,
        m: Subgroup,
        gamma: CosetIso,
    ) -> SubdirectDatum {
        SubdirectDatum {
            aut,
            inner,
            x,
            y,
            n,
            m,
            gamma,
        }
    }

    pub fn k_order(&self) -> usize {
        self.aut.base().order()
    }

    fn aut_group(&self) -> Arc<dyn Group> {
        self.aut.clone()
    }

    fn resolve_gamma(&self) -> Result<ResolvedCosetIso, String> {
        verify_coset_iso(self.aut_group(), &self.y, &self.m, &self.x, &self.n, &self.gamma).map_err(|e| e.to_string())
    }

    /// K = {1} and nontrivial centres are rejected.
    fn require_admissible(&self) -> Result<(), TheoremError> {
        if self.k_order() == 1 {
            return Err(TheoremError::TrivialGroup);
        }
        self.inner.require_trivial_centre().map_err(|e| match e {
            GroupError::CentreNotTrivial(c) => TheoremError::CentreNotTrivial(c),
            e => TheoremError::Group(e),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Orders {
    pub k: usize,
    pub inn: usize,
    pub x: usize,
    pub y: usize,
    pub n: usize,
    pub m: usize,
    pub x_inn: usize,
    pub y_inn: usize,
    pub xy: usize,
    pub w: usize,
}

/// Outcome of checking conditions (a)–(c). Structural problems (normality,
/// containment, an invalid γ) are listed separately from the conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub orders: Orders,
    pub structural: Vec<String>,
    pub a: bool,
    pub b_compat: bool,
    pub b_surjective: bool,
    pub c: bool,
    pub witnesses: Vec<String>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.structural.is_empty() && self.a && self.b_compat && self.b_surjective && self.c
    }

    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.structural.is_empty() {
            v.push("structure");
        }
        for (ok, name) in [
            (self.a, "(a)"),
            (self.b_compat, "(b-compat)"),
            (self.b_surjective, "(b-surj)"),
            (self.c, "(c)"),
        ] {
            if !ok {
                v.push(name);
            }
        }
        v
    }

    pub fn summary(&self) -> String {
        let f = self.failed_conditions();
        if f.is_empty() {
            "all conditions hold".into()
        } else {
            format!("failing: {}", f.join(", "))
        }
    }
}

/// Pairs `(x, y)` with `γ(yM) = xN`, sorted.
fn w_pairs(d: &SubdirectDatum, gamma: &ResolvedCosetIso) -> Vec<(Elem, Elem)> {
    let mut by_coset: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for &x in d.x.elements() {
        by_coset
            .entry(gamma.codomain.project(x).expect("x in X"))
            .or_default()
            .push(x);
    }
    let mut pairs = Vec::with_capacity(d.y.order() * d.n.order());
    for &y in d.y.elements() {
        let c = gamma.image_coset(y).expect("y in Y");
        for &x in &by_coset[&c] {
            pairs.push((x, y));
        }
    }
    pairs.sort_unstable();
    pairs
}

pub fn check_conditions(d: &SubdirectDatum) -> Result<ConditionReport, TheoremError> {
    d.require_admissible()?;
    let aut = d.aut.as_ref();
    let inn = &d.inner.inn;
    let mut r = ConditionReport::default();
    r.orders.k = d.k_order();
    r.orders.inn = inn.order();
    r.orders.x = d.x.order();
    r.orders.y = d.y.order();
    r.orders.n = d.n.order();
    r.orders.m = d.m.order();

    for (sub, sup, what) in [
        (&d.n, &d.x, "N ≤ X"),
        (&d.m, &d.y, "M ≤ Y"),
        (&d.n, inn, "N ≤ Inn(K)"),
        (&d.m, inn, "M ≤ Inn(K)"),
    ] {
        if !sub.is_subset_of(sup) {
            r.structural.push(format!("{what} fails"));
        }
    }
    if !d.n.is_normal_in(aut, &d.x) {
        r.structural.push("N is not normal in X".into());
    }
    if !d.m.is_normal_in(aut, &d.y) {
        r.structural.push("M is not normal in Y".into());
    }

    // (a)
    let xy = product_set(aut, &d.x, &d.y)?;
    let xi = product_set(aut, &d.x, inn)?;
    let yi = product_set(aut, &d.y, inn)?;
    r.orders.xy = xy.len();
    r.orders.x_inn = xi.len();
    r.orders.y_inn = yi.len();
    r.a = xy == xi && xi == yi;
    if !r.a {
        r.witnesses.push(format!(
            "(a): |XY| = {}, |X Inn| = {}, |Y Inn| = {}",
            xy.len(),
            xi.len(),
            yi.len()
        ));
    }

    // (c)
    let k = d.k_order();
    r.c = k == d.x.order() * d.m.order() && k == d.y.order() * d.n.order();
    if !r.c {
        r.witnesses.push(format!(
            "(c): |K| = {k}, |X||M| = {}, |Y||N| = {}",
            d.x.order() * d.m.order(),
            d.y.order() * d.n.order()
        ));
    }

    // (b)
    let gamma = if r.structural.is_empty() {
        match d.resolve_gamma() {
            Ok(g) => Some(g),
            Err(e) => {
                r.structural.push(format!("γ is invalid: {e}"));
                None
            }
        }
    } else {
        None
    };
    match gamma {
        None => r
            .witnesses
            .push("(b): not checked, the datum is structurally invalid".into()),
        Some(gamma) => {
            let pairs = w_pairs(d, &gamma);
            r.orders.w = pairs.len();
            let mut hit = FixedBitSet::with_capacity(aut.order());
            r.b_compat = true;
            for &(x, y) in &pairs {
                let z = aut.mul(x, aut.inv(y));
                if !inn.contains(z) {
                    if r.b_compat {
                        r.witnesses
                            .push(format!("(b-compat): γ({y}M) = {x}N but {x}·{y}⁻¹ ∉ Inn(K)"));
                    }
                    r.b_compat = false;
                } else {
                    hit.insert(z as usize);
                }
            }
            let missing = inn.elements().iter().find(|&&z| !hit.contains(z as usize));
            r.b_surjective = missing.is_none();
            if let Some(z) = missing {
                r.witnesses
                    .push(format!("(b-surj): inner automorphism {z} is not of the form xy⁻¹"));
            }
        }
    }
    Ok(r)
}

/// The subdirect product `W ≤ X × Y`, elements indexed in sorted order.
#[derive(Clone)]
pub struct SubdirectW {
    aut: Arc<dyn AutGroup>,
    pairs: Vec<(Elem, Elem)>,
    index: HashMap<(Elem, Elem), Elem>,
    gens: Vec<Elem>,
}

impl std::fmt::Debug for SubdirectW {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W(order {})", self.pairs.len())
    }
}

impl SubdirectW {
    pub fn pair(&self, w: Elem) -> (Elem, Elem) {
        self.pairs[w as usize]
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn index_of(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.index.get(&(x, y)).copied()
    }

    /// Whether both coordinate projections are onto X and Y.
    pub fn projections_surjective(&self, x: &Subgroup, y: &Subgroup) -> bool {
        let mut px = FixedBitSet::with_capacity(x.parent_order());
        let mut py = FixedBitSet::with_capacity(y.parent_order());
        for &(a, b) in &self.pairs {
            px.insert(a as usize);
            py.insert(b as usize);
        }
        px.count_ones(..) == x.order()
            && py.count_ones(..) == y.order()
            && x.elements().iter().all(|&a| px.contains(a as usize))
            && y.elements().iter().all(|&b| py.contains(b as usize))
    }
}

impl Group for SubdirectW {
    fn order(&self) -> usize {
        self.pairs.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x1, y1) = self.pairs[a as usize];
        let (x2, y2) = self.pairs[b as usize];
        self.index[&(self.aut.mul(x1, x2), self.aut.mul(y1, y2))]
    }

    fn inv(&self, a: Elem) -> Elem {
        let (x, y) = self.pairs[a as usize];
        self.index[&(self.aut.inv(x), self.aut.inv(y))]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

pub fn subdirect_w(d: &SubdirectDatum) -> Result<SubdirectW, TheoremError> {
    let aut = d.aut.as_ref();
    if !d.n.is_normal_in(aut, &d.x) || !d.m.is_normal_in(aut, &d.y) {
        return Err(GroupError::NotNormal("N in X or M in Y".into()).into());
    }
    let gamma = d.resolve_gamma().map_err(TheoremError::Extraction)?;
    let pairs = w_pairs(d, &gamma);
    let index = pairs.iter().enumerate().map(|(i, &p)| (p, i as Elem)).collect();
    let mut w = SubdirectW {
        aut: d.aut.clone(),
        pairs,
        index,
        gens: Vec::new(),
    };
    w.gens = crate::group::greedy_generators(&w);
    Ok(w)
}

/// `H = {(ζ⁻¹(xy⁻¹), y) : (x, y) ∈ W}`, checked regular.
pub fn construct_h(d: &SubdirectDatum, w: &SubdirectW, hol: &Holomorph) -> Result<RegularSubgroup, TheoremError> {
    d.require_admissible()?;
    let aut = d.aut.as_ref();
    let k = d.k_order();
    if w.order() != k {
        return Err(TheoremError::PairingNotBijective(format!(
            "|W| = {} but |K| = {k}",
            w.order()
        )));
    }
    let mut seen = FixedBitSet::with_capacity(k);
    let mut elems = Vec::with_capacity(k);
    for &(x, y) in w.pairs() {
        let z = aut.mul(x, aut.inv(y));
        let b = d
            .inner
            .zeta_inverse(z)
            .ok_or_else(|| TheoremError::PairingNotBijective(format!("{x}·{y}⁻¹ is not inner")))?;
        if seen.put(b as usize) {
            return Err(TheoremError::PairingNotBijective(format!("{b} is hit twice")));
        }
        elems.push(HolElem { k: b, phi: y });
    }
    is_regular_subgroup(hol, &elems).map_err(|e| TheoremError::NotSubgroup(e.to_string()))
}

/// The brace of a valid datum together with the verified isomorphism
/// `hw_iso: (b, y) -> (ζ(b)y, y)` from `(B, ·)` onto W.
#[derive(Clone, Debug)]
pub struct Construction {
    pub report: ConditionReport,
    pub w: SubdirectW,
    pub h: RegularSubgroup,
    pub brace: Brace,
    /// `hw_iso[b]` is the W index of the image of `(b, λ_b)`.
    pub hw_iso: Vec<Elem>,
}

pub fn construct_brace(d: &SubdirectDatum) -> Result<Construction, TheoremError> {
    let report = check_conditions(d)?;
    if !report.passed() {
        return Err(TheoremError::Conditions(Box::new(report)));
    }
    let hol = Holomorph::new(d.aut.clone());
    let w = subdirect_w(d)?;
    let h = construct_h(d, &w, &hol)?;
    let brace = brace_from_regular(&hol, h.clone());
    let aut = d.aut.as_ref();
    let pointwise: Vec<Elem> = h
        .elements()
        .map(|u| {
            let x = aut.mul(d.inner.zeta(u.k), u.phi);
            w.index_of(x, u.phi)
                .ok_or_else(|| TheoremError::HwIso(format!("image of {} is not in W", u.k)))
        })
        .collect::<Result<_, _>>()?;
    let c = brace.multiplicative();
    let gens = c.generators();
    let images: Vec<Elem> = gens.iter().map(|&g| pointwise[g as usize]).collect();
    let ext = extend_homomorphism(&c, &w, &gens, &images).map_err(|e| TheoremError::HwIso(e.to_string()))?;
    if ext != pointwise {
        return Err(TheoremError::HwIso("not multiplicative".into()));
    }
    let mut seen = FixedBitSet::with_capacity(w.order());
    if ext.iter().any(|&i| seen.put(i as usize)) || w.order() != c.order() {
        return Err(TheoremError::HwIso("not bijective".into()));
    }
    Ok(Construction {
        report,
        w,
        h,
        brace,
        hw_iso: ext,
    })
}

/// The forward direction: `X = α(H)`, `Y = π(H)`, `T = Ker α`, `V = Ker π`,
/// `R = VT`, `N = α(R)`, `M = π(R)` and `γ(λ_b M) = α(b, λ_b) N`.
#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub datum: SubdirectDatum,
    /// Subgroups of `(B, ·)`.
    pub t: Subgroup,
    pub v: Subgroup,
    pub r_order: usize,
    pub report: ConditionReport,
}

pub fn extract_from_brace(b: &Brace, aut: Arc<dyn AutGroup>) -> Result<ExtractionResult, TheoremError> {
    let inner = Arc::new(inner_automorphism_group(aut.as_ref()));
    extract_with_inner(b, aut, inner)
}

pub fn extract_with_inner(
    b: &Brace,
    aut: Arc<dyn AutGroup>,
    inner: Arc<InnerAutomorphisms>,
) -> Result<ExtractionResult, TheoremError> {
    let k = b.order();
    if k == 1 {
        return Err(TheoremError::TrivialGroup);
    }
    inner.require_trivial_centre().map_err(|e| match e {
        GroupError::CentreNotTrivial(c) => TheoremError::CentreNotTrivial(c),
        e => TheoremError::Group(e),
    })?;
    let hol = Holomorph::new(aut.clone());
    let h = regular_subgroup_of(b, &hol)?;
    let a = aut.as_ref();
    let c = b.multiplicative();
    let gens = c.generators();

    let alpha: Vec<Elem> = h.elements().map(|u| a.mul(inner.zeta(u.k), u.phi)).collect();
    let pi: Vec<Elem> = h.lambdas().to_vec();
    for (map, name) in [(&alpha, "α"), (&pi, "π")] {
        let images: Vec<Elem> = gens.iter().map(|&g| map[g as usize]).collect();
        let ext =
            extend_homomorphism(&c, a, &gens, &images).map_err(|e| TheoremError::Extraction(format!("{name}: {e}")))?;
        if &ext != map {
            return Err(TheoremError::Extraction(format!("{name} is not a homomorphism")));
        }
    }
    let x = close_subgroup(a, &gens.iter().map(|&g| alpha[g as usize]).collect::<Vec<_>>());
    let y = close_subgroup(a, &gens.iter().map(|&g| pi[g as usize]).collect::<Vec<_>>());
    let id = a.identity();
    let t = Subgroup::from_elements(&c, (0..k as Elem).filter(|&e| alpha[e as usize] == id))?;
    let v = Subgroup::from_elements(&c, (0..k as Elem).filter(|&e| pi[e as usize] == id))?;
    let whole = Subgroup::whole(&c);
    let rset = product_set(&c, &v, &t)?;
    let r = Subgroup::from_elements(&c, rset.elements())?;
    let n = close_subgroup(
        a,
        &r.generators().iter().map(|&e| alpha[e as usize]).collect::<Vec<_>>(),
    );
    let m = close_subgroup(a, &r.generators().iter().map(|&e| pi[e as usize]).collect::<Vec<_>>());

    // γ on minimal representatives of Y/M
    let mut preimage: HashMap<Elem, Elem> = HashMap::new();
    for e in 0..k as Elem {
        preimage.entry(pi[e as usize]).or_insert(e);
    }
    let ym = quotient(a_arc(&aut), &y, &m)?;
    let pairs = (0..ym.order() as Elem)
        .map(|cset| {
            let rep = ym.representative(cset);
            (rep, alpha[preimage[&rep] as usize])
        })
        .collect();
    let datum = SubdirectDatum::with_inner(aut.clone(), inner, x, y, n, m, CosetIso { pairs });

    // Structure of (B, ·)
    let tv = t.intersection(&c, &v)?;
    if !tv.is_trivial() {
        return Err(TheoremError::Extraction(format!("|T ∩ V| = {}", tv.order())));
    }
    let c_arc: Arc<dyn Group> = Arc::new(c.clone());
    for (kernel, map, target, name) in [(&t, &alpha, &datum.x, "C/T ≅ X"), (&v, &pi, &datum.y, "C/V ≅ Y")] {
        let q = quotient(c_arc.clone(), &whole, kernel)?;
        let qgens = q.generators();
        let images: Vec<Elem> = qgens.iter().map(|&g| map[q.representative(g) as usize]).collect();
        iso_onto(&q, a, &qgens, &images, target).map_err(|e| TheoremError::Extraction(format!("{name}: {e}")))?;
    }
    let checks = [
        (datum.n.order() == v.order(), "|N| = |H ∩ K|"),
        (datum.m.order() == t.order(), "|M| = |Cent_H(K)|"),
        (datum.x.order() * t.order() == k, "|X| = |K|/|Cent_H(K)|"),
        (datum.y.order() * v.order() == k, "|Y| = |K|/|H ∩ K|"),
        (r.order() == t.order() * v.order(), "|R| = |T||V|"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(TheoremError::Extraction(format!("{what} fails")));
    }
    let report = check_conditions(&datum)?;
    Ok(ExtractionResult {
        datum,
        r_order: r.order(),
        t,
        v,
        report,
    })
}

fn a_arc(aut: &Arc<dyn AutGroup>) -> Arc<dyn Group> {
    aut.clone()
}

/// The datum for disjoint `X, Y`: `N = X ∩ Inn(K)`, `M = Y ∩ Inn(K)`,
/// `γ(bM) = aN` for `a ∈ X`, `b ∈ Y` with `ab⁻¹` inner.
pub fn corollary_pair(
    aut: Arc<dyn AutGroup>,
    inner: Arc<InnerAutomorphisms>,
    x: &Subgroup,
    y: &Subgroup,
) -> Result<SubdirectDatum, TheoremError> {
    let a = aut.as_ref();
    let meet = x.intersection(a, y)?;
    if !meet.is_trivial() {
        return Err(TheoremError::NotDisjoint(meet.order()));
    }
    let inn = &inner.inn;
    let xy = product_set(a, x, y)?;
    let xi = product_set(a, x, inn)?;
    let yi = product_set(a, y, inn)?;
    if !(xy == xi && xi == yi) {
        return Err(TheoremError::FactorisationFails(format!(
            "|XY| = {}, |X Inn| = {}, |Y Inn| = {}",
            xy.len(),
            xi.len(),
            yi.len()
        )));
    }
    let n = x.intersection(a, inn)?;
    let m = y.intersection(a, inn)?;
    let ym = quotient(a_arc(&aut), y, &m)?;
    let mut pairs = Vec::with_capacity(ym.order());
    for cset in 0..ym.order() as Elem {
        let rep = ym.representative(cset);
        let ri = a.inv(rep);
        let partner = x
            .elements()
            .iter()
            .copied()
            .find(|&xe| inn.contains(a.mul(xe, ri)))
            .ok_or_else(|| TheoremError::FactorisationFails(format!("no x with x·{rep}⁻¹ inner")))?;
        pairs.push((rep, partner));
    }
    Ok(SubdirectDatum::with_inner(
        aut,
        inner,
        x.clone(),
        y.clone(),
        n,
        m,
        CosetIso { pairs },
    ))
}
