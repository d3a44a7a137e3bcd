use std::sync::Arc;

use proptest::prelude::*;
use skewbrace::brace::{brace_from_regular, lambda_map, regular_subgroup_of, Brace};
use skewbrace::gf::Field;
use skewbrace::group::perm::{automorphism_group, symmetric_group};
use skewbrace::group::{
    centre, close_subgroup, element_order, inner_automorphism_group, product_set, quotient, AutGroup, Elem, Group,
    Subgroup,
};
use skewbrace::holomorph::{HolElem, Holomorph};
use skewbrace::matgrp::{psl_group, Pgaml2, Psl2};
use skewbrace::oracle::{enumerate_regular_subgroups, roster_group};
use skewbrace::sampling::{find_first, Regime};
use skewbrace::theorem_a::{check_conditions, extract_from_brace, subdirect_w};

fn s4() -> Arc<dyn AutGroup> {
    Arc::new(automorphism_group(Arc::new(symmetric_group(4).0)).unwrap())
}

fn pgaml(q: u32) -> Arc<Pgaml2> {
    Arc::new(Pgaml2::new(Arc::new(psl_group(q).unwrap())))
}

#[test]
fn field_axioms_exhaustive() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2)] {
        let f = Field::new(p, n).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for &a in &elems {
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
            }
            let mut x = a;
            for _ in 0..n {
                x = f.frobenius(x).unwrap();
            }
            assert_eq!(x, a);
            for &b in &elems {
                let fa = f.frobenius(a).unwrap();
                let fb = f.frobenius(b).unwrap();
                assert_eq!(f.frobenius(f.add(a, b).unwrap()).unwrap(), f.add(fa, fb).unwrap());
                assert_eq!(f.frobenius(f.mul(a, b).unwrap()).unwrap(), f.mul(fa, fb).unwrap());
            }
        }
        let mut powers: Vec<u32> = (0..f.order() as i64 - 1).map(|k| f.zeta_pow(k).code()).collect();
        powers.sort();
        powers.dedup();
        assert_eq!(powers.len(), f.order() as usize - 1);
        assert!(!powers.contains(&f.zero().code()));
    }
}

#[test]
fn gf25_uses_conway_modulus() {
    let f = Field::new(5, 2).unwrap();
    assert_eq!(f.modulus(), &[2, 4, 1]);
    assert_eq!(f.mul_order(f.zeta()).unwrap(), 24);
    assert_eq!(f.primitive_elements().len(), 8);
}

#[test]
fn semilinear_action_composes_exhaustively_on_q5() {
    let g = pgaml(5);
    let k = g.base().clone();
    for s in 0..g.order() as Elem {
        let ps = g.permutation(s);
        assert!(skewbrace::group::perm::is_automorphism(k.as_ref(), &ps));
        for t in 0..g.order() as Elem {
            let st = g.mul(s, t);
            for x in 0..k.order() as Elem {
                assert_eq!(g.apply(st, x), g.apply(s, g.apply(t, x)));
            }
        }
    }
}

#[test]
fn semilinear_action_composes_sampled_on_q25() {
    let g = pgaml(25);
    let n = g.base().order();
    let regime = Regime::Sampled {
        samples: 100_000,
        seed: 0,
    };
    let hit = find_first::<3, (), _>(n, regime, |[s, t, x]| {
        let (s, t) = (s % g.order() as Elem, t % g.order() as Elem);
        (g.apply(g.mul(s, t), x) != g.apply(s, g.apply(t, x))).then_some(())
    });
    assert_eq!(hit, None);
}

#[test]
fn pgaml_25_orders() {
    let g = pgaml(25);
    assert_eq!(g.order(), 31200);
    let inner = inner_automorphism_group(g.as_ref());
    assert_eq!(inner.inn.order(), 7800);
    assert!(inner.inn.elements().iter().all(|&e| g.is_inner(e)));
    assert_eq!((0..g.order() as Elem).filter(|&e| g.is_inner(e)).count(), 7800);
    let f = Field::new(5, 2).unwrap();
    let d = g
        .conjugation_by(skewbrace::matgrp::Mat2::parse(&f, [["z", "0"], ["0", "1"]]).unwrap())
        .unwrap();
    let fd = g.mul(g.frobenius(), d);
    let mut gens = inner.inn.generators().to_vec();
    gens.push(fd);
    assert_eq!(close_subgroup(g.as_ref(), &gens).order(), 15600);
}

#[test]
fn zeta_is_a_homomorphism() {
    for aut in [s4(), pgaml(5) as Arc<dyn AutGroup>, pgaml(7)] {
        let k = aut.base().clone();
        let inner = inner_automorphism_group(aut.as_ref());
        assert!(inner.centre_is_trivial());
        for a in 0..k.order() as Elem {
            for b in 0..k.order() as Elem {
                assert_eq!(inner.zeta(k.mul(a, b)), aut.mul(inner.zeta(a), inner.zeta(b)));
            }
        }
    }
    let g = pgaml(25);
    let k = g.base().clone();
    let inner = inner_automorphism_group(g.as_ref());
    let regime = Regime::Sampled {
        samples: 100_000,
        seed: 0,
    };
    let hit = find_first::<2, (), _>(k.order(), regime, |[a, b]| {
        (inner.zeta(k.mul(a, b)) != g.mul(inner.zeta(a), inner.zeta(b))).then_some(())
    });
    assert_eq!(hit, None);
    assert!(centre(k.as_ref()).is_trivial());
}

#[test]
fn zeta_is_not_injective_with_centre() {
    let c4 = Arc::new(skewbrace::group::TableGroup::cyclic(4));
    let aut = automorphism_group(c4).unwrap();
    let inner = inner_automorphism_group(&aut);
    assert!(!inner.centre_is_trivial());
    assert_eq!(inner.inn.order(), 1);
}

#[test]
fn hol_mul_is_associative_on_psl25() {
    let g = pgaml(25);
    let hol = Holomorph::new(g.clone());
    let n = g.base().order();
    let m = g.order() as Elem;
    let regime = Regime::Sampled {
        samples: 100_000,
        seed: 1,
    };
    let hit = find_first::<6, (), _>(n, regime, |[a, b, c, p, q, r]| {
        let u = HolElem { k: a, phi: p % m };
        let v = HolElem { k: b, phi: q % m };
        let w = HolElem { k: c, phi: r % m };
        let ok = hol.mul(hol.mul(u, v), w) == hol.mul(u, hol.mul(v, w)) && hol.mul(u, hol.inv(u)) == HolElem::IDENTITY;
        (!ok).then_some(())
    });
    assert_eq!(hit, None);
}

fn s4_subgroups() -> (Arc<dyn AutGroup>, Vec<Subgroup>) {
    let aut = s4();
    let k = aut.base().clone();
    let mut subs: Vec<Subgroup> = Vec::new();
    for a in 0..24 {
        for b in a..24 {
            let s = close_subgroup(k.as_ref(), &[a, b]);
            if !subs.contains(&s) {
                subs.push(s);
            }
        }
    }
    (aut, subs)
}

#[test]
fn product_formula_on_all_two_generated_subgroups_of_s4() {
    let (aut, subs) = s4_subgroups();
    let k = aut.base().as_ref();
    for a in &subs {
        assert_eq!(24 % a.order(), 0);
        for b in &subs {
            let ab = product_set(k, a, b).unwrap();
            let meet = a.intersection(k, b).unwrap();
            assert_eq!(ab.len() * meet.order(), a.order() * b.order());
        }
    }
}

#[test]
fn quotient_projection_is_a_surjective_homomorphism() {
    let (aut, subs) = s4_subgroups();
    let k = aut.base().clone();
    let whole = Subgroup::whole(k.as_ref());
    for n in subs.iter().filter(|n| n.is_normal_in(k.as_ref(), &whole)) {
        let q = quotient(k.clone(), &whole, n).unwrap();
        assert_eq!(q.order() * n.order(), 24);
        let mut hit = vec![false; q.order()];
        for a in 0..24 {
            let pa = q.project(a).unwrap();
            hit[pa as usize] = true;
            assert_eq!(pa == q.identity(), n.contains(a));
            for b in 0..24 {
                assert_eq!(q.project(k.mul(a, b)).unwrap(), q.mul(pa, q.project(b).unwrap()));
            }
        }
        assert!(hit.iter().all(|&h| h));
    }
}

#[test]
fn census_braces_have_homomorphic_lambda_and_round_trip() {
    let aut = s4();
    let hol = Holomorph::new(aut.clone());
    let census = enumerate_regular_subgroups("S4", aut.clone(), 24).unwrap();
    for h in &census.entries {
        let b = brace_from_regular(&hol, h.clone());
        assert_eq!(b.multiplicative().order(), 24);
        let lam = lambda_map(&b, Regime::Exhaustive).unwrap();
        let add = b.additive();
        for a in 0..24 {
            let pa = lam.permutation(a);
            assert_eq!(pa[0], 0);
            for x in 0..24 {
                for y in 0..24 {
                    assert_eq!(pa[add.mul(x, y) as usize], add.mul(pa[x as usize], pa[y as usize]));
                }
                let comp = lam.permutation(b.mul(a, x));
                let px = lam.permutation(x);
                assert!((0..24).all(|z| comp[z] == pa[px[z] as usize]));
            }
        }
        let table = Brace::from_table(add.clone(), b.mul_table()).unwrap();
        let back = brace_from_regular(&hol, regular_subgroup_of(&table, &hol).unwrap());
        assert!(back.same_multiplication(&b));
    }
}

#[test]
fn passing_data_pair_w_bijectively_with_inn() {
    for name in ["S3", "S4"] {
        let aut = roster_group(name).unwrap();
        let census = enumerate_regular_subgroups(name, aut.clone(), 24).unwrap();
        let hol = Holomorph::new(aut.clone());
        for h in &census.entries {
            let b = brace_from_regular(&hol, h.clone());
            let ex = extract_from_brace(&b, aut.clone()).unwrap();
            assert!(check_conditions(&ex.datum).unwrap().passed());
            let w = subdirect_w(&ex.datum).unwrap();
            assert_eq!(w.order(), aut.base().order());
            let mut hits: Vec<Elem> = w.pairs().iter().map(|&(x, y)| aut.mul(x, aut.inv(y))).collect();
            hits.sort();
            hits.dedup();
            assert_eq!(hits.len(), w.order());
            assert!(hits.iter().all(|&z| ex.datum.inner.inn.contains(z)));
        }
    }
}

#[test]
fn census_is_schedule_independent() {
    let runs: Vec<Vec<Vec<Elem>>> = [1, 4]
        .iter()
        .map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let c = enumerate_regular_subgroups("S4", s4(), 24).unwrap();
                c.entries.iter().map(|h| h.lambdas().to_vec()).collect()
            })
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

fn psl7() -> Arc<Psl2> {
    Arc::new(psl_group(7).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_closed_and_divides(gens in prop::collection::vec(0u32..168, 1..4)) {
        let g = psl7();
        let s = close_subgroup(g.as_ref(), &gens);
        prop_assert_eq!(168 % s.order(), 0);
        for &a in s.elements() {
            prop_assert!(s.contains(g.inv(a)));
            for &b in s.elements().iter().take(16) {
                prop_assert!(s.contains(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order(a in 0u32..168) {
        let g = psl7();
        prop_assert_eq!(168 % element_order(g.as_ref(), a), 0);
    }

    #[test]
    fn hol_s4_is_associative(a in 0u32..24, b in 0u32..24, c in 0u32..24, p in 0u32..24, q in 0u32..24, r in 0u32..24) {
        let hol = Holomorph::new(s4());
        let (u, v, w) = (HolElem { k: a, phi: p }, HolElem { k: b, phi: q }, HolElem { k: c, phi: r });
        prop_assert_eq!(hol.mul(hol.mul(u, v), w), hol.mul(u, hol.mul(v, w)));
        prop_assert_eq!(hol.mul(hol.inv(u), u), HolElem::IDENTITY);
    }

    #[test]
    fn field_ops_agree_with_logs(a in 1u32..25, b in 1u32..25) {
        let f = Field::new(5, 2).unwrap();
        let (x, y) = (f.from_code(a).unwrap(), f.from_code(b).unwrap());
        let (lx, ly) = (f.log(x).unwrap().unwrap(), f.log(y).unwrap().unwrap());
        prop_assert_eq!(f.mul(x, y).unwrap(), f.zeta_pow(i64::from(lx + ly)));
        prop_assert_eq!(f.is_square(x).unwrap(), lx % 2 == 0);
    }
}
