use skewbrace::group::{close_subgroup, element_order, Group};
use skewbrace::matgrp::{matrix_order, matrix_pow, projectively_equal};
use skewbrace::psl25::{build_example, verify_example, zeta_scan, VerifyOptions};

#[test]
fn generator_orders() {
    let d = build_example().unwrap();
    let g = d.pgaml.as_ref();
    assert_eq!(element_order(g, d.c1), 12);
    let c23 = close_subgroup(g, &[d.c2, d.c3]);
    assert_eq!(c23.order(), 25);
    assert!(c23
        .elements()
        .iter()
        .all(|&a| a == g.identity() || element_order(g, a) == 5));
    assert_eq!(element_order(g, d.u1), 13);
    let u0fd2 = g.mul(d.u0fd, d.u0fd);
    assert_eq!(element_order(g, u0fd2), 2);
    assert_eq!(u0fd2, d.u2);
    // ⟨u₁, u₂⟩ is dihedral of order 26; u₀fd is needed for all of Y.
    assert_eq!(close_subgroup(g, &[d.u1, u0fd2]).order(), 26);
    assert_eq!(close_subgroup(g, &[d.u1, d.u0fd]).order(), 52);
}

#[test]
fn the_square_of_c0fd() {
    let d = build_example().unwrap();
    let g = d.pgaml.as_ref();
    let sq = g.mul(d.c0fd, d.c0fd);
    assert_eq!(sq, skewbrace::group::pow(g, d.c1, 3));
    assert_eq!(element_order(g, sq), 4);
    let c13 = matrix_pow(&d.field, d.mats.c1, 3);
    assert_eq!(skewbrace::matgrp::matrix_det(&d.field, c13), d.field.one());
    assert_eq!(matrix_order(&d.field, c13).unwrap(), 8);
}

#[test]
fn t_lies_in_both_and_the_printed_matrix_does_not() {
    let d = build_example().unwrap();
    let g = d.pgaml.as_ref();
    assert!(d.x.contains(d.t) && d.y.contains(d.t));
    assert!(d.n.contains(d.t) && !d.m.contains(d.t));
    let printed = g.conjugation_by(d.mats.t).unwrap();
    assert!(!(d.x.contains(printed) && d.y.contains(printed)));
    let f = &d.field;
    let c = skewbrace::matgrp::matrix_product(f, &[matrix_pow(f, d.mats.c1, 6), d.mats.c2, d.mats.c3]);
    assert!(!projectively_equal(f, c, d.mats.t));
}

#[test]
fn every_claim_holds_without_construction() {
    let d = build_example().unwrap();
    let r = verify_example(
        &d,
        VerifyOptions {
            construct: false,
            ..Default::default()
        },
    );
    let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(r.check("|X|").unwrap().actual, "600");
    assert_eq!(r.check("|Inn(K)<fd>|").unwrap().actual, "15600");
    assert_eq!(r.cases.len(), 5);
    assert_eq!(r.cases.iter().map(|c| c.instances).sum::<usize>(), 7800);
}

#[test]
fn only_the_conway_root_and_its_conjugate_satisfy_every_claim() {
    let scan = zeta_scan();
    assert_eq!(scan.len(), 8);
    let passing: Vec<&str> = scan.iter().filter(|r| r.passed).map(|r| r.zeta.as_str()).collect();
    assert_eq!(passing, ["z^1", "z^5"]);
    for r in scan.iter().filter(|r| !r.passed) {
        assert!(r.failed.iter().any(|n| n == "|Y|"), "{}: {:?}", r.zeta, r.failed);
    }
}
