use super::*;
use crate::exactlin::{Field, Vector};
use crate::groups::builtin_group;

fn q() -> Field {
    Field::Rationals
}

fn sorted_delta(h: &FinBialgebra, i: usize) -> Vec<(usize, usize, String)> {
    let mut d: Vec<_> = h.delta(i).iter().map(|(j, k, c)| (*j, *k, c.to_string())).collect();
    d.sort();
    d
}

#[test]
fn builtins_pass_full_sweep() {
    let k4 = builtin_group("K4").unwrap();
    let s3 = builtin_group("S3").unwrap();
    for h in [
        group_algebra(&k4, q()),
        dual_group_algebra(&k4, q()),
        group_algebra(&s3, q()),
        dual_group_algebra(&s3, q()),
        sweedler_algebra(q()).unwrap(),
    ] {
        let r = h.data().verify().unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.check("hopf.antipode_left").is_some());
    }
}

#[test]
fn trivial_group_algebra_is_the_field() {
    let z1 = builtin_group("Z:1").unwrap();
    let h = group_algebra(&z1, q());
    assert_eq!(h.dim(), 1);
    assert_eq!(h.delta(0), &[(0, 0, q().one())]);
}

#[test]
fn cocommutativity_flags() {
    let s3 = builtin_group("S3").unwrap();
    let qs3 = group_algebra(&s3, q());
    assert!(qs3.is_cocommutative());
    assert!(!qs3.algebra.is_commutative());
    let dual = dual_group_algebra(&s3, q());
    assert!(!dual.is_cocommutative());
    assert!(dual.algebra.is_commutative());
    let k4 = builtin_group("K4").unwrap();
    assert!(dual_group_algebra(&k4, q()).is_cocommutative());
    assert!(!sweedler_algebra(q()).unwrap().is_cocommutative());
}

#[test]
fn dual_klein_comultiplication_of_p_e() {
    let k4 = builtin_group("K4").unwrap();
    let h = dual_group_algebra(&k4, q());
    // every element of K4 is its own inverse, so Δp_e = Σ p_h ⊗ p_h
    let expect: Vec<_> = (0..4).map(|i| (i, i, "1".to_string())).collect();
    assert_eq!(sorted_delta(&h, 0), expect);
    assert!(h.counit_of(h.unit()).is_one());
}

#[test]
fn sweedler_relations() {
    let h = sweedler_algebra(q()).unwrap();
    let (g, x) = (1, 2);
    assert_eq!(h.basis_mul(g, x), &h.basis_mul(x, g).neg());
    // Δ(xg) = Δ(x)Δ(g) = (x⊗1 + g⊗x)(g⊗g) = xg⊗g + 1⊗xg
    let mut expect = vec![(3, 1, "1".to_string()), (0, 3, "1".to_string())];
    expect.sort();
    assert_eq!(sorted_delta(&h, 3), expect);
    assert!(h.counit(3).is_zero());
    assert!(sweedler_algebra(Field::prime(2).unwrap()).is_err());
}

#[test]
fn iterated_comult_of_x() {
    let h = sweedler_algebra(q()).unwrap();
    let x = h.basis(2);
    let mut got: Vec<_> = h.iterated_comult(&x, 3).into_iter().map(|(i, c)| (i, c.to_string())).collect();
    got.sort();
    let mut expect = vec![
        (vec![2, 0, 0], "1".to_string()),
        (vec![1, 2, 0], "1".to_string()),
        (vec![1, 1, 2], "1".to_string()),
    ];
    expect.sort();
    assert_eq!(got, expect);
    assert_eq!(h.iterated_comult(&x, 1), vec![(vec![2], q().one())]);
    let g = h.basis(1);
    assert_eq!(h.iterated_comult(&g, 4), vec![(vec![1, 1, 1, 1], q().one())]);
}

#[test]
fn dual_of_group_algebra_matches_dual_group_algebra() {
    let k4 = builtin_group("K4").unwrap();
    let d = dualize(&group_algebra(&k4, q())).unwrap().data();
    let e = dual_group_algebra(&k4, q()).data();
    assert_eq!(d.mult, e.mult);
    assert_eq!(d.unit, e.unit);
    assert_eq!(d.counit, e.counit);
    assert_eq!(d.antipode, e.antipode);
    for i in 0..4 {
        let mut a = d.comult[i].clone();
        let mut b = e.comult[i].clone();
        a.sort_by_key(|t| (t.0, t.1));
        b.sort_by_key(|t| (t.0, t.1));
        assert_eq!(a, b);
    }
}

#[test]
fn double_dual_is_the_original() {
    let k4 = builtin_group("K4").unwrap();
    let s3 = builtin_group("S3").unwrap();
    for h in [
        group_algebra(&k4, q()),
        dual_group_algebra(&s3, q()),
        sweedler_algebra(q()).unwrap(),
    ] {
        let dd = dualize(&dualize(&h).unwrap()).unwrap();
        assert_eq!(dd.algebra.mult, h.algebra.mult);
        assert_eq!(dd.coalgebra.comult, h.coalgebra.comult);
        assert_eq!(dd.antipode, h.antipode);
    }
    let ds = dualize(&sweedler_algebra(q()).unwrap()).unwrap();
    assert_eq!(ds.dim(), 4);
}

#[test]
fn broken_coassociativity_is_named() {
    let mut data = sweedler_algebra(q()).unwrap().data();
    // Δx = x⊗1 + x⊗g: not coassociative
    data.comult[2] = vec![(2, 0, q().one()), (2, 1, q().one())];
    let r = data.verify().unwrap();
    let fail = r.first_failure().unwrap();
    assert_eq!(fail.id, "coalgebra.coassoc");
    assert_eq!(fail.counterexample.as_deref(), Some(&["x".to_string()][..]));
    assert!(FinBialgebra::new(data).is_err());
}

#[test]
fn left_and_right_iteration_agree() {
    let h = sweedler_algebra(q()).unwrap();
    let v = Vector::from_ints(q(), &[1, -2, 3, 5]);
    for k in 1..6 {
        assert_eq!(h.coalgebra.iterated_comult(&v, k), h.coalgebra.iterated_comult_right(&v, k));
    }
}
