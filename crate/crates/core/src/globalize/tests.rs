use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::exactlin::Field;
use crate::groups::{builtin_group, klein_nontrivial_cocycle, SubgroupRef};
use crate::twisted::{group_cocycle_extension, klein_family, GlobalTwistedAction};

fn q() -> Field {
    Field::Rationals
}

fn klein() -> (crate::twisted::TwistedPartialActionData, ConvMap, ConvMap) {
    let (d, _) = klein_family(&q().ratio(1, 8).unwrap()).unwrap();
    let (x, y) = klein_wtilde_table(q()).unwrap();
    (d, x, y)
}

#[test]
fn klein_table_satisfies_equations() {
    let (d, x, y) = klein();
    let r = verify_klein_wtilde_equations(&d, &x, &y).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(r.check("omega_ee").unwrap().detail.as_deref(), Some("1/8"));
}

#[test]
fn flipped_sign_breaks_equation1() {
    let (d, mut x, y) = klein();
    x.coeffs[2 * 4 + 2] = x.coeffs[2 * 4 + 2].neg();
    let r = verify_klein_wtilde_equations(&d, &x, &y).unwrap();
    let bad = r.first_failure().unwrap();
    assert_eq!(bad.id, "equation1");
    assert_eq!(bad.counterexample.as_deref(), Some(&["b".to_string()][..]));
}

#[test]
fn klein_globalization() {
    let (d, x, _) = klein();
    let g = build_globalization(&d, &x).unwrap();
    assert!(g.report.passed(), "{}", g.report.render_text());
    assert!(g.dim_b() >= 1 && g.dim_b() <= 16);
    let closure = cocommutative_closure_check(&g).unwrap();
    assert!(closure.passed(), "{}", closure.render_text());

    let back = extract_wtilde(&g.global, &g.phi_in_b, &d).unwrap();
    assert_eq!(back.map, x);
}

#[test]
fn group_cocycle_globalizes_to_scalars() {
    let k4 = Arc::new(builtin_group("K4").unwrap());
    let gamma = klein_nontrivial_cocycle(q()).unwrap();
    let d = group_cocycle_extension(&k4, &SubgroupRef::whole(k4.clone()), &gamma).unwrap();
    let g = build_globalization(&d, &d.omega).unwrap();
    assert_eq!(g.dim_b(), 1);
    let eta = crate::convolution::conv_unit(&g.hopf().coalgebra, d.target());
    for (p, u) in g.u.iter().enumerate() {
        assert_eq!(u, &eta.scale(gamma.get(p / 4, p % 4)));
    }
    assert!(cocommutative_closure_check(&g).unwrap().passed());
}

#[test]
fn non_symmetric_data_is_rejected() {
    let md = crate::partial::sweedler_measuring(q(), q().one(), false).unwrap().measuring();
    let d = crate::twisted::TwistedPartialActionData::trivial(md);
    let w = d.omega.clone();
    assert!(matches!(check_wtilde(&d, &w), Err(Error::Invalid(_))));
}

#[test]
fn wrong_wtilde_fails_reproduction() {
    let (d, _, _) = klein();
    let unit = crate::convolution::conv_unit(d.hopf().pair_coalgebra(), d.target());
    let (r, inv) = wtilde_report(&d, &unit);
    assert!(inv.is_some());
    assert_eq!(r.first_failure().unwrap().id, "globcocycle1");
}

#[test]
fn extraction_rejects_non_cocycle() {
    let k4 = Arc::new(builtin_group("K4").unwrap());
    let gamma = klein_nontrivial_cocycle(q()).unwrap();
    let d = group_cocycle_extension(&k4, &SubgroupRef::whole(k4.clone()), &gamma).unwrap();
    let g = build_globalization(&d, &d.omega).unwrap();
    let glob = &g.global;
    let (mut u, mut u_inv) = (glob.u.clone(), glob.u_inv.clone());
    // u(a,b) doubled: normalized and invertible, no longer a cocycle
    let p = 4 + 2;
    u.coeffs[p] = u.coeffs[p].scale(&q().int(2));
    u_inv.coeffs[p] = u_inv.coeffs[p].scale(&q().ratio(1, 2).unwrap());
    let broken = GlobalTwistedAction::new(glob.measuring.clone(), u, u_inv).unwrap();
    let Err(Error::Verification(r)) = extract_wtilde(&broken, &g.phi_in_b, &d) else {
        panic!("expected a verification failure");
    };
    assert_eq!(r.first_failure().unwrap().id, "law_of_cocycles");
}
