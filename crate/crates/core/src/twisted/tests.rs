use std::sync::Arc;

use super::*;
use crate::convolution::{conv_inverse, conv_unit};
use crate::exactlin::Field;
use crate::groups::{builtin_group, klein_nontrivial_cocycle, GroupCocycle, SubgroupRef};
use crate::hopf::{group_algebra, sweedler_algebra};
use crate::partial::sweedler_measuring;

fn q() -> Field {
    Field::Rationals
}

fn k4() -> Arc<crate::groups::FinGroup> {
    Arc::new(builtin_group("K4").unwrap())
}

#[test]
fn trivial_cocycles_pass() {
    for lx in [0, 1, -2] {
        let md = sweedler_measuring(q(), q().int(lx), false).unwrap().measuring();
        let d = TwistedPartialActionData::trivial(md);
        let r = check_twisted(&d);
        assert!(r.passed(), "{}", r.render_text());
        assert!(d.omega_prime.is_none());
        assert!(r.check("symmetric").unwrap().detail.as_deref().unwrap().contains("not symmetric"));
    }
    let l = SubgroupRef::generated(k4(), &[1]);
    let d = dual_subgroup_data(&l, q()).unwrap();
    assert_eq!(d.omega_prime.as_ref(), Some(&d.omega));
}

#[test]
fn zero_cocycle_fails_tpa4() {
    let md = sweedler_measuring(q(), q().one(), false).unwrap().measuring();
    let zero = ConvMap::zero(md.hopf.pair_coalgebra(), &md.target);
    let d = TwistedPartialActionData::new(md, zero, None).unwrap();
    assert_eq!(check_twisted(&d).first_failure().unwrap().id, "TPA4");
}

#[test]
fn ideal_inverse_recovers_klein_omega_prime() {
    for x in [(1, 8), (1, 1), (-3, 7)] {
        let (d, _) = klein_family(&q().ratio(x.0, x.1).unwrap()).unwrap();
        let stripped = TwistedPartialActionData::new(d.measuring.clone(), d.omega.clone(), None).unwrap();
        assert_eq!(stripped.with_ideal_inverse().unwrap().omega_prime, d.omega_prime);
    }
}

#[test]
fn crossed_product_dimensions() {
    let h = Arc::new(sweedler_algebra(q()).unwrap());
    let a = Arc::new(crate::hopf::UnitalAlgebra::split_pair(q()));
    let global = crate::partial::MeasuringData::global(h, a);
    let cp = build_crossed_product(&TwistedPartialActionData::trivial(global)).unwrap();
    assert_eq!(cp.dim(), 8);

    let (d, _) = klein_family(&q().ratio(1, 8).unwrap()).unwrap();
    let cp = underline_algebra(&d).unwrap();
    assert_eq!(cp.dim(), 2);
    let half = q().ratio(1, 2).unwrap();
    let first = Vector::from_vec(vec![half.clone(), half, q().zero(), q().zero()]);
    assert!(cp.space.contains(&first));

    let g = k4();
    let l = SubgroupRef::generated(g.clone(), &[1]);
    let d = group_cocycle_extension(&g, &l, &GroupCocycle::trivial(Arc::new(l.as_group()), q())).unwrap();
    assert_eq!(underline_algebra(&d).unwrap().dim(), 2);

    let d = sweedler_partial_cocycle(q(), q().int(2), q().int(7)).unwrap();
    assert!(build_crossed_product(&d).unwrap().report.passed());
}

#[test]
fn group_isomorphisms() {
    let g = k4();
    let gamma = klein_nontrivial_cocycle(q()).unwrap();
    let cert = underline_algebra_iso_group(&g, &SubgroupRef::whole(g.clone()), &gamma).unwrap();
    assert!(cert.report.passed(), "{}", cert.report.render_text());
    let ring = twisted_group_ring(&gamma).unwrap();
    let (a, b) = (1, 2);
    assert_eq!(ring.basis_mul(b, a), &ring.basis_mul(a, b).neg());

    for l in [SubgroupRef::trivial(g.clone()), SubgroupRef::generated(g.clone(), &[1])] {
        let v = GroupCocycle::trivial(Arc::new(l.as_group()), q());
        let cert = underline_algebra_iso_group(&g, &l, &v).unwrap();
        assert!(cert.report.passed());
        assert_eq!(cert.source_dim, l.order());
    }
}

#[test]
fn dual_isomorphisms() {
    let g = k4();
    let (d, _) = klein_family(&q().ratio(1, 8).unwrap()).unwrap();
    let l = SubgroupRef::generated(g.clone(), &[1]);
    let cert = underline_algebra_iso_dual(&d, &l).unwrap();
    assert!(cert.report.passed(), "{}", cert.report.render_text());
    assert_eq!(cert.source_dim, 2);

    let e = SubgroupRef::trivial(g.clone());
    let cert = underline_algebra_iso_dual(&dual_subgroup_data(&e, q()).unwrap(), &e).unwrap();
    assert!(cert.report.passed());
    assert_eq!(cert.source_dim, 4);

    let all = SubgroupRef::whole(g.clone());
    let cert = underline_algebra_iso_dual(&dual_subgroup_data(&all, q()).unwrap(), &all).unwrap();
    assert!(cert.report.passed());
    assert_eq!(cert.source_dim, 1);
}

/// `Q × Q` with `b` and `ab` swapping the factors and `e`, `a` acting trivially.
fn swap_action() -> GlobalTwistedAction {
    let g = k4();
    let h = Arc::new(group_algebra(&g, q()));
    let b = Arc::new(crate::hopf::UnitalAlgebra::split_pair(q()));
    let action = (0..4)
        .flat_map(|x| (0..2).map(move |j| (x, j)))
        .map(|(x, j)| {
            let swapped = if x >= 2 { 1 - j } else { j };
            Vector::unit(q(), 2, swapped)
        })
        .collect();
    let md = crate::partial::MeasuringData::new(h.clone(), b.clone(), action).unwrap();
    let u = conv_unit(h.pair_coalgebra(), &b);
    let u_inv = conv_inverse(&u).unwrap();
    GlobalTwistedAction::new(md, u, u_inv).unwrap()
}

#[test]
fn restriction_to_a_factor() {
    let glob = swap_action();
    assert!(glob.check().passed(), "{}", glob.check().render_text());
    let r = restrict_global_twisted(&glob, &Vector::from_ints(q(), &[1, 0])).unwrap();
    assert_eq!(r.data.target().dim(), 1);
    let lambda: Vec<_> = (0..4).map(|x| r.data.measuring.one_action(x)[0].clone()).collect();
    assert_eq!(lambda, vec![q().one(), q().one(), q().zero(), q().zero()]);
    assert!(r.data.omega_prime.is_some());
    assert!(crate::partial::check_partial_action(&r.data.measuring).passed());

    let full = restrict_global_twisted(&glob, &Vector::from_ints(q(), &[1, 1])).unwrap();
    assert!(full.data.measuring.is_global());
    assert_eq!(full.data.omega, conv_unit(full.data.hopf().pair_coalgebra(), full.data.target()));
}

#[test]
fn non_central_idempotent_rejected() {
    let glob = swap_action();
    assert!(restrict_global_twisted(&glob, &Vector::from_ints(q(), &[1, 1, 0])).is_err());
    assert!(restrict_global_twisted(&glob, &Vector::from_ints(q(), &[2, 0])).is_err());
}
