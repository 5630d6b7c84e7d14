//! Twisted partial actions: partial 2-cocycles, symmetric data, and the constructions built on them.

use std::sync::Arc;

use crate::convolution::{centrality_witness, idempotents_e_f1_f2, ideal_inverse, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::Vector;
use crate::hopf::{FinBialgebra, UnitalAlgebra};
use crate::partial::{check_measuring, check_partial_action, MeasuringData};
use crate::report::{Check, Report};

mod crossed;
mod families;
mod global;
mod quotient;

pub use crossed::{
    build_crossed_product, twisted_group_ring, underline_algebra, underline_algebra_iso_dual,
    underline_algebra_iso_group, CrossedProduct, IsoCertificate,
};
pub use families::{
    group_cocycle_extension, klein_family, klein_family_point, sweedler_partial_cocycle, sweedler_symmetric_no_go,
    KleinFamilyPoint,
};
pub use global::{restrict_global_twisted, GlobalTwistedAction, Restriction};
pub use quotient::{
    check_par_glob_cocycle, dual_measuring, dual_subgroup_data, partial_to_quotient, quotient_cocycle_correspondence,
    quotient_to_partial, Correspondence, QuotientCocycle,
};

/// A partial measuring together with `ω: H ⊗ H → A` and, for symmetric data, `ω′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPartialActionData {
    pub measuring: MeasuringData,
    pub omega: ConvMap,
    pub omega_prime: Option<ConvMap>,
}

impl TwistedPartialActionData {
    pub fn new(measuring: MeasuringData, omega: ConvMap, omega_prime: Option<ConvMap>) -> Result<Self> {
        let data = TwistedPartialActionData {
            measuring,
            omega,
            omega_prime,
        };
        for w in std::iter::once(&data.omega).chain(data.omega_prime.as_ref()) {
            if w.source.as_ref() != data.hopf().pair_coalgebra().as_ref() {
                return Err(Error::Invalid("cocycle source is not H ⊗ H".into()));
            }
            if w.target != data.measuring.target {
                return Err(Error::Invalid("cocycle target differs from the measured algebra".into()));
            }
        }
        Ok(data)
    }

    /// `ω(h,k) = h·(k·1_A)`, with `ω′ = ω` when `f1` and `f2` are central.
    pub fn trivial(measuring: MeasuringData) -> Self {
        let (_, f1, f2) = idempotents_e_f1_f2(&measuring);
        let omega = f1.star(&f2);
        let symmetric = centrality_witness(&f1).is_none() && centrality_witness(&f2).is_none();
        let omega_prime = symmetric.then(|| omega.clone());
        TwistedPartialActionData {
            measuring,
            omega,
            omega_prime,
        }
    }

    pub fn hopf(&self) -> &Arc<FinBialgebra> {
        &self.measuring.hopf
    }

    pub fn target(&self) -> &Arc<UnitalAlgebra> {
        &self.measuring.target
    }

    /// Fills in `ω′` from the ideal `⟨f1∗f2⟩` when `f1`, `f2` are central and an inverse exists.
    pub fn with_ideal_inverse(mut self) -> Result<Self> {
        let (_, f1, f2) = idempotents_e_f1_f2(&self.measuring);
        self.omega_prime = ideal_inverse(&self.omega, &f1, &f2)?;
        Ok(self)
    }

    /// Runs [`check_twisted`] and returns the data only if everything passes.
    pub fn verified(self) -> Result<Self> {
        let r = check_twisted(&self);
        if r.passed() {
            Ok(self)
        } else {
            Err(Error::Verification(Box::new(r)))
        }
    }
}

/// `Σ u_i v_j w(e_i, e_j)` for a map `w` on `H ⊗ H`.
pub(crate) fn pair_eval(w: &ConvMap, n: usize, u: &Vector, v: &Vector) -> Vector {
    let mut out = w.target.zero();
    for (i, a) in u.nonzero() {
        for (j, b) in v.nonzero() {
            out.axpy(&(a * b), &w.coeffs[i * n + j]);
        }
    }
    out
}

pub(crate) fn pair_eval_basis(w: &ConvMap, n: usize, i: usize, v: &Vector) -> Vector {
    let mut out = w.target.zero();
    for (j, b) in v.nonzero() {
        out.axpy(b, &w.coeffs[i * n + j]);
    }
    out
}

/// The first pair `(h,k)` where two maps on `H ⊗ H` differ.
pub(crate) fn first_pair_difference(a: &ConvMap, b: &ConvMap, hopf: &FinBialgebra) -> Option<Vec<String>> {
    let n = hopf.dim();
    (0..a.coeffs.len())
        .find(|&p| a.coeffs[p] != b.coeffs[p])
        .map(|p| vec![hopf.label(p / n).to_string(), hopf.label(p % n).to_string()])
}

/// The twisted partial action axioms, the derived absorption identities and, for symmetric
/// data, centrality, the ideal inverse and the `ω′` rewriting of the iterated action.
pub fn check_twisted(data: &TwistedPartialActionData) -> Report {
    let md = &data.measuring;
    let h = data.hopf().clone();
    let a = data.target().clone();
    let (n, m) = (h.dim(), a.dim());
    let w = &data.omega;
    let mut r = Report::new("twisted partial action");
    r.absorb("TPA1", check_measuring(md));

    let hk = |i: usize, k: usize| vec![md.hl(i), md.hl(k)];
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |k| (i, k)));

    r.sweep(
        "TPA2",
        (0..n).flat_map(|i| (0..n).flat_map(move |l| (0..m).map(move |x| (i, l, x)))),
        |&(i, l, x)| vec![md.hl(i), md.hl(l), md.al(x)],
        |&(i, l, x)| {
            let mut lhs = a.zero();
            let mut rhs = a.zero();
            for (h1, h2, c) in h.delta(i) {
                for (l1, l2, d) in h.delta(l) {
                    let cd = c * d;
                    let inner = md.act_on(*h1, md.act_basis(*l1, x));
                    lhs.axpy(&cd, &a.mul(&inner, &w.coeffs[h2 * n + l2]));
                    let moved = md.act(h.basis_mul(*h2, *l2), &a.basis(x));
                    rhs.axpy(&cd, &a.mul(&w.coeffs[h1 * n + l1], &moved));
                }
            }
            (lhs != rhs).then(|| format!("left {lhs}, right {rhs}"))
        },
    );
    r.sweep(
        "TPA3",
        pairs(),
        |&(i, l)| hk(i, l),
        |&(i, l)| {
            let mut rhs = a.zero();
            for (h1, h2, c) in h.delta(i) {
                for (l1, l2, d) in h.delta(l) {
                    let one = md.one_action_of(h.basis_mul(*h2, *l2));
                    rhs.axpy(&(c * d), &a.mul(&w.coeffs[h1 * n + l1], &one));
                }
            }
            let lhs = &w.coeffs[i * n + l];
            (lhs != &rhs).then(|| format!("ω(h,l) = {lhs}, ω(h1,l1)(h2l2·1) = {rhs}"))
        },
    );
    r.sweep(
        "TPA4",
        0..n,
        |&i| vec![md.hl(i)],
        |&i| {
            let right = pair_eval_basis(w, n, i, h.unit());
            let left = pair_eval(w, n, h.unit(), &h.basis(i));
            let expect = md.one_action(i);
            if &right != expect {
                Some(format!("ω(h,1) = {right}, h·1 = {expect}"))
            } else if &left != expect {
                Some(format!("ω(1,h) = {left}, h·1 = {expect}"))
            } else {
                None
            }
        },
    );
    sweep_cocycle(&mut r, "TPA5", md, w);
    r.sweep(
        "absorption",
        pairs(),
        |&(i, l)| hk(i, l),
        |&(i, l)| {
            let target = &w.coeffs[i * n + l];
            let mut both = a.zero();
            for (h1, h2, c) in h.delta(i) {
                for (l1, l2, d) in h.delta(l) {
                    let inner = md.act_on(*h1, md.one_action(*l1));
                    both.axpy(&(c * d), &a.mul(&inner, &w.coeffs[h2 * n + l2]));
                }
            }
            let mut left_only = a.zero();
            for (h1, h2, c) in h.delta(i) {
                left_only.axpy(c, &a.mul(md.one_action(*h1), &w.coeffs[h2 * n + l]));
            }
            if &both != target {
                Some(format!("(h1·(l1·1))ω(h2,l2) = {both}, ω(h,l) = {target}"))
            } else if &left_only != target {
                Some(format!("(h1·1)ω(h2,l) = {left_only}, ω(h,l) = {target}"))
            } else {
                None
            }
        },
    );

    let (_, f1, f2) = idempotents_e_f1_f2(md);
    let Some(wp) = &data.omega_prime else {
        let central = centrality_witness(&f1).is_none() && centrality_witness(&f2).is_none();
        r.push(Check::info(
            "symmetric",
            format!("not symmetric: no ω′ supplied (f1, f2 central: {central})"),
        ));
        return r;
    };
    for (id, f) in [("STPA2.f1_central", &f1), ("STPA2.f2_central", &f2)] {
        match centrality_witness(f) {
            None => r.push(Check::pass(id)),
            Some((p, x)) => r.push(Check::fail(
                id,
                Some(vec![md.hl(p / n), md.hl(p % n), md.al(x)]),
                "does not commute with this elementary map",
            )),
        }
    }
    let e = f1.star(&f2);
    for (id, prod) in [("STPA3.omega_omega_prime", w.star(wp)), ("STPA3.omega_prime_omega", wp.star(w))] {
        match first_pair_difference(&prod, &e, &h) {
            None => r.push(Check::pass(id)),
            Some(cex) => r.push(Check::fail(id, Some(cex), "product differs from f1∗f2")),
        }
    }
    match first_pair_difference(&e.star(wp), wp, &h).or_else(|| first_pair_difference(&wp.star(&e), wp, &h)) {
        None => r.push(Check::pass("STPA3.ideal")),
        Some(cex) => r.push(Check::fail("STPA3.ideal", Some(cex), "ω′ is not fixed by f1∗f2")),
    }
    sweep_rewrite(&mut r, "omega_inverse_rewrite", md, w, wp);
    if h.is_cocommutative() && a.is_commutative() {
        let pa = check_partial_action(md);
        r.absorb("cocommutative", pa);
    }
    r
}

/// `(h1·w(k1,l1))w(h2,k2l2) = w(h1,k1)w(h2k2,l)` on all basis triples.
pub(crate) fn sweep_cocycle(r: &mut Report, id: &str, md: &MeasuringData, w: &ConvMap) -> bool {
    let h = &md.hopf;
    let a = &md.target;
    let n = h.dim();
    r.sweep(
        id,
        (0..n).flat_map(|i| (0..n).flat_map(move |k| (0..n).map(move |l| (i, k, l)))),
        |&(i, k, l)| vec![md.hl(i), md.hl(k), md.hl(l)],
        |&(i, k, l)| {
            let mut lhs = a.zero();
            for (h1, h2, c) in h.delta(i) {
                for (k1, k2, d) in h.delta(k) {
                    for (l1, l2, e) in h.delta(l) {
                        let left = md.act_on(*h1, &w.coeffs[k1 * n + l1]);
                        let right = pair_eval_basis(w, n, *h2, h.basis_mul(*k2, *l2));
                        lhs.axpy(&(&(c * d) * e), &a.mul(&left, &right));
                    }
                }
            }
            let mut rhs = a.zero();
            for (h1, h2, c) in h.delta(i) {
                for (k1, k2, d) in h.delta(k) {
                    let right = pair_eval(w, n, h.basis_mul(*h2, *k2), &h.basis(l));
                    rhs.axpy(&(c * d), &a.mul(&w.coeffs[h1 * n + k1], &right));
                }
            }
            (lhs != rhs).then(|| format!("left {lhs}, right {rhs}"))
        },
    )
}

/// `h·(k·a) = w(h1,k1)(h2k2·a)w′(h3,k3)` on all basis triples.
pub(crate) fn sweep_rewrite(r: &mut Report, id: &str, md: &MeasuringData, w: &ConvMap, wp: &ConvMap) -> bool {
    let h = &md.hopf;
    let a = &md.target;
    let (n, m) = (h.dim(), a.dim());
    r.sweep(
        id,
        (0..n).flat_map(|i| (0..n).flat_map(move |k| (0..m).map(move |x| (i, k, x)))),
        |&(i, k, x)| vec![md.hl(i), md.hl(k), md.al(x)],
        |&(i, k, x)| {
            let lhs = md.act_on(i, md.act_basis(k, x));
            let mut rhs = a.zero();
            for (hs, c) in h.legs(i, 3).iter() {
                for (ks, d) in h.legs(k, 3).iter() {
                    let mid = md.act(h.basis_mul(hs[1], ks[1]), &a.basis(x));
                    let t = a.mul(&a.mul(&w.coeffs[hs[0] * n + ks[0]], &mid), &wp.coeffs[hs[2] * n + ks[2]]);
                    rhs.axpy(&(c * d), &t);
                }
            }
            (lhs != rhs).then(|| format!("h·(k·a) = {lhs}, w(h1,k1)(h2k2·a)w′(h3,k3) = {rhs}"))
        },
    )
}

#[cfg(test)]
mod tests;
