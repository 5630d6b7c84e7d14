use std::sync::Arc;

use super::{check_twisted, first_pair_difference, pair_eval, pair_eval_basis, sweep_cocycle, sweep_rewrite};
use super::TwistedPartialActionData;
use crate::convolution::{conv_unit, idempotents_e_f1_f2, is_central, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::{Subspace, VecSpace, Vector};
use crate::partial::{check_measuring, MeasuringData};
use crate::report::{Check, Report};

/// A twisted `H`-module algebra `B`: a measuring with `h·1_B = ε(h)1_B` and a normalized,
/// convolution invertible cocycle `u: H ⊗ H → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalTwistedAction {
    pub measuring: MeasuringData,
    pub u: ConvMap,
    pub u_inv: ConvMap,
}

impl GlobalTwistedAction {
    pub fn new(measuring: MeasuringData, u: ConvMap, u_inv: ConvMap) -> Result<Self> {
        let pair = measuring.hopf.pair_coalgebra();
        for w in [&u, &u_inv] {
            if w.source.as_ref() != pair.as_ref() || w.target != measuring.target {
                return Err(Error::Invalid("cocycle must map H ⊗ H into B".into()));
            }
        }
        Ok(GlobalTwistedAction { measuring, u, u_inv })
    }

    /// Measuring axioms, `h·1 = ε(h)1`, normalization and invertibility of `u`, the law of
    /// composition and the cocycle law.
    pub fn check(&self) -> Report {
        let md = &self.measuring;
        let h = &md.hopf;
        let b = &md.target;
        let n = h.dim();
        let mut r = Report::new("twisted module algebra");
        r.absorb("global", check_measuring(md));
        r.sweep(
            "global.unit_action",
            0..n,
            |&i| vec![md.hl(i)],
            |&i| {
                let expect = b.unit.scale(h.counit(i));
                (md.one_action(i) != &expect).then(|| format!("h·1 = {}", md.one_action(i)))
            },
        );
        r.sweep(
            "u.normalized",
            0..n,
            |&i| vec![md.hl(i)],
            |&i| {
                let expect = b.unit.scale(h.counit(i));
                let right = pair_eval_basis(&self.u, n, i, h.unit());
                let left = pair_eval(&self.u, n, h.unit(), &h.basis(i));
                (right != expect || left != expect).then(|| format!("u(h,1) = {right}, u(1,h) = {left}"))
            },
        );
        let unit = conv_unit(h.pair_coalgebra(), b);
        let bad = first_pair_difference(&self.u.star(&self.u_inv), &unit, h)
            .or_else(|| first_pair_difference(&self.u_inv.star(&self.u), &unit, h));
        match bad {
            None => r.push(Check::pass("u.inverse")),
            Some(cex) => r.push(Check::fail("u.inverse", Some(cex), "u∗u⁻¹ or u⁻¹∗u is not the unit")),
        }
        sweep_rewrite(&mut r, "law_of_composition", md, &self.u, &self.u_inv);
        sweep_cocycle(&mut r, "law_of_cocycles", md, &self.u);
        r
    }
}

/// The partial data induced on a unital ideal `A = 1_A B`, with `embedding` the basis of `A`
/// as elements of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub data: TwistedPartialActionData,
    pub embedding: Vec<Vector>,
    pub report: Report,
}

impl Restriction {
    /// Coordinates in `A` of an element of `B` lying in `A`.
    pub fn coords(&self, b: &Vector) -> Option<Vector> {
        let field = self.data.hopf().field();
        let dim_b = b.len();
        Subspace::span(field, VecSpace::indexed(dim_b), &self.embedding).coords(b)
    }
}

/// Restricts a twisted module algebra `B` to `A = 1_A B` for a central idempotent `1_A`:
/// `h·a = 1_A(h·a)`, `ω(h,k) = (h1·1_A)u(h2,k1)(h3k2·1_A)` and
/// `ω′(h,k) = (h1k1·1_A)u⁻¹(h2,k2)(h3·1_A)`. `ω′` is kept only when `f1`, `f2` are central.
pub fn restrict_global_twisted(glob: &GlobalTwistedAction, idempotent: &Vector) -> Result<Restriction> {
    let global = glob.check();
    if !global.passed() {
        return Err(Error::Verification(Box::new(global)));
    }
    let md = &glob.measuring;
    let h = md.hopf.clone();
    let b = md.target.clone();
    let field = md.field();
    let (n, dim_b) = (h.dim(), b.dim());
    let e = idempotent;
    if e.len() != dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_b,
            found: e.len(),
        });
    }
    if &b.mul(e, e) != e {
        return Err(Error::Invalid("1_A is not idempotent".into()));
    }
    if (0..dim_b).any(|j| b.mul(e, &b.basis(j)) != b.mul(&b.basis(j), e)) {
        return Err(Error::Invalid("1_A is not central".into()));
    }
    let gens: Vec<Vector> = (0..dim_b).map(|j| b.mul(e, &b.basis(j))).collect();
    let space = Subspace::span(field, VecSpace::indexed(dim_b), &gens);
    let basis = space.basis().to_vec();
    let d = basis.len();
    let coords = |v: &Vector| space.coords(v).expect("element of 1_A B");
    let table = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| coords(&b.mul(&basis[i], &basis[j])))
        .collect();
    let labels = (0..d).map(|i| format!("r{i}")).collect();
    let algebra = Arc::new(crate::hopf::UnitalAlgebra::new(VecSpace::new(labels)?, field, table, coords(e))?);
    let cut = |v: &Vector| b.mul(e, v);
    let action = (0..n)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| coords(&cut(&md.act_on(i, &basis[j]))))
        .collect();
    let restricted = MeasuringData::new(h.clone(), algebra.clone(), action)?;

    let one_a = |x: &Vector| cut(&md.act(x, e));
    let omega = ConvMap::from_fn(h.pair_coalgebra(), &algebra, |p| {
        let (i, k) = (p / n, p % n);
        let mut out = b.zero();
        for (hs, c) in h.legs(i, 3).iter() {
            for (k1, k2, d) in h.delta(k) {
                let left = one_a(&h.basis(hs[0]));
                let right = one_a(h.basis_mul(hs[2], *k2));
                let t = b.mul(&b.mul(&left, &glob.u.coeffs[hs[1] * n + k1]), &right);
                out.axpy(&(c * d), &t);
            }
        }
        coords(&out)
    });
    let omega_prime = ConvMap::from_fn(h.pair_coalgebra(), &algebra, |p| {
        let (i, k) = (p / n, p % n);
        let mut out = b.zero();
        for (hs, c) in h.legs(i, 3).iter() {
            for (ks, d) in h.legs(k, 2).iter() {
                let left = one_a(h.basis_mul(hs[0], ks[0]));
                let right = one_a(&h.basis(hs[2]));
                let t = b.mul(&b.mul(&left, &glob.u_inv.coeffs[hs[1] * n + ks[1]]), &right);
                out.axpy(&(c * d), &t);
            }
        }
        coords(&out)
    });
    let (_, f1, f2) = idempotents_e_f1_f2(&restricted);
    let symmetric = is_central(&f1) && is_central(&f2);
    let data = TwistedPartialActionData::new(restricted, omega, symmetric.then_some(omega_prime))?;
    let mut report = global;
    report.absorb("restricted", check_twisted(&data));
    if !report.passed() {
        return Err(Error::Verification(Box::new(report)));
    }
    Ok(Restriction {
        data,
        embedding: basis,
        report,
    })
}
