//! Globalization of symmetric twisted partial actions through an auxiliary map `w̃`.

use crate::convolution::{conv_inverse, conv_unit, ConvMap};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::twisted::{first_pair_difference, pair_eval, pair_eval_basis, TwistedPartialActionData};

mod build;
mod closure;
mod klein;

pub use build::{build_globalization, extract_wtilde, hom_algebra, GlobalizationResult};
pub use closure::cocommutative_closure_check;
pub use klein::{klein_wtilde_table, verify_klein_wtilde_equations};

/// A normalized convolution-invertible `w̃: H ⊗ H → A` with its inverse and the checks it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WTilde {
    pub map: ConvMap,
    pub inverse: ConvMap,
    pub report: Report,
}

/// Every identity required of `w̃`, recorded without stopping at the first failure.
/// Returns the inverse when one exists.
pub fn wtilde_report(data: &TwistedPartialActionData, w: &ConvMap) -> (Report, Option<ConvMap>) {
    let md = &data.measuring;
    let h = data.hopf().clone();
    let a = data.target().clone();
    let n = h.dim();
    let mut r = Report::new("auxiliary map w̃");
    if w.source.as_ref() != h.pair_coalgebra().as_ref() || w.target != *data.target() {
        r.push(Check::fail("wtilde.shape", None, "w̃ must map H ⊗ H into A"));
        return (r, None);
    }
    let inverse = conv_inverse(w);
    match &inverse {
        Some(_) => r.push(Check::pass("wtilde.invertible")),
        None => r.push(Check::fail("wtilde.invertible", None, "no two-sided convolution inverse")),
    }
    r.sweep(
        "wtilde.normalized",
        0..n,
        |&i| vec![md.hl(i)],
        |&i| {
            let expect = a.unit.scale(h.counit(i));
            let right = pair_eval_basis(w, n, i, h.unit());
            let left = pair_eval(w, n, h.unit(), &h.basis(i));
            (right != expect || left != expect).then(|| format!("w̃(h,1) = {right}, w̃(1,h) = {left}"))
        },
    );
    r.sweep(
        "wtil",
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
            for (hs, c) in h.legs(i, 3).iter() {
                for (k1, k2, d) in h.delta(k) {
                    let t = a.mul(md.one_action(hs[0]), &w.coeffs[hs[1] * n + k1]);
                    let t = a.mul(&t, &pair_eval(w, n, h.basis_mul(hs[2], *k2), &h.basis(l)));
                    rhs.axpy(&(c * d), &t);
                }
            }
            (lhs != rhs).then(|| format!("left {lhs}, right {rhs}"))
        },
    );
    let reproduce = |r: &mut Report, id: &str, map: &ConvMap, expect: &ConvMap| {
        r.sweep(
            id,
            (0..n).flat_map(|i| (0..n).map(move |k| (i, k))),
            |&(i, k)| vec![md.hl(i), md.hl(k)],
            |&(i, k)| {
                let mut got = a.zero();
                for (hs, c) in h.legs(i, 3).iter() {
                    for (k1, k2, d) in h.delta(k) {
                        let t = a.mul(md.one_action(hs[0]), &md.one_action_of(h.basis_mul(hs[1], *k1)));
                        got.axpy(&(c * d), &a.mul(&t, &map.coeffs[hs[2] * n + k2]));
                    }
                }
                let want = &expect.coeffs[i * n + k];
                (&got != want).then(|| format!("expected {want}, got {got}"))
            },
        );
    };
    reproduce(&mut r, "globcocycle1", w, &data.omega);
    match (&inverse, &data.omega_prime) {
        (Some(inv), Some(wp)) => reproduce(&mut r, "globcocycle2", inv, wp),
        (_, None) => r.push(Check::fail("globcocycle2", None, "the data has no ω′")),
        (None, _) => r.push(Check::fail("globcocycle2", None, "w̃ has no inverse")),
    }
    (r, inverse)
}

/// Certifies `w` as an auxiliary map for symmetric data: invertible, normalized, satisfying
/// the `w̃` identity and reproducing `ω` and `ω′`.
pub fn check_wtilde(data: &TwistedPartialActionData, w: &ConvMap) -> Result<WTilde> {
    if data.omega_prime.is_none() {
        return Err(Error::Invalid("globalization needs symmetric data".into()));
    }
    let (report, inverse) = wtilde_report(data, w);
    let Some(inverse) = inverse else {
        return Err(Error::NotInvertible("w̃".into()));
    };
    if !report.passed() {
        return Err(Error::Verification(Box::new(report)));
    }
    Ok(WTilde {
        map: w.clone(),
        inverse,
        report,
    })
}

/// `w̃∗w̃⁻¹ = w̃⁻¹∗w̃ = ε⊗ε·1_A`.
pub(crate) fn inverse_mismatch(w: &ConvMap, inv: &ConvMap, data: &TwistedPartialActionData) -> Option<Vec<String>> {
    let unit = conv_unit(&w.source, &w.target);
    first_pair_difference(&w.star(inv), &unit, data.hopf())
        .or_else(|| first_pair_difference(&inv.star(w), &unit, data.hopf()))
}

#[cfg(test)]
mod tests;
