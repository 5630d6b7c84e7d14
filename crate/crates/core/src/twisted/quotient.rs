use std::sync::Arc;

use super::{first_pair_difference, TwistedPartialActionData};
use crate::convolution::{conv_inverse, conv_unit, is_l_invariant, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};
use crate::groups::{quotient, FinGroup, Quotient, SubgroupRef};
use crate::hopf::{dual_group_algebra, FinBialgebra};
use crate::partial::{BaseFieldFunctional, MeasuringData};
use crate::report::{Check, Report};

/// A normalized, convolution-invertible 2-cocycle `v` on `(κ G/L)*` with values in `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCocycle {
    pub subgroup: SubgroupRef,
    pub quotient: Quotient,
    pub hopf: Arc<FinBialgebra>,
    pub v: ConvMap,
    pub v_inv: ConvMap,
    pub report: Report,
}

/// Either side of the correspondence between `L`-invariant partial cocycles on `(κG)*`
/// and global cocycles on `(κ G/L)*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correspondence {
    Partial(TwistedPartialActionData),
    Quotient(QuotientCocycle),
}

/// Sends each side to the other.
pub fn quotient_cocycle_correspondence(l: &SubgroupRef, payload: Correspondence) -> Result<Correspondence> {
    match payload {
        Correspondence::Partial(d) => partial_to_quotient(&d, l).map(Correspondence::Quotient),
        Correspondence::Quotient(q) => quotient_to_partial(&q.subgroup, &q.v).map(Correspondence::Partial),
    }
}

fn order_scalar(l: &SubgroupRef, field: Field) -> Result<Scalar> {
    let s = field.int(l.order() as i64);
    if s.is_zero() {
        return Err(Error::Characteristic(field.characteristic()));
    }
    Ok(s)
}

/// The measuring `λ(p_g) = 1/|L|` on `L` of `(κG)*` on `κ`.
pub fn dual_measuring(l: &SubgroupRef, field: Field) -> Result<MeasuringData> {
    let g = &l.parent;
    let inv = order_scalar(l, field)?.inv().expect("nonzero");
    let h = Arc::new(dual_group_algebra(g, field));
    let lambda = (0..g.order()).map(|x| if l.contains(x) { inv.clone() } else { field.zero() }).collect();
    Ok(BaseFieldFunctional::new(h, lambda)?.measuring())
}

/// The trivial partial cocycle over `λ = 1/|L|` on `L`.
pub fn dual_subgroup_data(l: &SubgroupRef, field: Field) -> Result<TwistedPartialActionData> {
    TwistedPartialActionData::trivial(dual_measuring(l, field)?).verified()
}

/// `Σ_s ω(p_{hs⁻¹},p_{ks⁻¹})ω(p_g,p_s) = Σ_s ω(p_{gs⁻¹},p_{hs⁻¹})ω(p_s,p_k)` for all `g, h, k`.
pub fn check_par_glob_cocycle(omega: &ConvMap, g: &FinGroup) -> Report {
    let n = g.order();
    let a = &omega.target;
    let w = |x: usize, y: usize| &omega.coeffs[x * n + y];
    let name = |x: usize| g.element_name(x).to_string();
    let mut r = Report::new("global cocycle condition on the quotient");
    r.sweep(
        "ParGlobCocycle",
        (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z)))),
        |&(x, y, z)| vec![name(x), name(y), name(z)],
        |&(x, y, z)| {
            let mut lhs = a.zero();
            let mut rhs = a.zero();
            for s in 0..n {
                let si = g.inv(s);
                lhs = lhs.add(&a.mul(w(g.mul(y, si), g.mul(z, si)), w(x, s)));
                rhs = rhs.add(&a.mul(w(g.mul(x, si), g.mul(y, si)), w(s, z)));
            }
            (lhs != rhs).then(|| format!("left {lhs}, right {rhs}"))
        },
    );
    r
}

/// `v(p_{gL},p_{hL}) = |L|² ω(p_g,p_h)`, after checking `L`-invariance and the global cocycle
/// condition; `v` is checked to be normalized and convolution invertible.
pub fn partial_to_quotient(data: &TwistedPartialActionData, l: &SubgroupRef) -> Result<QuotientCocycle> {
    let g = &l.parent;
    let field = data.hopf().field();
    if data.hopf().dim() != g.order() || data.target().dim() != 1 {
        return Err(Error::Invalid("expected (κG)* acting on κ".into()));
    }
    if !l.is_central() {
        return Err(Error::Invalid(format!("{} is not central", l.label())));
    }
    let size = order_scalar(l, field)?;
    let mut report = Report::new(format!("quotient correspondence for L = {}", l.label()));
    if !is_l_invariant(&data.omega, l) {
        return Err(Error::Invalid("ω is not L-invariant".into()));
    }
    report.push(Check::pass("L_invariant"));
    let pg = check_par_glob_cocycle(&data.omega, g);
    if !pg.passed() {
        return Err(Error::Verification(Box::new(pg)));
    }
    report.absorb("", pg);

    let q = quotient(g, l)?;
    let hq = Arc::new(dual_group_algebra(&q.group, field));
    let c = q.group.order();
    let n = g.order();
    let sq = &size * &size;
    let v = ConvMap::from_fn(hq.pair_coalgebra(), data.target(), |p| {
        data.omega.coeffs[q.transversal[p / c] * n + q.transversal[p % c]].scale(&sq)
    });
    let v_inv = finish_quotient(&hq, &v, &mut report)?;
    Ok(QuotientCocycle {
        subgroup: l.clone(),
        quotient: q,
        hopf: hq,
        v,
        v_inv,
        report,
    })
}

fn finish_quotient(hq: &Arc<FinBialgebra>, v: &ConvMap, report: &mut Report) -> Result<ConvMap> {
    let c = hq.dim();
    let unit = hq.unit();
    let normalized = (0..c).find(|&i| {
        let expect = v.target.unit.scale(hq.counit(i));
        super::pair_eval_basis(v, c, i, unit) != expect || super::pair_eval(v, c, unit, &hq.basis(i)) != expect
    });
    match normalized {
        None => report.push(Check::pass("v.normalized")),
        Some(i) => {
            report.push(Check::fail("v.normalized", Some(vec![hq.label(i).into()]), "v(h,1) or v(1,h) is not ε(h)"));
            return Err(Error::Verification(Box::new(report.clone())));
        }
    }
    let v_inv = conv_inverse(v).ok_or_else(|| Error::NotInvertible("v".into()))?;
    let unit_map = conv_unit(&v.source, &v.target);
    match first_pair_difference(&v.star(&v_inv), &unit_map, hq) {
        None => report.push(Check::pass("v.invertible")),
        Some(cex) => {
            report.push(Check::fail("v.invertible", Some(cex), "v∗v⁻¹ is not the unit"));
            return Err(Error::Verification(Box::new(report.clone())));
        }
    }
    Ok(v_inv)
}

/// `ω(p_g,p_h) = v(p_{gL},p_{hL})/|L|²` and `ω′` likewise from `v⁻¹`, over `λ = 1/|L|` on `L`.
pub fn quotient_to_partial(l: &SubgroupRef, v: &ConvMap) -> Result<TwistedPartialActionData> {
    let g = &l.parent;
    let field = v.field();
    let q = quotient(g, l)?;
    let c = q.group.order();
    if v.source.dim() != c * c || v.target.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: c * c,
            found: v.source.dim(),
        });
    }
    let hq = Arc::new(dual_group_algebra(&q.group, field));
    let mut report = Report::new("quotient cocycle");
    let v_inv = finish_quotient(&hq, v, &mut report)?;
    let md = dual_measuring(l, field)?;
    let size = order_scalar(l, field)?;
    let inv_sq = (&size * &size).inv().expect("nonzero");
    let n = g.order();
    let lift = |w: &ConvMap| {
        ConvMap::from_fn(md.hopf.pair_coalgebra(), &md.target, |p| {
            w.coeffs[q.projection[p / n] * c + q.projection[p % n]].scale(&inv_sq)
        })
    };
    let omega = lift(v);
    let omega_prime = lift(&v_inv);
    TwistedPartialActionData::new(md, omega, Some(omega_prime))?.verified()
}
