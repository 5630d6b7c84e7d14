use std::sync::Arc;

use super::TwistedPartialActionData;
use crate::convolution::{idempotents_e_f1_f2, is_central, ConvMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, Vector};
use crate::groups::{builtin_group, FinGroup, GroupCocycle, SubgroupRef};
use crate::hopf::{dual_group_algebra, group_algebra};
use crate::partial::{sweedler_measuring, BaseFieldFunctional};
use crate::report::{Check, Report};

/// Extends a 2-cocycle `v` of `L` by zero to `κG ⊗ κG`, over the measuring `λ^L` of `κG` on `κ`.
/// The cocycle is indexed by positions in `L.elements`. The result is symmetric with `ω′`
/// the pointwise inverse on `L × L`.
pub fn group_cocycle_extension(
    g: &Arc<FinGroup>,
    l: &SubgroupRef,
    v: &GroupCocycle,
) -> Result<TwistedPartialActionData> {
    if v.group.order() != l.order() {
        return Err(Error::DimensionMismatch {
            expected: l.order(),
            found: v.group.order(),
        });
    }
    let check = v.verify();
    if !check.passed() {
        return Err(Error::Verification(Box::new(check)));
    }
    let field = v.field;
    let h = Arc::new(group_algebra(g, field));
    let lambda = (0..g.order())
        .map(|x| if l.contains(x) { field.one() } else { field.zero() })
        .collect();
    let md = BaseFieldFunctional::new(h.clone(), lambda)?.measuring();
    let n = g.order();
    let table = |inverse: bool| {
        ConvMap::from_fn(h.pair_coalgebra(), &md.target, |p| {
            let value = match (l.position(p / n), l.position(p % n)) {
                (Some(i), Some(j)) if inverse => v.get(i, j).inv().expect("cocycle values are nonzero"),
                (Some(i), Some(j)) => v.get(i, j).clone(),
                _ => field.zero(),
            };
            Vector::from_vec(vec![value])
        })
    };
    TwistedPartialActionData::new(md.clone(), table(false), Some(table(true)))?.verified()
}

/// The non-symmetric partial cocycle of the Sweedler algebra over the functional
/// `(1, 0, λx, −λx)`, with `ω(xg,xg) = c`.
///
/// The prescribed values are imposed together with the linear constraints coming from TPA2
/// and TPA3, and the system must have exactly one solution.
pub fn sweedler_partial_cocycle(field: Field, lambda_x: Scalar, c: Scalar) -> Result<TwistedPartialActionData> {
    let f = sweedler_measuring(field, lambda_x.clone(), false)?;
    let h = f.hopf.clone();
    let md = f.measuring();
    let n = h.dim();
    let (one, g, x, xg) = (0, 1, 2, 3);
    let lx2 = &lambda_x * &lambda_x;
    let mut pinned: Vec<((usize, usize), Scalar)> = vec![
        ((one, one), field.one()),
        ((x, one), lambda_x.clone()),
        ((one, x), lambda_x.clone()),
        ((xg, one), -&lambda_x),
        ((one, xg), -&lambda_x),
        ((x, x), lx2.clone()),
        ((x, xg), -&lx2),
        ((xg, x), -&lx2),
        ((xg, xg), c),
    ];
    for k in 0..n {
        pinned.push(((g, k), field.zero()));
        pinned.push(((k, g), field.zero()));
    }

    let lam = |v: &Vector| v.dot(&f.lambda, field);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for ((i, k), value) in pinned {
        rows.push(Vector::unit(field, n * n, i * n + k));
        rhs.push(value);
    }
    for i in 0..n {
        for l in 0..n {
            let mut tpa2 = Vector::zeros(field, n * n);
            let mut tpa3 = Vector::unit(field, n * n, i * n + l);
            for (h1, h2, a) in h.delta(i) {
                for (l1, l2, b) in h.delta(l) {
                    let ab = a * b;
                    let moved = lam(h.basis_mul(*h2, *l2));
                    let inner = &f.lambda[*h1] * &f.lambda[*l1];
                    tpa2[h2 * n + l2] += &(&ab * &inner);
                    tpa2[h1 * n + l1] -= &(&ab * &moved);
                    tpa3[h1 * n + l1] -= &(&ab * &moved);
                }
            }
            rows.push(tpa2);
            rhs.push(field.zero());
            rows.push(tpa3);
            rhs.push(field.zero());
        }
    }
    let system = Matrix::from_rows(field, n * n, rows);
    if system.rank() != n * n {
        return Err(Error::Invalid(format!(
            "Sweedler cocycle not determined: rank {} of {}",
            system.rank(),
            n * n
        )));
    }
    let solution = system
        .solve(&Vector::from_vec(rhs))?
        .ok_or_else(|| Error::Invalid("Sweedler cocycle constraints are inconsistent".into()))?;
    let omega = ConvMap::from_fn(h.pair_coalgebra(), &md.target, |p| Vector::from_vec(vec![solution[p].clone()]));
    TwistedPartialActionData::new(md, omega, None)?.verified()
}

/// For each sampled `λx`, `f1` is not central for the partial functional; for `λ = ε` it is.
pub fn sweedler_symmetric_no_go(field: Field, samples: &[Scalar]) -> Result<Report> {
    let mut r = Report::new("Sweedler symmetric no-go");
    for lx in samples {
        let md = sweedler_measuring(field, lx.clone(), false)?.measuring();
        let (_, f1, _) = idempotents_e_f1_f2(&md);
        let id = format!("f1_not_central.lambda_x={lx}");
        if is_central(&f1) {
            r.push(Check::fail(id, Some(vec![lx.to_string()]), "f1 is central for a partial functional"));
        } else {
            r.push(Check::pass(id));
        }
    }
    let md = sweedler_measuring(field, field.zero(), true)?.measuring();
    let (_, f1, f2) = idempotents_e_f1_f2(&md);
    if is_central(&f1) && is_central(&f2) {
        r.push(Check::pass("f1_central.global"));
    } else {
        r.push(Check::fail("f1_central.global", None, "f1 or f2 not central for λ = ε"));
    }
    Ok(r)
}

/// A point `(x, y)` with `x = ω(p_e,p_e)` and `y = ω′(p_e,p_e)` of the Klein family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinFamilyPoint {
    pub x: Scalar,
    pub y: Scalar,
}

impl KleinFamilyPoint {
    /// `32xy − 6(x+y) + 1`.
    pub fn residual(&self) -> Scalar {
        let f = self.x.field();
        let xy = &self.x * &self.y;
        let s = &self.x + &self.y;
        &(&(&f.int(32) * &xy) - &(&f.int(6) * &s)) + &f.one()
    }

    pub fn on_curve(&self) -> bool {
        self.residual().is_zero()
    }
}

/// `y = (6x − 1)/(32x − 6)`.
pub fn klein_family_point(x: &Scalar) -> Result<KleinFamilyPoint> {
    let f = x.field();
    let den = &(&f.int(32) * x) - &f.int(6);
    let inv = den.inv().ok_or_else(|| Error::Invalid(format!("32x = 6 at x = {x}")))?;
    let y = &(&(&f.int(6) * x) - &f.one()) * &inv;
    Ok(KleinFamilyPoint { x: x.clone(), y })
}

/// The symmetric partial cocycles of `(κK4)*` on `κ` over `L = ⟨a⟩`, parametrized by
/// `x = ω(p_e,p_e)`. `ω` is constant on coset blocks: `x` on `L × L`, `1/4 − x` on the mixed
/// blocks and `x − 1/4` on `bL × bL`. `ω′` has the same shape with `y` in place of `x`.
pub fn klein_family(x: &Scalar) -> Result<(TwistedPartialActionData, KleinFamilyPoint)> {
    let field = x.field();
    let point = klein_family_point(x)?;
    let k4 = Arc::new(builtin_group("K4")?);
    let a = k4.index_of("a").expect("K4 has a");
    let l = SubgroupRef::generated(k4.clone(), &[a]);
    let h = Arc::new(dual_group_algebra(&k4, field));
    let half = field.ratio(1, 2)?;
    let lambda = (0..4).map(|g| if l.contains(g) { half.clone() } else { field.zero() }).collect();
    let md = BaseFieldFunctional::new(h.clone(), lambda)?.measuring();
    let quarter = field.ratio(1, 4)?;
    let block = |t: &Scalar| {
        ConvMap::from_fn(h.pair_coalgebra(), &md.target, |p| {
            let value = match (l.contains(p / 4), l.contains(p % 4)) {
                (true, true) => t.clone(),
                (false, false) => t - &quarter,
                _ => &quarter - t,
            };
            Vector::from_vec(vec![value])
        })
    };
    let data = TwistedPartialActionData::new(md.clone(), block(&point.x), Some(block(&point.y)))?.verified()?;
    Ok((data, point))
}
