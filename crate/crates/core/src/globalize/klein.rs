use std::sync::Arc;

use super::wtilde_report;
use crate::convolution::ConvMap;
use crate::error::Result;
use crate::exactlin::{Field, Scalar, Vector};
use crate::groups::{builtin_group, FinGroup, SubgroupRef};
use crate::hopf::{dual_group_algebra, UnitalAlgebra};
use crate::report::{Check, Report};
use crate::twisted::TwistedPartialActionData;

/// `X_{g,h} = w̃(p_g, p_h)` on `(κK4)*`: `1/2` at `(e,e)`, `(e,b)`, `(b,e)`, `−1/2` at `(b,b)`,
/// zero elsewhere. Returns `(X, Y)` with `Y = X`.
pub fn klein_wtilde_table(field: Field) -> Result<(ConvMap, ConvMap)> {
    let k4 = builtin_group("K4")?;
    let h = dual_group_algebra(&k4, field);
    let target = Arc::new(UnitalAlgebra::base_field(field));
    let half = field.ratio(1, 2)?;
    let b = k4.index_of("b").expect("K4 has b");
    let e = k4.identity();
    let x = ConvMap::from_fn(h.pair_coalgebra(), &target, |p| {
        let value = match (p / 4, p % 4) {
            (g, k) if g == b && k == b => -&half,
            (g, k) if (g == e || g == b) && (k == e || k == b) => half.clone(),
            _ => field.zero(),
        };
        Vector::from_vec(vec![value])
    });
    Ok((x.clone(), x))
}

/// The scalar equations on the tables `X = w̃` and `Y = w̃⁻¹` for `(κK4)*` over `L = ⟨a⟩`,
/// followed by the general `w̃` checks against `data`.
pub fn verify_klein_wtilde_equations(data: &TwistedPartialActionData, x: &ConvMap, y: &ConvMap) -> Result<Report> {
    let g: Arc<FinGroup> = Arc::new(builtin_group("K4")?);
    let field = data.hopf().field();
    let l = SubgroupRef::generated(g.clone(), &[g.index_of("a").expect("K4 has a")]);
    let n = g.order();
    let mut r = Report::new("Klein w̃ equations");
    if data.hopf().dim() != n || data.target().dim() != 1 || x.coeffs.len() != n * n || y.coeffs.len() != n * n {
        r.push(Check::fail("shape", None, "expects (κK4)* acting on κ"));
        return Ok(r);
    }
    let name = |i: usize| g.element_name(i).to_string();
    let xv = |a: usize, b: usize| x.coeffs[a * n + b][0].clone();
    let yv = |a: usize, b: usize| y.coeffs[a * n + b][0].clone();
    let eps = |a: usize| if a == g.identity() { field.one() } else { field.zero() };
    let sum = |it: &mut dyn Iterator<Item = Scalar>| it.fold(field.zero(), |acc, v| &acc + &v);
    let (inv, mul) = (|a: usize| g.inv(a), |a: usize, b: usize| g.mul(a, b));

    r.sweep(
        "equation1",
        0..n,
        |&k| vec![name(k)],
        |&k| {
            let s = sum(&mut (0..n).map(|a| xv(a, k)));
            (s != eps(k)).then(|| format!("column sum {s}"))
        },
    );
    r.sweep(
        "equation1.2",
        0..n,
        |&a| vec![name(a)],
        |&a| {
            let s = sum(&mut (0..n).map(|k| xv(a, k)));
            (s != eps(a)).then(|| format!("row sum {s}"))
        },
    );
    r.sweep(
        "bilinear",
        (0..n).flat_map(|f| (0..n).flat_map(move |a| (0..n).map(move |b| (f, a, b)))),
        |&(f, a, b)| vec![name(f), name(a), name(b)],
        |&(f, a, b)| {
            let lhs = sum(&mut l.elements.iter().flat_map(|&rr| {
                (0..n).map(move |s| &xv(s, mul(mul(f, inv(b)), s)) * &xv(mul(inv(rr), a), mul(inv(s), b)))
            }));
            let rhs = sum(&mut l.elements.iter().flat_map(|&xx| {
                (0..n).map(move |yy| &xv(mul(inv(xx), yy), mul(mul(b, inv(a)), yy)) * &xv(mul(inv(yy), a), f))
            }));
            (lhs != rhs).then(|| format!("left {lhs}, right {rhs}"))
        },
    );
    r.sweep(
        "equation3",
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))),
        |&(a, b)| vec![name(a), name(b)],
        |&(a, b)| {
            let s = sum(&mut (0..n).flat_map(|rr| (0..n).map(move |s| &xv(rr, s) * &yv(mul(inv(rr), a), mul(inv(s), b)))));
            (s != &eps(a) * &eps(b)).then(|| format!("sum {s}"))
        },
    );
    let quarter = field.ratio(1, 4)?;
    let Some(omega_prime) = data.omega_prime.as_ref() else {
        r.push(Check::fail("equation2.1", None, "the data has no ω′"));
        return Ok(r);
    };
    for (id, table, expect) in [("equation2", &xv as &dyn Fn(usize, usize) -> Scalar, &data.omega), ("equation2.1", &yv, omega_prime)] {
        r.sweep(
            id,
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))),
            |&(a, b)| vec![name(a), name(b)],
            |&(a, b)| {
                let s = sum(&mut l.elements.iter().flat_map(|&rr| {
                    l.elements.iter().map(move |&s| table(mul(inv(rr), a), mul(inv(s), b)))
                }));
                let got = &quarter * &s;
                let want = &expect.coeffs[a * n + b][0];
                (&got != want).then(|| format!("block sum gives {got}, cocycle has {want}"))
            },
        );
    }
    let e = g.identity();
    let omega_ee = &data.omega.coeffs[e * n + e][0];
    r.push(Check::info("omega_ee", omega_ee.to_string()).with_value("value", omega_ee));
    let (general, _) = wtilde_report(data, x);
    r.absorb("general", general);
    Ok(r)
}
