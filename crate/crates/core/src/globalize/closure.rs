use super::GlobalizationResult;
use crate::convolution::ConvMap;
use crate::error::{Error, Result};
use crate::exactlin::{Subspace, VecSpace, Vector};
use crate::report::{Check, Report};

/// For cocommutative `H`: `span{h▷φ(a)}` is a subalgebra, the elements
/// `θ(h,k,l) = u⁻¹(S(h3),h4)∗(S(h2)▷u(k,l))∗u(S(h1),h5)` satisfy `h1▷θ(h2,k,l) = ε(h)u(k,l)`,
/// and `u^{±1}(k,l)` multiply that span into itself.
pub fn cocommutative_closure_check(g: &GlobalizationResult) -> Result<Report> {
    let h = g.hopf().clone();
    if !h.is_cocommutative() {
        return Err(Error::Invalid("H is not cocommutative".into()));
    }
    if h.antipode.is_none() {
        return Err(Error::Invalid("H has no antipode".into()));
    }
    let field = h.field();
    let n = h.dim();
    let m = g.data.target().dim();
    let dim = g.ambient.dim();
    let hl = |i: usize| h.label(i).to_string();
    let s = |i: usize| h.antipode_of(&h.basis(i)).expect("antipode");
    let mut r = Report::new("cocommutative closure");

    let gens: Vec<Vector> = (0..n)
        .flat_map(|i| (0..m).map(move |x| (i, x)))
        .map(|(i, x)| g.act(&h.basis(i), &g.phi[x]).flatten())
        .collect();
    let span = Subspace::span(field, VecSpace::indexed(dim), &gens);
    let d = span.dim();
    r.sweep(
        "product",
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))),
        |&(i, j)| vec![format!("s{i}"), format!("s{j}")],
        |&(i, j)| {
            let p = g.as_map(&span.basis()[i]).star(&g.as_map(&span.basis()[j]));
            (!span.contains(&p.flatten())).then(|| "product leaves span{h▷φ(a)}".to_string())
        },
    );

    let theta = |i: usize, k: usize, l: usize| -> ConvMap {
        let mut out = g.zero();
        let ukl = &g.u[k * n + l];
        for (hs, c) in h.legs(i, 5).iter() {
            let left = g.u_inv_of(&s(hs[2]), &h.basis(hs[3]));
            let mid = g.act(&s(hs[1]), ukl);
            let right = g.u_of(&s(hs[0]), &h.basis(hs[4]));
            out = out.add(&left.star(&mid).star(&right).scale(c));
        }
        out
    };
    r.sweep(
        "theta",
        (0..n).flat_map(|i| (0..n).flat_map(move |k| (0..n).map(move |l| (i, k, l)))),
        |&(i, k, l)| vec![hl(i), hl(k), hl(l)],
        |&(i, k, l)| {
            let mut lhs = g.zero();
            for (h1, h2, c) in h.delta(i) {
                lhs = lhs.add(&g.act(&h.basis(*h1), &theta(*h2, k, l)).scale(c));
            }
            let rhs = g.u[k * n + l].scale(h.counit(i));
            (lhs != rhs).then(|| "h1▷θ(h2,k,l) differs from ε(h)u(k,l)".to_string())
        },
    );
    r.sweep(
        "multiplier",
        (0..d).flat_map(|j| (0..n * n).map(move |p| (j, p))),
        |&(j, p)| vec![format!("s{j}"), hl(p / n), hl(p % n)],
        |&(j, p)| {
            let sj = g.as_map(&span.basis()[j]);
            let inside = [&g.u[p], &g.u_inv[p]]
                .iter()
                .all(|u| span.contains(&sj.star(u).flatten()) && span.contains(&u.star(&sj).flatten()));
            (!inside).then(|| "s∗u or u∗s leaves span{h▷φ(a)}".to_string())
        },
    );
    r.push(Check::info("span_dim", format!("{d}")).with_value("dim", d));
    Ok(r)
}
