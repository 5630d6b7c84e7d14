use std::fmt::Write as _;
use std::sync::Arc;

use super::{check_twisted, group_cocycle_extension, partial_to_quotient, TwistedPartialActionData};
use crate::error::{Error, Result};
use crate::exactlin::{Bilinear, Matrix, Subspace, VecSpace, Vector};
use crate::groups::{FinGroup, GroupCocycle, SubgroupRef};
use crate::hopf::UnitalAlgebra;
use crate::partial::MeasuringData;
use crate::report::{Check, Report};

/// The partial crossed product `A #_ω H`: the subspace of `A ⊗ H` spanned by
/// `a#h = a(h1·1_A) ⊗ h2`, with its multiplication in the row-reduced basis of that span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProduct {
    pub base: TwistedPartialActionData,
    /// Subspace of `A ⊗ H`, index `a * dim(H) + h`.
    pub space: Subspace,
    pub algebra: UnitalAlgebra,
    pub report: Report,
}

impl CrossedProduct {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// A basis element of the span as a combination of `a⊗h`.
    pub fn describe(&self, v: &Vector) -> String {
        let mut out = String::new();
        for (i, c) in v.nonzero() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "{c}*{}", self.space.ambient.label(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Basis listing followed by the multiplication table in basis coordinates.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.dim());
        for (i, b) in self.space.basis().iter().enumerate() {
            let _ = writeln!(out, "{} = {}", self.algebra.label(i), self.describe(b));
        }
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let p = self.algebra.basis_mul(i, j);
                let mut terms = String::new();
                for (k, c) in p.nonzero() {
                    if !terms.is_empty() {
                        terms.push_str(" + ");
                    }
                    let _ = write!(terms, "{c}*{}", self.algebra.label(k));
                }
                if terms.is_empty() {
                    terms.push('0');
                }
                let _ = writeln!(out, "{} {} -> {terms}", self.algebra.label(i), self.algebra.label(j));
            }
        }
        out
    }
}

/// `(a⊗h)(b⊗k) = a(h1·b)ω(h2,k1) ⊗ h3k2` on the basis of `A ⊗ H`.
fn ambient_product(data: &TwistedPartialActionData) -> Bilinear {
    let md = &data.measuring;
    let h = &md.hopf;
    let a = &md.target;
    let (n, m) = (h.dim(), a.dim());
    let field = md.field();
    let dim = n * m;
    let mut table = Vec::with_capacity(dim * dim);
    for (x, i) in (0..m).flat_map(|x| (0..n).map(move |i| (x, i))) {
        for (y, k) in (0..m).flat_map(|y| (0..n).map(move |k| (y, k))) {
            let mut out = Vector::zeros(field, dim);
            for (hs, c) in h.legs(i, 3).iter() {
                let moved = md.act_basis(hs[0], y);
                if moved.is_zero() {
                    continue;
                }
                let left = a.mul(&a.basis(x), moved);
                for (k1, k2, d) in h.delta(k) {
                    let coeff = a.mul(&left, &data.omega.coeffs[hs[1] * n + k1]);
                    let cd = c * d;
                    for (ai, s) in coeff.nonzero() {
                        for (hj, t) in h.basis_mul(hs[2], *k2).nonzero() {
                            out[ai * n + hj] += &(&cd * &(s * t));
                        }
                    }
                }
            }
            table.push(out);
        }
    }
    Bilinear::new(field, dim, table)
}

/// `a#h = a(h1·1_A) ⊗ h2`.
fn hash_element(md: &MeasuringData, x: usize, i: usize) -> Vector {
    let h = &md.hopf;
    let a = &md.target;
    let n = h.dim();
    let mut out = Vector::zeros(md.field(), n * a.dim());
    for (h1, h2, c) in h.delta(i) {
        let coeff = a.mul(&a.basis(x), md.one_action(*h1));
        for (ai, s) in coeff.nonzero() {
            out[ai * n + h2] += &(c * s);
        }
    }
    out
}

/// Builds `A #_ω H` after checking the twisted partial action axioms, then verifies closure,
/// that `1_A ⊗ 1_H` lies in the span and is its unit, and associativity.
pub fn build_crossed_product(data: &TwistedPartialActionData) -> Result<CrossedProduct> {
    let axioms = check_twisted(data);
    if !axioms.passed() {
        return Err(Error::Verification(Box::new(axioms)));
    }
    let md = &data.measuring;
    let h = &md.hopf;
    let a = &md.target;
    let field = md.field();
    let (n, m) = (h.dim(), a.dim());
    let product = ambient_product(data);
    let gens: Vec<Vector> = (0..m).flat_map(|x| (0..n).map(move |i| (x, i))).map(|(x, i)| hash_element(md, x, i)).collect();
    let ambient = a.space.tensor(&h.algebra.space);
    let space = Subspace::span(field, ambient, &gens);
    let d = space.dim();
    let labels: Vec<String> = (0..d).map(|i| format!("c{i}")).collect();
    let mut report = Report::new("partial crossed product");
    report.push(Check::info("dim", d.to_string()).with_value("dim", d));

    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let p = product.apply(&space.basis()[i], &space.basis()[j]);
            match space.coords(&p) {
                Some(c) => table.push(c),
                None => {
                    report.push(Check::fail(
                        "crossed.closure",
                        Some(vec![labels[i].clone(), labels[j].clone()]),
                        "product leaves the span of a#h",
                    ));
                    return Err(Error::Verification(Box::new(report)));
                }
            }
        }
    }
    report.push(Check::pass("crossed.closure").with_value("cases", d * d));
    let one = crate::exactlin::tensor(&a.unit, h.unit(), field);
    let Some(unit) = space.coords(&one) else {
        report.push(Check::fail("crossed.unit_in_span", None, "1_A ⊗ 1_H is not in the span"));
        return Err(Error::Verification(Box::new(report)));
    };
    report.push(Check::pass("crossed.unit_in_span"));
    let algebra = UnitalAlgebra::new_unchecked(VecSpace::new(labels)?, field, table, unit)?;
    report.absorb("crossed", algebra.verify());
    if !report.passed() {
        return Err(Error::Verification(Box::new(report)));
    }
    Ok(CrossedProduct {
        base: data.clone(),
        space,
        algebra,
        report,
    })
}

/// The algebra spanned by `(h1·1)h2` with `h•k = (h1·1)ω(h2,k1)h3k2`, for data on `A = κ`.
pub fn underline_algebra(data: &TwistedPartialActionData) -> Result<CrossedProduct> {
    if data.target().dim() != 1 {
        return Err(Error::Invalid("the underline algebra needs A = κ".into()));
    }
    build_crossed_product(data)
}

/// `κL` with `u_x u_y = v(x,y) u_{xy}`.
pub fn twisted_group_ring(v: &GroupCocycle) -> Result<UnitalAlgebra> {
    let g = &v.group;
    let n = g.order();
    let labels = (0..n).map(|x| format!("u_{}", g.element_name(x))).collect();
    let table = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| Vector::unit(v.field, n, g.mul(x, y)).scale(v.get(x, y)))
        .collect();
    UnitalAlgebra::new(VecSpace::new(labels)?, v.field, table, Vector::unit(v.field, n, g.identity()))
}

/// An explicit linear map between two algebras on their bases, with the checks that it is an
/// isomorphism of unital algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    /// `(source basis label, image in target coordinates)`.
    pub images: Vec<(String, Vector)>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub report: Report,
}

fn certify(title: &str, source: &UnitalAlgebra, target: &UnitalAlgebra, images: Vec<Vector>) -> IsoCertificate {
    let mut r = Report::new(title);
    let (d, e) = (source.dim(), target.dim());
    let field = source.field;
    let image_of = |v: &Vector| {
        let mut out = target.zero();
        for (i, c) in v.nonzero() {
            out.axpy(c, &images[i]);
        }
        out
    };
    let rank = if d == 0 { 0 } else { Matrix::from_columns(field, e, &images).rank() };
    if d == e && rank == d {
        r.push(Check::pass("iso.bijective").with_value("dim", d));
    } else {
        r.push(Check::fail(
            "iso.bijective",
            None,
            format!("source dim {d}, target dim {e}, rank {rank}"),
        ));
    }
    r.sweep(
        "iso.multiplicative",
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))),
        |&(i, j)| vec![source.label(i).to_string(), source.label(j).to_string()],
        |&(i, j)| {
            let lhs = image_of(source.basis_mul(i, j));
            let rhs = target.mul(&images[i], &images[j]);
            (lhs != rhs).then(|| format!("φ(st) = {lhs}, φ(s)φ(t) = {rhs}"))
        },
    );
    let u = image_of(&source.unit);
    if u == target.unit {
        r.push(Check::pass("iso.unit"));
    } else {
        r.push(Check::fail("iso.unit", None, format!("φ(1) = {u}")));
    }
    IsoCertificate {
        images: (0..d).map(|i| source.label(i).to_string()).zip(images).collect(),
        source_dim: d,
        target_dim: e,
        report: r,
    }
}

/// `_v κL → _ω κG`, `u_x ↦ λ_x x`, where `ω` extends `v` by zero.
pub fn underline_algebra_iso_group(g: &Arc<FinGroup>, l: &SubgroupRef, v: &GroupCocycle) -> Result<IsoCertificate> {
    let data = group_cocycle_extension(g, l, v)?;
    let under = underline_algebra(&data)?;
    let ring = twisted_group_ring(v)?;
    let images = l
        .elements
        .iter()
        .map(|&x| {
            let ambient = Vector::unit(v.field, g.order(), x);
            under.space.coords(&ambient).ok_or_else(|| Error::Invalid(format!("{} is not in the span", g.element_name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(certify("_v κL ≅ underline algebra of κG", &ring, &under.algebra, images))
}

/// `_v (κ G/L)* → _ω (κG)*`, `p_{gL} ↦ Σ_{x∈L} p_{gx}`, with `v` the quotient cocycle of `ω`.
pub fn underline_algebra_iso_dual(data: &TwistedPartialActionData, l: &SubgroupRef) -> Result<IsoCertificate> {
    let qc = partial_to_quotient(data, l)?;
    let g = &l.parent;
    let field = data.hopf().field();
    let global = MeasuringData::global(qc.hopf.clone(), data.target().clone());
    let qdata = TwistedPartialActionData::new(global, qc.v.clone(), Some(qc.v_inv.clone()))?;
    let source = underline_algebra(&qdata)?;
    let target = underline_algebra(data)?;
    let images = source
        .space
        .basis()
        .iter()
        .map(|b| {
            let mut ambient = Vector::zeros(field, g.order());
            for (c, s) in b.nonzero() {
                for &x in &l.elements {
                    ambient[g.mul(qc.quotient.transversal[c], x)] += s;
                }
            }
            target
                .space
                .coords(&ambient)
                .ok_or_else(|| Error::Invalid("image of a coset is not in the span".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(certify("_v (κ G/L)* ≅ underline algebra of (κG)*", &source.algebra, &target.algebra, images))
}
