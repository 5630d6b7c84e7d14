//! The convolution algebra `Hom(C, A)` of a coalgebra `C` and a unital algebra `A`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, Subspace, Vector, VecSpace};
use crate::groups::SubgroupRef;
use crate::hopf::{Coalgebra, UnitalAlgebra};
use crate::partial::MeasuringData;

/// A linear map `C → A`, stored as the image of each basis element of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvMap {
    pub source: Arc<Coalgebra>,
    pub target: Arc<UnitalAlgebra>,
    pub coeffs: Vec<Vector>,
}

impl ConvMap {
    pub fn new(source: Arc<Coalgebra>, target: Arc<UnitalAlgebra>, coeffs: Vec<Vector>) -> Result<Self> {
        if coeffs.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: coeffs.len(),
            });
        }
        if let Some(v) = coeffs.iter().find(|v| v.len() != target.dim()) {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: v.len(),
            });
        }
        Ok(ConvMap { source, target, coeffs })
    }

    pub fn from_fn(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>, f: impl FnMut(usize) -> Vector) -> Self {
        let coeffs = (0..source.dim()).map(f).collect();
        ConvMap {
            source: source.clone(),
            target: target.clone(),
            coeffs,
        }
    }

    pub fn zero(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>) -> Self {
        Self::from_fn(source, target, |_| target.zero())
    }

    /// The map sending basis element `c` to basis element `a` and everything else to zero.
    pub fn elementary(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>, c: usize, a: usize) -> Self {
        Self::from_fn(source, target, |i| if i == c { target.basis(a) } else { target.zero() })
    }

    pub fn field(&self) -> Field {
        self.target.field
    }

    pub fn get(&self, c: usize) -> &Vector {
        &self.coeffs[c]
    }

    /// Value on an arbitrary element of `C`.
    pub fn eval(&self, v: &Vector) -> Vector {
        let mut out = self.target.zero();
        for (i, c) in v.nonzero() {
            out.axpy(c, &self.coeffs[i]);
        }
        out
    }

    pub fn add(&self, other: &ConvMap) -> ConvMap {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ConvMap) -> ConvMap {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Scalar) -> ConvMap {
        ConvMap {
            source: self.source.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().map(|v| v.scale(c)).collect(),
        }
    }

    fn zip(&self, other: &ConvMap, op: impl Fn(&Vector, &Vector) -> Vector) -> ConvMap {
        assert!(self.same_shape(other), "convolution maps with different source or target");
        ConvMap {
            source: self.source.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn same_shape(&self, other: &ConvMap) -> bool {
        self.source == other.source && self.target == other.target
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Vector::is_zero)
    }

    /// Coordinates in the elementary basis, index `c * dim(A) + a`.
    pub fn flatten(&self) -> Vector {
        self.coeffs.iter().flat_map(|v| v.iter().cloned()).collect()
    }

    pub fn unflatten(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>, v: &Vector) -> Self {
        let m = target.dim();
        Self::from_fn(source, target, |c| v.as_slice()[c * m..(c + 1) * m].iter().cloned().collect())
    }

    /// Panicking form of [`conv_mul`] for maps already known to share source and target.
    pub fn star(&self, other: &ConvMap) -> ConvMap {
        conv_mul(self, other).expect("matching convolution maps")
    }

    pub fn elementary_basis(&self) -> Vec<ConvMap> {
        let (n, m) = (self.source.dim(), self.target.dim());
        (0..n)
            .flat_map(|c| (0..m).map(move |a| (c, a)))
            .map(|(c, a)| Self::elementary(&self.source, &self.target, c, a))
            .collect()
    }
}

impl fmt::Display for ConvMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                writeln!(f, "{} -> {v}", self.source.label(c))?;
            }
        }
        Ok(())
    }
}

/// `(f∗g)(c) = Σ f(c₁) g(c₂)`.
pub fn conv_mul(f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    if !f.same_shape(g) {
        return Err(Error::Invalid("convolution of maps with different source or target".into()));
    }
    let a = &f.target;
    let coeffs = (0..f.source.dim())
        .map(|c| {
            let mut out = a.zero();
            for (j, k, coef) in f.source.delta(c) {
                if f.coeffs[*j].is_zero() || g.coeffs[*k].is_zero() {
                    continue;
                }
                out.axpy(coef, &a.mul(&f.coeffs[*j], &g.coeffs[*k]));
            }
            out
        })
        .collect();
    Ok(ConvMap {
        source: f.source.clone(),
        target: f.target.clone(),
        coeffs,
    })
}

/// `c ↦ ε(c) 1_A`.
pub fn conv_unit(source: &Arc<Coalgebra>, target: &Arc<UnitalAlgebra>) -> ConvMap {
    ConvMap::from_fn(source, target, |c| target.unit.scale(source.counit_of(c)))
}

/// Two-sided convolution inverse, found by solving `f∗x = 1` and `x∗f = 1` as one system.
pub fn conv_inverse(f: &ConvMap) -> Option<ConvMap> {
    let unit = conv_unit(&f.source, &f.target);
    let basis = f.elementary_basis();
    solve_two_sided(f, &basis, &unit)
}

/// Finds `x` in the span of `basis` with `f∗x = target = x∗f`.
fn solve_two_sided(f: &ConvMap, basis: &[ConvMap], target: &ConvMap) -> Option<ConvMap> {
    let field = f.field();
    let n = target.flatten().len();
    let mut columns = Vec::with_capacity(basis.len());
    for b in basis {
        let mut col = f.star(b).flatten().into_inner();
        col.extend(b.star(f).flatten().into_inner());
        columns.push(Vector::from_vec(col));
    }
    let mut rhs = target.flatten().into_inner();
    rhs.extend(target.flatten().into_inner());
    let m = Matrix::from_columns(field, 2 * n, &columns);
    let t = m.solve(&Vector::from_vec(rhs)).expect("shapes agree")?;
    let mut x = ConvMap::zero(&f.source, &f.target);
    for (c, b) in t.iter().zip(basis) {
        if !c.is_zero() {
            x = x.add(&b.scale(c));
        }
    }
    Some(x)
}

/// An elementary map that does not commute with `f`, if any. Elementary maps span
/// `Hom(C, A)`, so `f` is central exactly when this returns `None`.
pub fn centrality_witness(f: &ConvMap) -> Option<(usize, usize)> {
    let m = f.target.dim();
    f.elementary_basis()
        .iter()
        .enumerate()
        .find(|(_, e)| f.star(e) != e.star(f))
        .map(|(i, _)| (i / m, i % m))
}

pub fn is_central(f: &ConvMap) -> bool {
    centrality_witness(f).is_none()
}

/// The ideal `⟨f1∗f2⟩`: the span of `(f1∗f2)∗E` over elementary maps `E`.
pub fn ideal_subspace(f1: &ConvMap, f2: &ConvMap) -> Subspace {
    let e = f1.star(f2);
    let gens: Vec<Vector> = e.elementary_basis().iter().map(|b| e.star(b).flatten()).collect();
    let n = gens.first().map_or(0, Vector::len);
    Subspace::span(e.field(), VecSpace::indexed(n), &gens)
}

/// Solves for `ω′ ∈ ⟨f1∗f2⟩` with `ω∗ω′ = ω′∗ω = f1∗f2`.
pub fn ideal_inverse(omega: &ConvMap, f1: &ConvMap, f2: &ConvMap) -> Result<Option<ConvMap>> {
    if !is_central(f1) {
        return Err(Error::Invalid("f1 is not central".into()));
    }
    if !is_central(f2) {
        return Err(Error::Invalid("f2 is not central".into()));
    }
    let e = f1.star(f2);
    let ideal = ideal_subspace(f1, f2);
    let basis: Vec<ConvMap> = ideal
        .basis()
        .iter()
        .map(|v| ConvMap::unflatten(&omega.source, &omega.target, v))
        .collect();
    Ok(solve_two_sided(omega, &basis, &e))
}

/// `ω(p_g,p_h) = ω(p_{kg},p_{lh}) = ω(p_{gk},p_{hl})` for all `k, l ∈ L`, where `ω` lives on
/// `(κG)* ⊗ (κG)*` with `p_g` at the index of `g`.
pub fn is_l_invariant(omega: &ConvMap, l: &SubgroupRef) -> bool {
    let g = &l.parent;
    let n = g.order();
    if omega.source.dim() != n * n {
        return false;
    }
    let at = |x: usize, y: usize| &omega.coeffs[x * n + y];
    (0..n).all(|x| {
        (0..n).all(|y| {
            l.elements.iter().all(|&k| {
                l.elements.iter().all(|&m| {
                    at(x, y) == at(g.mul(k, x), g.mul(m, y)) && at(x, y) == at(g.mul(x, k), g.mul(y, m))
                })
            })
        })
    })
}

/// `e(h) = h·1_A`, `f1(h,k) = (h·1_A)ε(k)` and `f2(h,k) = hk·1_A`.
pub fn idempotents_e_f1_f2(data: &MeasuringData) -> (ConvMap, ConvMap, ConvMap) {
    let h = &data.hopf;
    let n = h.dim();
    let e = ConvMap::from_fn(&h.coalgebra, &data.target, |i| data.one_action(i).clone());
    let pair = h.pair_coalgebra();
    let f1 = ConvMap::from_fn(pair, &data.target, |p| data.one_action(p / n).scale(h.counit(p % n)));
    let f2 = ConvMap::from_fn(pair, &data.target, |p| data.act(h.basis_mul(p / n, p % n), &data.target.unit));
    (e, f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin_group;
    use crate::hopf::{group_algebra, sweedler_algebra};
    use crate::partial::sweedler_measuring;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn unit_is_neutral() {
        let h = sweedler_algebra(q()).unwrap();
        let a = Arc::new(UnitalAlgebra::split_pair(q()));
        let f = ConvMap::from_fn(&h.coalgebra, &a, |i| Vector::from_ints(q(), &[i as i64, 1 - i as i64]));
        let u = conv_unit(&h.coalgebra, &a);
        assert_eq!(f.star(&u), f);
        assert_eq!(u.star(&f), f);
    }

    #[test]
    fn grouplike_convolution_is_pointwise() {
        let k4 = builtin_group("K4").unwrap();
        let h = group_algebra(&k4, q());
        let a = Arc::new(UnitalAlgebra::base_field(q()));
        let f = ConvMap::from_fn(&h.coalgebra, &a, |i| Vector::from_ints(q(), &[i as i64 + 1]));
        let g = ConvMap::from_fn(&h.coalgebra, &a, |i| Vector::from_ints(q(), &[2 * i as i64 - 3]));
        let fg = f.star(&g);
        for i in 0..4 {
            assert_eq!(fg.get(i)[0], &f.get(i)[0] * &g.get(i)[0]);
        }
    }

    #[test]
    fn inverse_on_z2() {
        let z2 = builtin_group("Z:2").unwrap();
        let h = group_algebra(&z2, q());
        let a = Arc::new(UnitalAlgebra::base_field(q()));
        let f = ConvMap::from_fn(&h.coalgebra, &a, |i| Vector::from_ints(q(), &[[1, 2][i]]));
        let inv = conv_inverse(&f).unwrap();
        assert_eq!(inv.get(0)[0], q().one());
        assert_eq!(inv.get(1)[0], q().ratio(1, 2).unwrap());
        let unit = conv_unit(&h.coalgebra, &a);
        assert_eq!(conv_inverse(&unit).unwrap(), unit);
        let singular = ConvMap::from_fn(&h.coalgebra, &a, |i| Vector::from_ints(q(), &[[1, 0][i]]));
        assert!(conv_inverse(&singular).is_none());
    }

    #[test]
    fn sweedler_e_is_idempotent_and_f1_not_central() {
        for lx in [0, 1, -2] {
            let m = sweedler_measuring(q(), q().int(lx), false).unwrap().measuring();
            let (e, f1, f2) = idempotents_e_f1_f2(&m);
            assert_eq!(e.star(&e), e);
            assert_eq!(f1.star(&f1), f1);
            assert_eq!(f2.star(&f2), f2);
            assert!(!is_central(&f1));
        }
        let m = sweedler_measuring(q(), q().zero(), true).unwrap().measuring();
        let (_, f1, _) = idempotents_e_f1_f2(&m);
        assert!(is_central(&f1));
    }

    #[test]
    fn mismatched_sources_are_rejected() {
        let h = sweedler_algebra(q()).unwrap();
        let a = Arc::new(UnitalAlgebra::base_field(q()));
        let f = conv_unit(&h.coalgebra, &a);
        let g = conv_unit(h.pair_coalgebra(), &a);
        assert!(conv_mul(&f, &g).is_err());
    }
}
