use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{tensor, Field, Scalar, Vector, VecSpace};
use crate::report::{Check, Report};

use super::algebra::UnitalAlgebra;
use super::coalgebra::Coalgebra;

/// Raw structure constants of a bialgebra, before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraData {
    pub name: String,
    pub field: Field,
    pub labels: Vec<String>,
    /// `mult[i * n + j]` is `e_i e_j`.
    pub mult: Vec<Vector>,
    pub unit: Vector,
    pub comult: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vector,
    /// `antipode[i]` is `S(e_i)`.
    pub antipode: Option<Vec<Vector>>,
}

impl BialgebraData {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn shapes(&self) -> Result<(UnitalAlgebra, Coalgebra)> {
        let n = self.dim();
        let space = VecSpace::new(self.labels.clone())?;
        if self.comult.len() != n || self.counit.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.comult.len().min(self.counit.len()),
            });
        }
        if self
            .comult
            .iter()
            .flatten()
            .any(|(j, k, _)| *j >= n || *k >= n)
        {
            return Err(Error::Invalid("comultiplication index out of range".into()));
        }
        if let Some(s) = &self.antipode {
            if s.len() != n || s.iter().any(|v| v.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
        }
        let alg = UnitalAlgebra::new_unchecked(space.clone(), self.field, self.mult.clone(), self.unit.clone())?;
        let coalg = Coalgebra::new(space, self.field, self.comult.clone(), self.counit.clone());
        Ok((alg, coalg))
    }

    /// Exhaustive sweep of every bialgebra axiom, and of the antipode identities when an
    /// antipode is present.
    pub fn verify(&self) -> Result<Report> {
        let (alg, co) = self.shapes()?;
        let n = self.dim();
        let f = self.field;
        let l = |i: usize| self.labels[i].clone();
        let mut r = Report::new(format!("bialgebra {}", self.name));
        r.absorb("", alg.verify());

        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let delta = |i: usize| co.apply_delta(&Vector::unit(f, n, i));
        // coassociativity on basis elements: (Δ⊗id)Δ = (id⊗Δ)Δ
        r.sweep(
            "coalgebra.coassoc",
            0..n,
            |&i| vec![l(i)],
            |&i| {
                let e = Vector::unit(f, n, i);
                let left: BTreeMap<_, _> = co.iterated_comult(&e, 3).into_iter().collect();
                let right: BTreeMap<_, _> = co.iterated_comult_right(&e, 3).into_iter().collect();
                let zero = f.zero();
                let bad = left.keys().chain(right.keys()).collect::<BTreeSet<_>>().into_iter().find(|k| {
                    left.get(*k).unwrap_or(&zero) != right.get(*k).unwrap_or(&zero)
                })?;
                let triple = bad.iter().map(|&j| l(j)).collect::<Vec<_>>().join("⊗");
                Some(format!(
                    "at {triple}: (Δ⊗id)Δ gives {}, (id⊗Δ)Δ gives {}",
                    left.get(bad).unwrap_or(&zero),
                    right.get(bad).unwrap_or(&zero)
                ))
            },
        );
        r.sweep(
            "coalgebra.counit",
            0..n,
            |&i| vec![l(i)],
            |&i| {
                let mut left = Vector::zeros(f, n);
                let mut right = Vector::zeros(f, n);
                for (j, k, c) in co.delta(i) {
                    left[*k] += &(c * &self.counit[*j]);
                    right[*j] += &(c * &self.counit[*k]);
                }
                let e = Vector::unit(f, n, i);
                (left != e || right != e).then(|| "(ε⊗id)Δ or (id⊗ε)Δ differs from id".into())
            },
        );
        // Δ(ab) = Δ(a)Δ(b) in A ⊗ A
        let mul2 = |u: &Vector, v: &Vector| {
            let mut out = Vector::zeros(f, n * n);
            for (p, a) in u.nonzero() {
                for (q, b) in v.nonzero() {
                    let (i1, i2) = (p / n, p % n);
                    let (j1, j2) = (q / n, q % n);
                    let prod = tensor(alg.basis_mul(i1, j1), alg.basis_mul(i2, j2), f);
                    out.axpy(&(a * b), &prod);
                }
            }
            out
        };
        r.sweep(
            "bialgebra.delta_multiplicative",
            pairs(),
            |&(a, b)| vec![l(a), l(b)],
            |&(a, b)| {
                let lhs = co.apply_delta(alg.basis_mul(a, b));
                let rhs = mul2(&delta(a), &delta(b));
                (lhs != rhs).then(|| "Δ(ab) differs from Δ(a)Δ(b)".into())
            },
        );
        r.sweep(
            "bialgebra.delta_unit",
            std::iter::once(()),
            |_| vec!["1".into()],
            |_| (co.apply_delta(&self.unit) != tensor(&self.unit, &self.unit, f)).then(|| "Δ(1) differs from 1⊗1".into()),
        );
        r.sweep(
            "bialgebra.counit_multiplicative",
            pairs(),
            |&(a, b)| vec![l(a), l(b)],
            |&(a, b)| {
                let lhs = alg.basis_mul(a, b).dot(&self.counit, f);
                let rhs = &self.counit[a] * &self.counit[b];
                (lhs != rhs).then(|| format!("ε(ab) = {lhs}, ε(a)ε(b) = {rhs}"))
            },
        );
        r.sweep(
            "bialgebra.counit_unit",
            std::iter::once(()),
            |_| vec!["1".into()],
            |_| (!self.unit.dot(&self.counit, f).is_one()).then(|| "ε(1) is not 1".into()),
        );
        if let Some(s) = &self.antipode {
            for (id, left) in [("hopf.antipode_left", true), ("hopf.antipode_right", false)] {
                r.sweep(
                    id,
                    0..n,
                    |&i| vec![l(i)],
                    |&i| {
                        let mut acc = Vector::zeros(f, n);
                        for (j, k, c) in co.delta(i) {
                            let prod = if left {
                                alg.mul(&s[*j], &Vector::unit(f, n, *k))
                            } else {
                                alg.mul(&Vector::unit(f, n, *j), &s[*k])
                            };
                            acc.axpy(c, &prod);
                        }
                        let expect = self.unit.scale(&self.counit[i]);
                        (acc != expect).then(|| format!("got {acc}, expected {expect}"))
                    },
                );
            }
        } else {
            r.push(Check::info("hopf.antipode", "no antipode supplied"));
        }
        r.push(Check::info("coalgebra.cocommutative", co.is_cocommutative().to_string()));
        Ok(r)
    }
}

/// A verified finite-dimensional bialgebra, optionally with antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBialgebra {
    pub name: String,
    pub algebra: Arc<UnitalAlgebra>,
    pub coalgebra: Arc<Coalgebra>,
    pub antipode: Option<Vec<Vector>>,
    cocommutative: bool,
    pair: Arc<Coalgebra>,
}

impl FinBialgebra {
    /// Verifies every axiom; fails with the report on the first broken identity.
    pub fn new(data: BialgebraData) -> Result<Self> {
        let report = data.verify()?;
        if !report.passed() {
            return Err(Error::Verification(Box::new(report)));
        }
        let (alg, co) = data.shapes()?;
        let cocommutative = co.is_cocommutative();
        let pair = Arc::new(co.tensor_square());
        Ok(FinBialgebra {
            name: data.name,
            algebra: Arc::new(alg),
            coalgebra: Arc::new(co),
            antipode: data.antipode,
            cocommutative,
            pair,
        })
    }

    pub fn data(&self) -> BialgebraData {
        BialgebraData {
            name: self.name.clone(),
            field: self.field(),
            labels: self.algebra.space.labels().to_vec(),
            mult: self.algebra.mult.table.clone(),
            unit: self.algebra.unit.clone(),
            comult: self.coalgebra.comult.clone(),
            counit: self.coalgebra.counit.clone(),
            antipode: self.antipode.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.space.labels()
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.field(), self.dim(), i)
    }

    pub fn unit(&self) -> &Vector {
        &self.algebra.unit
    }

    pub fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        self.algebra.mul(u, v)
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        self.algebra.basis_mul(i, j)
    }

    pub fn delta(&self, i: usize) -> &[(usize, usize, Scalar)] {
        self.coalgebra.delta(i)
    }

    pub fn counit(&self, i: usize) -> &Scalar {
        self.coalgebra.counit_of(i)
    }

    pub fn counit_of(&self, v: &Vector) -> Scalar {
        v.dot(&self.coalgebra.counit, self.field())
    }

    pub fn legs(&self, i: usize, k: usize) -> Arc<Vec<super::Term>> {
        self.coalgebra.legs(i, k)
    }

    pub fn iterated_comult(&self, v: &Vector, k: usize) -> Vec<super::Term> {
        self.coalgebra.iterated_comult(v, k)
    }

    /// `H ⊗ H` as a coalgebra, pair index `h * dim + k`.
    pub fn pair_coalgebra(&self) -> &Arc<Coalgebra> {
        &self.pair
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    pub fn antipode_of(&self, v: &Vector) -> Option<Vector> {
        let s = self.antipode.as_ref()?;
        let mut out = Vector::zeros(self.field(), self.dim());
        for (i, c) in v.nonzero() {
            out.axpy(c, &s[i]);
        }
        Some(out)
    }

    /// Index of the unit if it is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let mut nz = self.unit().nonzero();
        match (nz.next(), nz.next()) {
            (Some((i, c)), None) if c.is_one() => Some(i),
            _ => None,
        }
    }
}
