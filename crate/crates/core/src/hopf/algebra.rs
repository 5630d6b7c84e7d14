use crate::error::{Error, Result};
use crate::exactlin::{Bilinear, Field, Vector, VecSpace};
use crate::report::Report;

/// A finite-dimensional associative unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalAlgebra {
    pub space: VecSpace,
    pub field: Field,
    pub mult: Bilinear,
    pub unit: Vector,
}

impl UnitalAlgebra {
    /// Builds and verifies associativity and unitality.
    pub fn new(space: VecSpace, field: Field, table: Vec<Vector>, unit: Vector) -> Result<Self> {
        let a = Self::new_unchecked(space, field, table, unit)?;
        let r = a.verify();
        if r.passed() {
            Ok(a)
        } else {
            Err(Error::Verification(Box::new(r)))
        }
    }

    /// Builds without the exhaustive sweep; shapes are still checked.
    pub fn new_unchecked(space: VecSpace, field: Field, table: Vec<Vector>, unit: Vector) -> Result<Self> {
        let n = space.dim();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        if let Some(bad) = table.iter().chain(std::iter::once(&unit)).find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(UnitalAlgebra {
            space,
            field,
            mult: Bilinear::new(field, n, table),
            unit,
        })
    }

    /// The base field as a one-dimensional algebra.
    pub fn base_field(field: Field) -> Self {
        let space = VecSpace::new(vec!["1".into()]).expect("one label");
        Self::new_unchecked(space, field, vec![Vector::unit(field, 1, 0)], Vector::unit(field, 1, 0))
            .expect("shapes agree")
    }

    /// `κ × κ` with componentwise product; basis `e1 = (1,0)`, `e2 = (0,1)`.
    pub fn split_pair(field: Field) -> Self {
        let space = VecSpace::new(vec!["e1".into(), "e2".into()]).expect("distinct labels");
        let table = vec![
            Vector::unit(field, 2, 0),
            Vector::zeros(field, 2),
            Vector::zeros(field, 2),
            Vector::unit(field, 2, 1),
        ];
        Self::new_unchecked(space, field, table, Vector::from_ints(field, &[1, 1])).expect("shapes agree")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        self.mult.apply(u, v)
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        self.mult.basis_product(i, j)
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.field, self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.field, self.dim(), i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_mul(i, j) == self.basis_mul(j, i)))
    }

    pub fn verify(&self) -> Report {
        let n = self.dim();
        let l = |i: usize| self.label(i).to_string();
        let mut r = Report::new("unital algebra");
        r.sweep(
            "algebra.assoc",
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))),
            |&(a, b, c)| vec![l(a), l(b), l(c)],
            |&(a, b, c)| {
                let lhs = self.mul(self.basis_mul(a, b), &self.basis(c));
                let rhs = self.mul(&self.basis(a), self.basis_mul(b, c));
                (lhs != rhs).then(|| format!("(ab)c = {lhs}, a(bc) = {rhs}"))
            },
        );
        r.sweep(
            "algebra.unit",
            0..n,
            |&a| vec![l(a)],
            |&a| {
                let e = self.basis(a);
                (self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e).then(|| "1·a or a·1 differs from a".into())
            },
        );
        r
    }
}
