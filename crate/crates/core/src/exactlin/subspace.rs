use super::matrix::Matrix;
use super::scalar::Field;
use super::space::VecSpace;
use super::vector::Vector;

/// A subspace of a coordinate space, held as the nonzero rows of a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: VecSpace,
    field: Field,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: VecSpace) -> Self {
        Subspace {
            ambient,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(field: Field, ambient: VecSpace, gens: &[Vector]) -> Self {
        let mut s = Self::zero(field, ambient);
        s.extend(gens);
        s
    }

    pub fn full(field: Field, ambient: VecSpace) -> Self {
        let n = ambient.dim();
        let rows = (0..n).map(|i| Vector::unit(field, n, i)).collect();
        Subspace {
            ambient,
            field,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical basis: rows of the reduced row-echelon form.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot columns; zero exactly when `v` is in the span.
    pub fn residual(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -&r[p];
                r.axpy(&c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.residual(v).is_zero()
    }

    /// Coordinates of `v` in [`Self::basis`], or `None` if `v` is outside.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in [`Self::basis`].
    pub fn combine(&self, coords: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.ambient.dim());
        for (c, row) in coords.iter().zip(&self.rows) {
            out.axpy(c, row);
        }
        out
    }

    /// Adds vectors to the span; returns whether the dimension grew.
    pub fn extend(&mut self, vs: &[Vector]) -> bool {
        let fresh: Vec<Vector> = vs
            .iter()
            .map(|v| self.residual(v))
            .filter(|r| !r.is_zero())
            .collect();
        if fresh.is_empty() {
            return false;
        }
        let n = self.ambient.dim();
        let mut all = self.rows.clone();
        all.extend(fresh);
        let rref = Matrix::from_rows(self.field, n, all).rref();
        let grew = rref.pivots.len() > self.rows.len();
        self.rows = (0..rref.matrix.rows()).map(|i| rref.matrix.row(i)).collect();
        self.pivots = rref.pivots;
        grew
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// A bilinear product on `κ^dim` given by structure constants: `table[i * dim + j]` is the
/// product of basis vectors `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    pub field: Field,
    pub dim: usize,
    pub table: Vec<Vector>,
}

impl Bilinear {
    pub fn new(field: Field, dim: usize, table: Vec<Vector>) -> Self {
        assert_eq!(table.len(), dim * dim, "structure table size");
        Bilinear { field, dim, table }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn apply(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        for (i, a) in u.nonzero() {
            for (j, b) in v.nonzero() {
                out.axpy(&(a * b), &self.table[i * self.dim + j]);
            }
        }
        out
    }
}

/// Smallest subspace containing `gens` and closed under `product`.
pub fn subspace_closure(gens: &[Vector], product: &Bilinear) -> Subspace {
    let ambient = VecSpace::indexed(product.dim);
    let mut s = Subspace::span(product.field, ambient, gens);
    loop {
        let basis = s.basis().to_vec();
        let mut products = Vec::new();
        for u in &basis {
            for v in &basis {
                products.push(product.apply(u, v));
            }
        }
        if !s.extend(&products) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    /// Group algebra of Z_2 x Z_2 with elements indexed by bitmasks, product = xor.
    fn klein_algebra() -> Bilinear {
        let mut table = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                table.push(Vector::unit(q(), 4, i ^ j));
            }
        }
        Bilinear::new(q(), 4, table)
    }

    #[test]
    fn closure_of_unit_is_one_dimensional() {
        let s = subspace_closure(&[Vector::unit(q(), 4, 0)], &klein_algebra());
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn closure_of_basis_is_everything() {
        let gens: Vec<_> = (0..4).map(|i| Vector::unit(q(), 4, i)).collect();
        assert_eq!(subspace_closure(&gens, &klein_algebra()).dim(), 4);
    }

    #[test]
    fn idempotent_direction() {
        // (e + a)^2 = 2(e + a)
        let v = Vector::from_ints(q(), &[1, 1, 0, 0]);
        let m = klein_algebra();
        assert_eq!(m.apply(&v, &v), v.scale(&q().int(2)));
        let s = subspace_closure(&[v.clone()], &m);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(
            q(),
            VecSpace::indexed(3),
            &[Vector::from_ints(q(), &[1, 1, 0]), Vector::from_ints(q(), &[0, 1, 1])],
        );
        let v = Vector::from_ints(q(), &[2, 5, 3]);
        let c = s.coords(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coords(&Vector::from_ints(q(), &[1, 0, 0])).is_none());
    }
}
