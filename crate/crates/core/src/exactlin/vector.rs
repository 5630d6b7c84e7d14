use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};

/// A coordinate vector with respect to some distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(field: Field, n: usize) -> Self {
        Vector(vec![field.zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.0[i] = field.one();
        v
    }

    pub fn from_vec(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    /// Convenience for tests and builtins: integer coordinates.
    pub fn from_ints(field: Field, coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| field.int(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    /// Nonzero coordinates with their indices.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(other.0.iter()) {
            if !y.is_zero() {
                *x += &(c * y);
            }
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &Vector, field: Field) -> Scalar {
        let mut acc = field.zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<T: IntoIterator<Item = Scalar>>(iter: T) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Kronecker product in the lexicographic pair basis: index `i * v.len() + j`.
pub fn tensor(u: &Vector, v: &Vector, field: Field) -> Vector {
    let mut out = Vector::zeros(field, u.len() * v.len());
    for (i, a) in u.nonzero() {
        for (j, b) in v.nonzero() {
            out[i * v.len() + j] = a * b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        let q = Field::Rationals;
        let t = tensor(&Vector::from_ints(q, &[1, 0]), &Vector::from_ints(q, &[0, 1]), q);
        assert_eq!(t, Vector::from_ints(q, &[0, 1, 0, 0]));
        let z = tensor(&Vector::zeros(q, 2), &Vector::from_ints(q, &[5, 7]), q);
        assert!(z.is_zero());
        let t = tensor(&Vector::from_ints(q, &[1, 2]), &Vector::from_ints(q, &[3, 4]), q);
        assert_eq!(t, Vector::from_ints(q, &[3, 4, 6, 8]));
    }
}
