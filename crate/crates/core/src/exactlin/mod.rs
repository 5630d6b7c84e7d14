//! Exact linear algebra over Q or F_p.

mod matrix;
mod scalar;
mod space;
mod subspace;
mod vector;

pub use matrix::{solve_linear, LinMap, Matrix, Rref};
pub use scalar::{Field, Scalar};
pub use space::VecSpace;
pub use subspace::{subspace_closure, Bilinear, Subspace};
pub use vector::{tensor, Vector};
