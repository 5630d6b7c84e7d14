//! Finite-dimensional bialgebras and Hopf algebras by structure constants.

mod algebra;
mod bialgebra;
mod builtins;
mod coalgebra;

pub use algebra::UnitalAlgebra;
pub use bialgebra::{BialgebraData, FinBialgebra};
pub use builtins::{dual_group_algebra, dualize, group_algebra, sweedler_algebra};
pub use coalgebra::{Coalgebra, Term};

#[cfg(test)]
mod tests;
