//! Twisted partial actions of finite-dimensional Hopf algebras, computed exactly.
//!
//! Everything is built from structure constants over `Q` or a prime field: bialgebras,
//! partial measurings, partial 2-cocycles, crossed products and globalizations. Each
//! construction is checked by sweeping its defining identities over all basis tuples,
//! and every check lands in a [`Report`].

pub mod error;
pub mod exactlin;
pub mod groups;
pub mod hopf;
pub mod convolution;
pub mod partial;
pub mod twisted;
pub mod globalize;
pub mod cli;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, Report, Status};
