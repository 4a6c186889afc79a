//! Quadratic functions on torsion groups: the discriminant construction of a lattice with a
//! characteristic form, Gauss sums, isomorphism decisions and stable equivalence.

pub mod classify;
pub mod discriminant;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod stable;
pub mod torsion;

pub use error::{Error, Result};
pub use exact::*;
