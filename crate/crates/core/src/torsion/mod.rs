//! Quadratic functions on groups of the form `T + (Q/Z)^s` with `T` finite.

mod group;
mod iso;
mod quadratic;

pub use group::{Element, FiniteAbelianGroup};
pub use iso::GroupIso;
pub use quadratic::{
    normalize, orthogonal_sum, pullback, some_quadratic_over, HomogeneityDefect, Radical,
    StructuredQuadratic, TorsionBilinear,
};

pub(crate) use quadratic::mod_u64;
