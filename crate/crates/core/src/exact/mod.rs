//! Exact arithmetic: rationals, Q/Z, integer matrices, Smith normal form and cyclotomic numbers.

pub mod cyclotomic;
pub mod matrix;
pub mod rational;
pub mod snf;

pub use cyclotomic::{cyclotomic_equal, cyclotomic_polynomial, CyclotomicNumber};
pub use matrix::{solve_rational, IntMatrix};
pub use rational::{content, lcm_u64, parse_rational, rat, rat_int, QmodZ, Rational};
pub use snf::{
    integer_kernel, smith_normal_form, solve_congruences, solve_integer_system, ColumnLattice,
    Smith,
};
