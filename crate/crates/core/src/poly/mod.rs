//! Exact arithmetic: rationals, the screening prime field, sparse
//! multivariate polynomials, scalar rank and symbolic (fraction-free) rank.

mod bareiss;
mod field;
mod matrix;
mod polynomial;

pub use bareiss::{bareiss_rank, integer_symbolic_rank, symbolic_rank};
pub use field::{Field, Fp, Rational, MODULUS};
pub use matrix::{fundamental_circuits, minor_degree_bound, scalar_rank, Matrix, PolyMatrix};
pub use polynomial::{poly_eval, Coefficient, Monomial, Polynomial, Vars};
