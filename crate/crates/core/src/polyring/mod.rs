//! Exact coefficient arithmetic, monomials and their orders, polynomials,
//! the text grammar, and polynomial matrices.

mod field;
mod matrix;
mod monomial;
mod parse;
mod polynomial;

pub use field::{CoefficientField, Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{subsets, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use polynomial::{PolyRing, Polynomial, Ring, Term};
