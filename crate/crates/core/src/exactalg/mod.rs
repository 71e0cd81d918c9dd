//! Exact scalars, monomials, term orders and sparse polynomials.

mod field;
mod monomial;
mod poly;

pub use field::{Field, Fp32003, Rational, Zp};
pub use monomial::{Monomial, TermOrder};
pub use poly::Polynomial;
