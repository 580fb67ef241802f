//! Exact arithmetic: rationals, monomials, sparse polynomials, polynomials in
//! an adjoined time variable and rational functions.

mod monomial;
mod poly;
mod ratfun;
mod spoly;

pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use spoly::{SPoly, STPoly};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Q = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}
