//! Exact arithmetic in multiquadratic real number fields
//! `Q(sqrt(p1), ..., sqrt(pt))` and univariate polynomials over them.

mod basis;
mod element;
mod poly;

pub use basis::{factor_squarefree, is_prime, squarefree_prime_factors, PrimeBasis, MAX_GENERATORS};
pub use element::FieldElement;
pub use poly::{FieldPolynomial, Multiplicity};

pub(crate) use basis::gcd_u128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("generator {0} is not prime")]
    NonPrimeGenerator(u64),
    #[error("generator {0} listed more than once")]
    DuplicateGenerator(u64),
    #[error("{0} generators exceed the configured maximum of 16")]
    TooManyGenerators(usize),
    #[error("product of basis primes does not fit the support encoding")]
    GeneratorProductOverflow,
    #[error("squarefree part needs primes outside the basis: {missing:?}")]
    OutsideField { missing: Vec<u64> },
    #[error("operands belong to different bases")]
    BasisMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not embed: basis is not a subfield of the target")]
    NotASubfield,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("prime {0} generates the coefficient field; sqrt({0}) is not outside it")]
    PrimeInsideField(u64),
    #[error("integer too large for exact factorization: {0}")]
    IntegerTooLarge(String),
    #[error("parse error: {0}")]
    ParseElement(String),
}
