//! Exact-arithmetic toolkit for square root rank lower bounds.
//!
//! The crate builds the correlation-polytope slack matrices studied in
//! extension-complexity work, certifies sign-independent lower bounds on
//! their square root rank through number-field rank arguments, and
//! cross-checks everything with brute-force oracles and explicit
//! factorization constructions.
//!
//! The pieces:
//!
//! - [`field`]: exact arithmetic in `Q(sqrt(p1), ..., sqrt(pt))` and
//!   univariate polynomials over it, including the `(x^2 - p)` root
//!   multiplicity procedure.
//! - [`linalg`]: dense exact linear algebra over such fields — rank by
//!   elimination, characteristic polynomials, Kronecker products, entrywise
//!   square roots, sign application, and the text matrix format.
//! - [`families`]: generators for the named matrix families (`corB`, `corM`,
//!   `corF`, `P_n`, `IP_n`, the Fawzi `Q`, the low-rank `A_n`) plus the
//!   prime-selection and size-bound combinatorics.
//! - [`certify`]: the structural square-root-rank certificate, the scaled
//!   `sqrt(p)*I + A` form, the anticommuting sigma families, and the
//!   extension certificate for sums of entrywise squares.
//! - [`oracle`]: exhaustive sign-pattern search, the recursive nonnegative
//!   factorization of `F_n`, rank-one PSD factorizations, and aggregate
//!   bounds reports.
//! - [`cli`]: the `quadrank` command-line front end.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod certify;
pub mod cli;
pub mod families;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod selftest;

pub use field::{FieldElement, FieldPolynomial, Multiplicity, PrimeBasis};
pub use linalg::{FieldMatrix, RationalMatrix, SignMatrix};
