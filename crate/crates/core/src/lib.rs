//! Exact arithmetic, ideal theory and sheaf cohomology for polynomials whose
//! exponents are nonnegative rationals (or arbitrary rationals, for Laurent
//! monomials on projective space).

pub mod charp;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod flatten;
pub mod geometry;
pub mod grading;
pub mod ideals;
pub mod linalg;
pub mod parser;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use poly::{LaurentQPolynomial, Monomial, QPolynomial, RationalExponent};
