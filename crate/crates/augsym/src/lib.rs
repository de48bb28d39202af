//! Exact symbolic computation of augmented symmetric functions, power sums,
//! and unbiased estimators of moments and cumulants.
//!
//! The engine works over formal symbols — the sample size `n`, falling
//! factorials `(n)_k`, power sums `S_v`, population moments `m_v`, and
//! augmented symmetric functions (brackets) — with arbitrary-precision
//! rational coefficients. On top of that expression layer it provides:
//!
//! - [`combinatorics`]: integer partitions, set partitions, and multiset
//!   subdivisions enumerated once each together with exact multiplicities;
//! - [`conversion`]: both directions of the change of basis between products
//!   of power sums and brackets, plus products of brackets;
//! - [`estimators`]: U-statistics, k-statistics, polykays, and their
//!   multivariate generalizations as single normalized fractions;
//! - [`oracle`]: a brute-force expectation engine over explicitly indexed
//!   variables at small concrete `n`, used to verify every formula the fast
//!   paths produce.
//!
//! All values are immutable after construction and safe to share across
//! threads; the heavy outer sums in [`estimators`] run on rayon.

pub mod bracket;
pub mod combinatorics;
pub mod conversion;
mod error;
pub mod estimators;
pub mod expr;
pub mod input;
pub mod monomial;
pub mod oracle;

pub use bracket::Bracket;
pub use error::{Error, Result};
pub use expr::{
    falling_factorial_expand, normalize_over_common_denominator, Atom, Denominator, RationalExpr,
    SymExpr, Term,
};
pub use monomial::{merge_block, Exponents, Monomial};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer used for counts and coefficients.
pub type Int = num_bigint::BigInt;
