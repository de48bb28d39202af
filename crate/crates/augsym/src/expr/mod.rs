//! Exact symbolic expressions.
//!
//! A [`SymExpr`] is a sparse polynomial over five kinds of atoms — the
//! sample size `n`, falling factorials `(n)_k`, power sums `S_v`, population
//! moments `m_v`, and brackets — with `BigRational` coefficients and a
//! canonical term order. [`RationalExpr`] layers a factored denominator in
//! `n` on top, which is the shape every estimator is returned in.

mod atom;
mod display;
mod json;
mod rational;
mod symexpr;
pub(crate) mod unipoly;

pub use atom::Atom;
pub use rational::{
    falling_factorial_expand, normalize_over_common_denominator, Denominator, RationalExpr,
};
pub use symexpr::{SymExpr, Term};
