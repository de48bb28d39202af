//! Dense univariate polynomials in `n` over the rationals, used for
//! expanding falling factorials and cancelling denominator factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly {
    /// `coeffs[i]` multiplies `n^i`; trailing zeros trimmed.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The factor `n - j`.
    pub fn n_minus(j: u32) -> Self {
        Self::new(vec![-Rational::from(BigInt::from(j)), Rational::one()])
    }

    /// `(n)_k = n (n-1) ... (n-k+1)` expanded.
    pub fn falling(k: u16) -> Self {
        let mut acc = Self::one();
        for j in 0..k {
            acc = acc.mul(&Self::n_minus(j as u32));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division by `n - j`; `None` when the remainder is non-zero.
    pub fn div_exact_n_minus(&self, j: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let x = Rational::from(BigInt::from(j));
        let mut quot = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * &x;
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                quot[i - 1] = v.clone();
            }
            carry = v;
        }
        Some(Self::new(quot))
    }
}

/// Positive rational `g` such that dividing every value by `g` yields
/// integers with no common factor: `gcd(numerators) / lcm(denominators)`.
pub(crate) fn rational_content<'a>(values: impl Iterator<Item = &'a Rational>) -> Option<Rational> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut any = false;
    for v in values {
        if v.is_zero() {
            continue;
        }
        any = true;
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    any.then(|| Rational::new(num_gcd.abs(), den_lcm))
}
