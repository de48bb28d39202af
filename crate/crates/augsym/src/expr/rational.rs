use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::atom::Atom;
use crate::expr::symexpr::{SymExpr, Term};
use crate::expr::unipoly::{rational_content, UniPoly};
use crate::Rational;

/// A denominator kept in factored form: `constant * prod_j (n - j)^{e_j}`.
/// Everything the estimators divide by is a falling factorial, so integer
/// shifts of `n` are the only factors that ever appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominator {
    constant: Rational,
    factors: BTreeMap<u32, u32>,
}

impl Denominator {
    pub fn one() -> Self {
        Self {
            constant: Rational::one(),
            factors: BTreeMap::new(),
        }
    }

    /// `(n)_k`.
    pub fn falling(k: u16) -> Self {
        Self {
            constant: Rational::one(),
            factors: (0..k as u32).map(|j| (j, 1)).collect(),
        }
    }

    pub fn from_parts(constant: Rational, factors: BTreeMap<u32, u32>) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self {
            constant,
            factors: factors.into_iter().filter(|(_, e)| *e > 0).collect(),
        })
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.factors.is_empty()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<u32, u32> {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn value_at(&self, n: u32) -> Rational {
        let mut acc = self.constant.clone();
        for (&j, &e) in &self.factors {
            let f = Rational::from(BigInt::from(n as i64 - j as i64));
            for _ in 0..e {
                acc *= &f;
            }
        }
        acc
    }

    pub(crate) fn to_unipoly(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.constant.clone());
        for (&j, &e) in &self.factors {
            for _ in 0..e {
                acc = acc.mul(&UniPoly::n_minus(j));
            }
        }
        acc
    }

    /// Render as an expression. A full run `(n-0)(n-1)...(n-k+1)` collapses
    /// back to the falling factorial atom; anything else expands.
    pub fn to_symexpr(&self) -> SymExpr {
        let k = self.factors.len() as u32;
        let is_falling_run = k > 0
            && self
                .factors
                .iter()
                .enumerate()
                .all(|(i, (&j, &e))| j == i as u32 && e == 1);
        if self.factors.is_empty() {
            SymExpr::constant(self.constant.clone())
        } else if is_falling_run {
            let mut e = SymExpr::zero();
            e.add_term(
                Term::from_atom(Atom::Falling(k as u16)),
                self.constant.clone(),
            );
            e
        } else {
            unipoly_to_symexpr(&self.to_unipoly())
        }
    }
}

/// A quotient of a polynomial numerator by a factored denominator in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpr {
    pub num: SymExpr,
    pub den: Denominator,
}

impl RationalExpr {
    pub fn new(num: SymExpr, den: Denominator) -> Self {
        Self { num, den }
    }

    pub fn from_expr(num: SymExpr) -> Self {
        Self {
            num,
            den: Denominator::one(),
        }
    }

    /// Number of collected numerator monomials, ignoring powers of `n`.
    pub fn sym_term_count(&self) -> usize {
        self.num.sym_term_count()
    }

    /// Bring the fraction to the normal form used for all output: falling
    /// factorials in the numerator expanded, denominator factors that divide
    /// every coefficient cancelled, the pair scaled so the numerator has
    /// integer coefficients sharing no factor with the (positive, integer)
    /// denominator constant.
    pub fn normalized(&self) -> RationalExpr {
        let num = falling_factorial_expand(&self.num);
        if num.is_zero() {
            return RationalExpr::new(SymExpr::zero(), Denominator::one());
        }

        // Group the numerator as sym-monomial -> polynomial in n.
        let mut groups: BTreeMap<Term, UniPoly> = BTreeMap::new();
        for (term, coeff) in num.terms() {
            let mut npow = 0u32;
            let mut rest: Vec<(Atom, u32)> = Vec::new();
            for (a, p) in term.atoms() {
                match a {
                    Atom::N => npow += p,
                    _ => rest.push((a.clone(), *p)),
                }
            }
            let key = Term::from_powers(rest);
            let mut coeffs = vec![Rational::zero(); npow as usize + 1];
            coeffs[npow as usize] = coeff.clone();
            let mono = UniPoly::new(coeffs);
            groups
                .entry(key)
                .and_modify(|p| *p = p.add(&mono))
                .or_insert(mono);
        }
        groups.retain(|_, p| !p.is_zero());

        // Cancel denominator factors dividing every group.
        let mut factors = self.den.factors.clone();
        for (&j, exp) in factors.iter_mut() {
            while *exp > 0 {
                let divided: Option<Vec<UniPoly>> = groups
                    .values()
                    .map(|p| p.div_exact_n_minus(j))
                    .collect();
                match divided {
                    Some(qs) => {
                        for (p, q) in groups.values_mut().zip(qs) {
                            *p = q;
                        }
                        *exp -= 1;
                    }
                    None => break,
                }
            }
        }
        factors.retain(|_, e| *e > 0);

        // Joint integer scaling: clear all coefficient denominators, then
        // remove the common integer factor shared with the constant.
        let constant = self.den.constant.clone();
        let mut den_lcm: BigInt = constant.denom().clone();
        for p in groups.values() {
            for c in p.coeffs() {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let scale = Rational::from(den_lcm);
        let mut const_int: BigInt = (&constant * &scale).to_integer();
        let mut gcd = const_int.clone().abs();
        for p in groups.values() {
            for c in p.coeffs() {
                gcd = gcd.gcd(&(c * &scale).to_integer());
            }
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        let mut num_scale = &scale / Rational::from(gcd.clone());
        const_int /= &gcd;
        if const_int.is_negative() {
            const_int = -const_int;
            num_scale = -num_scale;
        }

        let mut out = SymExpr::zero();
        for (key, poly) in &groups {
            for (i, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut atoms = key.atoms().to_vec();
                if i > 0 {
                    atoms.push((Atom::N, i as u32));
                }
                out.add_term(Term::from_powers(atoms), c * &num_scale);
            }
        }
        RationalExpr::new(
            out,
            Denominator {
                constant: Rational::from(const_int),
                factors,
            },
        )
    }
}

pub(crate) fn unipoly_to_symexpr(p: &UniPoly) -> SymExpr {
    let mut e = SymExpr::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if i == 0 {
            Term::one()
        } else {
            Term::from_powers(vec![(Atom::N, i as u32)])
        };
        e.add_term(term, c.clone());
    }
    e
}

/// Replace every falling factorial atom by its expanded polynomial in `n`.
/// A ring homomorphism fixing all other atoms.
pub fn falling_factorial_expand(e: &SymExpr) -> SymExpr {
    let mut out = SymExpr::zero();
    for (term, coeff) in e.terms() {
        let mut poly = UniPoly::one();
        let mut rest: Vec<(Atom, u32)> = Vec::new();
        for (a, p) in term.atoms() {
            match a {
                Atom::Falling(k) => {
                    let f = UniPoly::falling(*k);
                    for _ in 0..*p {
                        poly = poly.mul(&f);
                    }
                }
                _ => rest.push((a.clone(), *p)),
            }
        }
        let base = Term::from_powers(rest);
        for (i, c) in poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = if i == 0 {
                base.clone()
            } else {
                base.mul(&Term::from_powers(vec![(Atom::N, i as u32)]))
            };
            out.add_term(t, coeff * c);
        }
    }
    out
}

/// Reduce a numerator/denominator pair to lowest terms.
///
/// The denominator must be a polynomial in `n` (falling factorial atoms are
/// fine). Shared `(n - j)` factors and the shared rational content are
/// removed, the numerator ends up with integer coefficients, and the
/// denominator's leading coefficient is positive. A zero numerator
/// normalizes the denominator to one.
pub fn normalize_over_common_denominator(
    num: &SymExpr,
    den: &SymExpr,
) -> Result<(SymExpr, SymExpr)> {
    let den = falling_factorial_expand(den);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let mut den_poly = UniPoly::zero();
    for (term, coeff) in den.terms() {
        let mut npow = 0usize;
        for (a, p) in term.atoms() {
            match a {
                Atom::N => npow = *p as usize,
                _ => return Err(Error::NonScalarDenominator),
            }
        }
        let mut coeffs = vec![Rational::zero(); npow + 1];
        coeffs[npow] = coeff.clone();
        den_poly = den_poly.add(&UniPoly::new(coeffs));
    }

    // Peel off non-negative integer roots; denominators built from falling
    // factorials factor completely this way.
    let mut factors: BTreeMap<u32, u32> = BTreeMap::new();
    let mut residual = den_poly;
    for j in 0..=residual.degree() as u32 {
        while residual.degree() > 0 {
            match residual.div_exact_n_minus(j) {
                Some(q) => {
                    *factors.entry(j).or_insert(0) += 1;
                    residual = q;
                }
                None => break,
            }
        }
    }

    if residual.degree() == 0 {
        let constant = residual.leading().cloned().unwrap_or_else(Rational::one);
        let den = Denominator::from_parts(constant, factors)?;
        let reduced = RationalExpr::new(num.clone(), den).normalized();
        Ok((reduced.num, reduced.den.to_symexpr()))
    } else {
        // Irreducible residual: no factor cancellation, only content/sign.
        let mut full = UniPoly::constant(Rational::one());
        for (&j, &e) in &factors {
            for _ in 0..e {
                full = full.mul(&UniPoly::n_minus(j));
            }
        }
        full = full.mul(&residual);
        let num = falling_factorial_expand(num);
        if num.is_zero() {
            return Ok((SymExpr::zero(), SymExpr::one()));
        }
        let coeffs: Vec<Rational> = num.terms().map(|(_, c)| c.clone()).collect();
        let content = rational_content(coeffs.iter().chain(full.coeffs().iter()))
            .unwrap_or_else(Rational::one);
        let sign = if full.leading().is_some_and(Signed::is_negative) {
            -Rational::one()
        } else {
            Rational::one()
        };
        let inv = sign / content;
        Ok((
            num.scale(&inv),
            unipoly_to_symexpr(&full.scale(&inv)),
        ))
    }
}
