use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::expr::atom::Atom;
use crate::Rational;

/// A power product of atoms, sorted by atom with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term(Vec<(Atom, u32)>);

impl Term {
    pub fn one() -> Self {
        Term(Vec::new())
    }

    pub fn from_atom(atom: Atom) -> Self {
        Term(vec![(atom, 1)])
    }

    pub fn from_powers(mut powers: Vec<(Atom, u32)>) -> Self {
        powers.retain(|(_, p)| *p > 0);
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Atom, u32)> = Vec::with_capacity(powers.len());
        for (a, p) in powers {
            match merged.last_mut() {
                Some((last, lp)) if *last == a => *lp += p,
                _ => merged.push((a, p)),
            }
        }
        Term(merged)
    }

    pub fn atoms(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut powers = self.0.clone();
        powers.extend(other.0.iter().cloned());
        Term::from_powers(powers)
    }

    /// Degree in `n`: the power of `n` plus the depth of every falling
    /// factorial factor.
    pub fn n_degree(&self) -> u32 {
        self.0
            .iter()
            .map(|(a, p)| match a {
                Atom::N => *p,
                Atom::Falling(k) => *k as u32 * p,
                _ => 0,
            })
            .sum()
    }

    /// Total degree of the non-`n` atoms.
    pub fn sym_degree(&self) -> u32 {
        self.0.iter().map(|(a, p)| a.sym_degree() * p).sum()
    }

    /// The non-`n` part of the term, used to group coefficients that are
    /// rational functions of `n`.
    pub fn sym_part(&self) -> Term {
        Term(
            self.0
                .iter()
                .filter(|(a, _)| !a.is_scalar_in_n())
                .cloned()
                .collect(),
        )
    }

    /// Non-`n` atoms expanded by exponent, largest first.
    fn sym_atoms_desc(&self) -> Vec<&Atom> {
        let mut v: Vec<&Atom> = Vec::new();
        for (a, p) in &self.0 {
            if !a.is_scalar_in_n() {
                for _ in 0..*p {
                    v.push(a);
                }
            }
        }
        v.sort_by(|x, y| y.cmp(x));
        v
    }
}

/// Display-canonical order: higher symbolic degree first, then the larger
/// atom list lexicographically, then higher degree in `n`. This is what puts
/// `n^2*S[3]` ahead of `-3*n*S[1]*S[2]` ahead of `2*S[1]^3`.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .sym_degree()
            .cmp(&self.sym_degree())
            .then_with(|| {
                let a = self.sym_atoms_desc();
                let b = other.sym_atoms_desc();
                b.cmp(&a)
            })
            .then_with(|| other.n_degree().cmp(&self.n_degree()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over [`Atom`]s with exact rational coefficients.
/// No zero coefficient is ever stored, so structural equality is equality
/// of canonical forms. Terms accumulate in a hash map (the canonical
/// comparison is too expensive for the hot loops) and are sorted on demand.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymExpr {
    terms: HashMap<Term, Rational>,
}

impl SymExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(Term::one(), c);
        e
    }

    pub fn from_atom(atom: Atom) -> Self {
        let mut e = Self::zero();
        e.add_term(Term::from_atom(atom), Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display-canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        let mut v: Vec<(&Term, &Rational)> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v.into_iter()
    }

    /// Terms in arbitrary order, for arithmetic that does not care.
    pub fn terms_unordered(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Number of distinct non-`n` monomials; for an estimator numerator this
    /// counts power-sum monomials the way the collected output is read.
    pub fn sym_term_count(&self) -> usize {
        let mut parts: Vec<Term> = self.terms.keys().map(Term::sym_part).collect();
        parts.sort();
        parts.dedup();
        parts.len()
    }

    /// Largest total degree over the sample variables.
    pub fn sym_degree(&self) -> u32 {
        self.terms.keys().map(Term::sym_degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, term: Term, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(term) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymExpr) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    /// `self += coeff * other`, the workhorse of the estimator sums.
    pub fn add_scaled(&mut self, coeff: &Rational, other: &SymExpr) {
        if coeff.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Rational) -> SymExpr {
        if coeff.is_zero() {
            return SymExpr::zero();
        }
        SymExpr {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c * coeff))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SymExpr) -> SymExpr {
        let mut out = SymExpr::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                out.add_term(ta.mul(tb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, term: &Term, coeff: &Rational) -> SymExpr {
        let mut out = SymExpr::zero();
        for (t, c) in &self.terms {
            out.add_term(t.mul(term), c * coeff);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> SymExpr {
        let mut acc = SymExpr::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn neg(&self) -> SymExpr {
        SymExpr {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), -c.clone()))
                .collect(),
        }
    }

    /// The coefficient of a term, zero if absent.
    pub fn coefficient(&self, term: &Term) -> Rational {
        self.terms.get(term).cloned().unwrap_or_else(Rational::zero)
    }
}

impl Add for &SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: &SymExpr) -> SymExpr {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &SymExpr {
    type Output = SymExpr;
    fn sub(self, rhs: &SymExpr) -> SymExpr {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SymExpr {
    type Output = SymExpr;
    fn mul(self, rhs: &SymExpr) -> SymExpr {
        SymExpr::mul(self, rhs)
    }
}

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        SymExpr::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Exponents;

    fn ps(v: Vec<u16>) -> SymExpr {
        SymExpr::from_atom(Atom::PowerSum(Exponents::new(v)))
    }

    fn n() -> SymExpr {
        SymExpr::from_atom(Atom::N)
    }

    #[test]
    fn canonical_term_order_matches_display() {
        // n^2 S3 ahead of n S1 S2 ahead of S1^3.
        let t1 = Term::from_powers(vec![
            (Atom::N, 2),
            (Atom::PowerSum(Exponents::uni(3)), 1),
        ]);
        let t2 = Term::from_powers(vec![
            (Atom::N, 1),
            (Atom::PowerSum(Exponents::uni(1)), 1),
            (Atom::PowerSum(Exponents::uni(2)), 1),
        ]);
        let t3 = Term::from_powers(vec![(Atom::PowerSum(Exponents::uni(1)), 3)]);
        assert!(t1 < t2 && t2 < t3);
    }

    #[test]
    fn zero_coefficients_vanish() {
        let e = &(&ps(vec![1]) - &ps(vec![1])) + &n();
        assert_eq!(e, n());
        assert_eq!((&ps(vec![2]) - &ps(vec![2])), SymExpr::zero());
    }

    #[test]
    fn multiplication_collects_powers() {
        let e = ps(vec![1]).mul(&ps(vec![1]));
        assert_eq!(e.term_count(), 1);
        let (t, c) = e.terms().next().unwrap();
        assert_eq!(t.atoms(), &[(Atom::PowerSum(Exponents::uni(1)), 2)]);
        assert!(c.is_one());
    }
}
