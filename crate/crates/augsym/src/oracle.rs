//! Brute-force verification engine.
//!
//! Power sums and brackets are expanded into explicit sums over indexed
//! variables `X_{i,c}` at a small concrete sample size, and expectations are
//! taken monomial by monomial under the model "independent across units,
//! fully dependent within a unit": `E[prod_i prod_c X_{i,c}^{a_{i,c}}] =
//! prod_i m_{a_i}`. No symmetry shortcuts, no compression — this module is
//! deliberately the dumb path the fast paths are checked against.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bracket::Bracket;
use crate::error::{Error, Result};
use crate::expr::{Atom, RationalExpr, SymExpr, Term};
use crate::monomial::Exponents;
use crate::Rational;

/// Largest concrete sample size the oracle will expand.
pub const MAX_ORACLE_N: u32 = 8;

/// A concrete formal sample: `n` units, each a tuple of `arity` dependent
/// variables, independent and identically distributed across units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormalSample {
    n: u32,
    arity: usize,
}

impl FormalSample {
    pub fn new(n: u32, arity: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_N {
            return Err(Error::SampleSizeGuard {
                n,
                max: MAX_ORACLE_N,
            });
        }
        Ok(Self { n, arity })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// Polynomial over the indexed variables of one sample. The key stores one
/// exponent per `(unit, coordinate)` pair, laid out unit-major.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexedPoly {
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl IndexedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(sample: &FormalSample) -> Self {
        let mut p = Self::zero();
        p.add_monomial(
            vec![0; (sample.n as usize) * sample.arity],
            Rational::one(),
        );
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_monomial(&mut self, exps: Vec<u16>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn add_assign(&mut self, other: &IndexedPoly) {
        for (e, c) in &other.terms {
            self.add_monomial(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = IndexedPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_monomial(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> IndexedPoly {
        if c.is_zero() {
            return IndexedPoly::zero();
        }
        IndexedPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }
}

/// `S_v` at the sample: the sum over units of the unit's monomial.
pub fn expand_power_sum(v: &Exponents, sample: &FormalSample) -> Result<IndexedPoly> {
    if v.is_zero() {
        return Err(Error::ZeroExponentVector);
    }
    check_width(v, sample)?;
    let mut p = IndexedPoly::zero();
    for i in 0..sample.n as usize {
        let mut exps = vec![0u16; (sample.n as usize) * sample.arity];
        for (c, &e) in v.values().iter().enumerate() {
            exps[i * sample.arity + c] = e;
        }
        p.add_monomial(exps, Rational::one());
    }
    Ok(p)
}

/// A bracket at the sample: the sum over all injective index tuples of the
/// part monomials. More parts than units leaves nothing to sum, and the
/// result is the zero polynomial.
pub fn expand_bracket(b: &Bracket, sample: &FormalSample) -> Result<IndexedPoly> {
    if b.width() != sample.arity {
        return Err(Error::ArityMismatch {
            left: b.width(),
            right: sample.arity,
        });
    }
    let n = sample.n as usize;
    let parts = b.parts();
    let mut out = IndexedPoly::zero();
    if parts.len() > n {
        return Ok(out);
    }
    let mut used = vec![false; n];
    let mut exps = vec![0u16; n * sample.arity];
    fn rec(
        parts: &[Exponents],
        pi: usize,
        used: &mut Vec<bool>,
        exps: &mut Vec<u16>,
        arity: usize,
        out: &mut IndexedPoly,
    ) {
        if pi == parts.len() {
            out.add_monomial(exps.clone(), Rational::one());
            return;
        }
        for i in 0..used.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            for (c, &e) in parts[pi].values().iter().enumerate() {
                exps[i * arity + c] += e;
            }
            rec(parts, pi + 1, used, exps, arity, out);
            for (c, &e) in parts[pi].values().iter().enumerate() {
                exps[i * arity + c] -= e;
            }
            used[i] = false;
        }
    }
    rec(parts, 0, &mut used, &mut exps, sample.arity, &mut out);
    Ok(out)
}

/// Expectation of an indexed polynomial: each unit factors out as the
/// moment of its exponent tuple; units with all-zero exponents contribute
/// nothing.
pub fn expectation(p: &IndexedPoly, sample: &FormalSample) -> SymExpr {
    let arity = sample.arity;
    let mut out = SymExpr::zero();
    for (exps, coeff) in &p.terms {
        let mut powers: Vec<(Atom, u32)> = Vec::new();
        for unit in exps.chunks(arity.max(1)) {
            if unit.iter().all(|&e| e == 0) {
                continue;
            }
            powers.push((Atom::Moment(Exponents::new(unit.to_vec())), 1));
        }
        out.add_term(Term::from_powers(powers), coeff.clone());
    }
    out
}

/// Expectation of an expression in `n`, falling factorials, power sums, and
/// brackets at a concrete sample, by full expansion. Per-term expansions are
/// memoized on `(term, n, arity)`.
pub fn expectation_of_expr(e: &SymExpr, sample: &FormalSample) -> Result<SymExpr> {
    let mut out = SymExpr::zero();
    for (term, coeff) in e.terms() {
        let mut scalar = coeff.clone();
        let mut sym: Vec<(Atom, u32)> = Vec::new();
        for (a, p) in term.atoms() {
            match a {
                Atom::N => {
                    let nv = Rational::from(BigInt::from(sample.n));
                    for _ in 0..*p {
                        scalar *= &nv;
                    }
                }
                Atom::Falling(k) => {
                    let fv = falling_value(sample.n, *k as u32);
                    for _ in 0..*p {
                        scalar *= &fv;
                    }
                }
                Atom::PowerSum(_) | Atom::Aug(_) => sym.push((a.clone(), *p)),
                Atom::Moment(_) => return Err(Error::BracketProduct),
            }
        }
        if scalar.is_zero() {
            continue;
        }
        if sym.is_empty() {
            out.add_term(Term::one(), scalar);
        } else {
            let expanded = cached_term_expectation(Term::from_powers(sym), sample)?;
            out.add_scaled(&scalar, &expanded);
        }
    }
    Ok(out)
}

/// Expectation of an estimator at a concrete sample. Rejected when the
/// sample is smaller than the expression's total degree: the defining
/// bracket sums are empty there and the estimator does not exist.
pub fn expectation_of_estimator(re: &RationalExpr, sample: &FormalSample) -> Result<SymExpr> {
    let degree = re.num.sym_degree();
    if sample.n < degree {
        return Err(Error::SpecializationTooSmall {
            n: sample.n,
            degree,
        });
    }
    let den = re.den.value_at(sample.n);
    if den.is_zero() {
        return Err(Error::SpecializationTooSmall {
            n: sample.n,
            degree: re.den.degree(),
        });
    }
    let num = expectation_of_expr(&re.num, sample)?;
    Ok(num.scale(&den.recip()))
}

/// Check one unbiasedness instance: the oracle expectation of `estimator`
/// at `sample` equals `target` (an expression in moments), exactly.
pub fn is_unbiased_at(
    estimator: &RationalExpr,
    target: &SymExpr,
    sample: &FormalSample,
) -> Result<bool> {
    Ok(expectation_of_estimator(estimator, sample)? == *target)
}

/// Evaluate an expression at concrete rational data, one vector per unit.
/// Power sums sum over units, brackets over injective tuples; the result is
/// an exact rational.
pub fn eval_with_data(e: &SymExpr, data: &[Vec<Rational>]) -> Result<Rational> {
    let n = data.len() as u32;
    let mut total = Rational::zero();
    for (term, coeff) in e.terms() {
        let mut v = coeff.clone();
        for (a, p) in term.atoms() {
            let base = match a {
                Atom::N => Rational::from(BigInt::from(n)),
                Atom::Falling(k) => falling_value(n, *k as u32),
                Atom::PowerSum(vx) => power_sum_value(vx, data),
                Atom::Aug(b) => bracket_value(b, data),
                Atom::Moment(_) => return Err(Error::BracketProduct),
            };
            for _ in 0..*p {
                v *= &base;
            }
        }
        total += v;
    }
    Ok(total)
}

/// Evaluate a fraction at concrete data.
pub fn eval_rational_with_data(re: &RationalExpr, data: &[Vec<Rational>]) -> Result<Rational> {
    let den = re.den.value_at(data.len() as u32);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(eval_with_data(&re.num, data)? / den)
}

fn power_sum_value(v: &Exponents, data: &[Vec<Rational>]) -> Rational {
    data.iter().map(|unit| unit_monomial(v, unit)).sum()
}

fn bracket_value(b: &Bracket, data: &[Vec<Rational>]) -> Rational {
    let n = data.len();
    let parts = b.parts();
    if parts.len() > n {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let mut used = vec![false; n];
    fn rec(
        parts: &[Exponents],
        pi: usize,
        used: &mut Vec<bool>,
        acc: Rational,
        data: &[Vec<Rational>],
        total: &mut Rational,
    ) {
        if pi == parts.len() {
            *total += acc;
            return;
        }
        for i in 0..data.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let v = &acc * unit_monomial(&parts[pi], &data[i]);
            rec(parts, pi + 1, used, v, data, total);
            used[i] = false;
        }
    }
    rec(parts, 0, &mut used, Rational::one(), data, &mut total);
    total
}

fn unit_monomial(v: &Exponents, unit: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (c, &e) in v.values().iter().enumerate() {
        for _ in 0..e {
            acc *= &unit[c];
        }
    }
    acc
}

fn falling_value(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= Rational::from(BigInt::from(n as i64 - j as i64));
    }
    acc
}

fn cached_term_expectation(term: Term, sample: &FormalSample) -> Result<Arc<SymExpr>> {
    type Key = (Term, u32, usize);
    static CACHE: LazyLock<Mutex<HashMap<Key, Arc<SymExpr>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));

    let key = (term.clone(), sample.n, sample.arity);
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut poly = IndexedPoly::one(sample);
    for (a, p) in term.atoms() {
        let factor = match a {
            Atom::PowerSum(v) => expand_power_sum(v, sample)?,
            Atom::Aug(b) => expand_bracket(b, sample)?,
            _ => unreachable!("scalar atoms handled by the caller"),
        };
        for _ in 0..*p {
            poly = poly.mul(&factor);
        }
    }
    let result = Arc::new(expectation(&poly, sample));
    CACHE.lock().unwrap().insert(key, result.clone());
    Ok(result)
}

fn check_width(v: &Exponents, sample: &FormalSample) -> Result<()> {
    if v.width() != sample.arity {
        return Err(Error::ArityMismatch {
            left: v.width(),
            right: sample.arity,
        });
    }
    Ok(())
}
