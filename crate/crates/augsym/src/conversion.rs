//! Changes of basis between products of power sums and augmented symmetric
//! functions, and products of the latter.
//!
//! All three expansions are sums over the subdivisions of one multiset:
//!
//! - a product of power sums indexed by `M` expands over subdivisions of
//!   `M`, each block merging into one bracket part;
//! - a bracket expands back into power sums over subdivisions of its part
//!   multiset, a block of size `b` contributing the factorial-moment
//!   coefficient `(-1)^(b-1) (b-1)!`;
//! - a product of brackets is the first expansion applied to the labeled
//!   union of their parts, where one singleton label per input bracket
//!   keeps that bracket's indices distinct and any block evaluating to zero
//!   is skipped during enumeration.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;

use crate::bracket::Bracket;
use crate::combinatorics::{factorial, raw_subdivisions, subdivisions, Multiset};
use crate::error::{Error, Result};
use crate::expr::{Atom, SymExpr, Term};
use crate::monomial::{merge_block, Exponents, Monomial};
use crate::Rational;

/// Factorial moment of the singleton symbol: `(-1)^(k-1) (k-1)!`.
pub fn singleton_factorial_moment(k: u32) -> Rational {
    let mag = factorial(k as u64 - 1);
    let v = if k % 2 == 0 { -mag } else { mag };
    Rational::from(v)
}

/// Merge a sparse `(slot, count)` block over `elements` into one exponent
/// vector.
pub(crate) fn merge_entries(entries: &[(u16, u16)], elements: &[(Exponents, u32)]) -> Exponents {
    let width = elements[0].0.width();
    let mut merged = vec![0u16; width];
    for &(slot, c) in entries {
        for (coord, &e) in elements[slot as usize].0.values().iter().enumerate() {
            merged[coord] += e * c;
        }
    }
    Exponents::new(merged)
}

/// Expand a product of power sums, one factor per element of `m` (with
/// multiplicity), into a sum of brackets.
///
/// Labeled input is rejected here; labels belong to [`aug_product`].
pub fn ps_to_aug(m: &Multiset<Monomial>) -> Result<SymExpr> {
    if m.entries().iter().any(|(mono, _)| mono.is_labeled()) {
        return Err(Error::LabeledInput);
    }
    let elements: Vec<(Exponents, u32)> = m
        .entries()
        .iter()
        .map(|(mono, c)| (mono.exponents().clone(), *c))
        .collect();
    let mults: Vec<u32> = elements.iter().map(|(_, c)| *c).collect();
    let mut out = SymExpr::zero();
    for sub in raw_subdivisions(&mults, None)?.iter() {
        let mut parts = Vec::with_capacity(sub.block_count() as usize);
        for block in sub.blocks() {
            let merged = merge_entries(block.entries, &elements);
            for _ in 0..block.rep {
                parts.push(merged.clone());
            }
        }
        let bracket = Bracket::new(parts)?;
        out.add_term(
            Term::from_atom(Atom::Aug(bracket)),
            Rational::from(BigInt::from(sub.multiplicity)),
        );
    }
    Ok(out)
}

/// Expand one bracket into power sums.
///
/// Each subdivision of the part multiset contributes its multiplicity times
/// a product over blocks of `(-1)^(b-1) (b-1)! * S_(merged exponents)`,
/// where `b` counts the block's parts with repetition.
pub fn aug_to_ps(b: &Bracket) -> SymExpr {
    if let Some(cached) = cache_get(b) {
        return (*cached).clone();
    }
    let mut elements: Vec<(Exponents, u32)> = Vec::new();
    for p in b.parts() {
        match elements.last_mut() {
            Some((last, c)) if last == p => *c += 1,
            _ => elements.push((p.clone(), 1)),
        }
    }
    let mults: Vec<u32> = elements.iter().map(|(_, c)| *c).collect();
    let mut out = SymExpr::zero();
    for sub in raw_subdivisions(&mults, None)
        .expect("bracket is non-empty")
        .iter()
    {
        let mut coeff = Rational::from(BigInt::from(sub.multiplicity));
        let mut powers: Vec<(Atom, u32)> = Vec::new();
        for block in sub.blocks() {
            let merged = merge_entries(block.entries, &elements);
            let x = singleton_factorial_moment(block.size);
            for _ in 0..block.rep {
                coeff *= &x;
            }
            powers.push((Atom::PowerSum(merged), block.rep));
        }
        out.add_term(Term::from_powers(powers), coeff);
    }
    cache_put(b, &out);
    out
}

/// Expand a product of brackets into a single sum of brackets.
///
/// Every part of the `i`-th input bracket carries label `i`; subdivisions of
/// the combined multiset are enumerated with annihilating placements pruned,
/// and each surviving subdivision contributes one bracket of merged blocks.
/// Zero contributions are never emitted.
pub fn aug_product(brackets: &[Bracket]) -> Result<SymExpr> {
    if brackets.is_empty() {
        return Err(Error::EmptyInput("bracket product needs at least one factor"));
    }
    let width = brackets[0].width();
    if let Some(bad) = brackets.iter().find(|b| b.width() != width) {
        return Err(Error::ArityMismatch {
            left: width,
            right: bad.width(),
        });
    }
    let labeled = Multiset::from_elems(brackets.iter().enumerate().flat_map(|(i, b)| {
        b.parts()
            .iter()
            .map(move |p| Monomial::labeled(p.clone(), i as u32))
    }));
    let mut out = SymExpr::zero();
    for sub in subdivisions(&labeled)? {
        let mut parts = Vec::with_capacity(sub.block_count() as usize);
        for (block, rep) in sub.blocks() {
            // Pruning already rejected label collisions.
            let merged = merge_block(block).expect("colliding labels are pruned during insertion");
            for _ in 0..*rep {
                parts.push(merged.exponents().clone());
            }
        }
        out.add_term(
            Term::from_atom(Atom::Aug(Bracket::new(parts)?)),
            Rational::from(BigInt::from(sub.multiplicity())),
        );
    }
    Ok(out)
}

/// Take the expectation of a sum of brackets: a bracket with `k` parts
/// `v_1 ... v_k` becomes `(n)_k * m_{v_1} ... m_{v_k}`.
///
/// Terms may carry powers of `n` and falling factorials but at most one
/// bracket atom to the first power; a product of brackets has no
/// expectation until it is expanded through [`aug_product`].
pub fn expectation_of_brackets(e: &SymExpr) -> Result<SymExpr> {
    let mut out = SymExpr::zero();
    for (term, coeff) in e.terms() {
        let mut rest: Vec<(Atom, u32)> = Vec::new();
        let mut bracket: Option<&Bracket> = None;
        for (a, p) in term.atoms() {
            match a {
                Atom::Aug(b) => {
                    if bracket.is_some() || *p > 1 {
                        return Err(Error::BracketProduct);
                    }
                    bracket = Some(b);
                }
                Atom::N | Atom::Falling(_) => rest.push((a.clone(), *p)),
                Atom::PowerSum(_) | Atom::Moment(_) => return Err(Error::BracketProduct),
            }
        }
        if let Some(b) = bracket {
            rest.push((Atom::Falling(b.len() as u16), 1));
            for part in b.parts() {
                rest.push((Atom::Moment(part.clone()), 1));
            }
        }
        out.add_term(Term::from_powers(rest), coeff.clone());
    }
    Ok(out)
}

// Bracket expansions recur constantly inside the estimator sums; keep a
// bounded cache. Past the cap entries are computed but not stored, which
// only costs time on workloads with little reuse anyway.
const AUG_TO_PS_CACHE_CAP: usize = 20_000;

static AUG_TO_PS_CACHE: LazyLock<Mutex<HashMap<Bracket, Arc<SymExpr>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn cache_get(b: &Bracket) -> Option<Arc<SymExpr>> {
    AUG_TO_PS_CACHE.lock().unwrap().get(b).cloned()
}

fn cache_put(b: &Bracket, e: &SymExpr) {
    let mut cache = AUG_TO_PS_CACHE.lock().unwrap();
    if cache.len() < AUG_TO_PS_CACHE_CAP {
        cache.insert(b.clone(), Arc::new(e.clone()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Exponents;

    fn uni(e: u16) -> Monomial {
        Monomial::unlabeled(Exponents::uni(e))
    }

    fn bi(x: u16, y: u16) -> Monomial {
        Monomial::unlabeled(Exponents::new(vec![x, y]))
    }

    fn aug_term(parts: Vec<Vec<u16>>) -> Term {
        Term::from_atom(Atom::Aug(
            Bracket::new(parts.into_iter().map(Exponents::new).collect()).unwrap(),
        ))
    }

    fn r(x: i64) -> Rational {
        Rational::from(BigInt::from(x))
    }

    #[test]
    fn ps_to_aug_single_and_square() {
        // S_1 = [1]
        let e = ps_to_aug(&Multiset::from_elems(vec![uni(1)])).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(aug_term(vec![vec![1]]), r(1));
        assert_eq!(e, expect);

        // S_1^2 = [2] + [1^2]
        let e = ps_to_aug(&Multiset::from_elems(vec![uni(1), uni(1)])).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(aug_term(vec![vec![2]]), r(1));
        expect.add_term(aug_term(vec![vec![1], vec![1]]), r(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn ps_to_aug_bivariate_example() {
        // (sum X)^2 (sum Y) over {u1, u1, u2}
        let m = Multiset::from_elems(vec![bi(1, 0), bi(1, 0), bi(0, 1)]);
        let e = ps_to_aug(&m).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(aug_term(vec![vec![2, 1]]), r(1));
        expect.add_term(aug_term(vec![vec![1, 0], vec![1, 1]]), r(2));
        expect.add_term(aug_term(vec![vec![0, 1], vec![2, 0]]), r(1));
        expect.add_term(aug_term(vec![vec![1, 0], vec![1, 0], vec![0, 1]]), r(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn ps_to_aug_rejects_labels() {
        let m = Multiset::from_elems(vec![Monomial::labeled(Exponents::uni(1), 0)]);
        assert!(matches!(ps_to_aug(&m), Err(Error::LabeledInput)));
    }

    #[test]
    fn aug_to_ps_pairs() {
        // [1^2] = S1^2 - S2
        let e = aug_to_ps(&Bracket::univariate(&[1, 1]).unwrap());
        let s1 = SymExpr::from_atom(Atom::PowerSum(Exponents::uni(1)));
        let s2 = SymExpr::from_atom(Atom::PowerSum(Exponents::uni(2)));
        assert_eq!(e, &s1.mul(&s1) - &s2);

        // [1] = S1
        let e = aug_to_ps(&Bracket::univariate(&[1]).unwrap());
        assert_eq!(e, s1);

        // [1 2] = S1 S2 - S3
        let e = aug_to_ps(&Bracket::univariate(&[1, 2]).unwrap());
        let s3 = SymExpr::from_atom(Atom::PowerSum(Exponents::uni(3)));
        assert_eq!(e, &s1.mul(&s2) - &s3);
    }

    #[test]
    fn aug_to_ps_signs_alternate_by_block_count() {
        use num_traits::Signed;
        let b = Bracket::univariate(&[1, 1, 2, 3]).unwrap();
        let total = b.len();
        for (term, coeff) in aug_to_ps(&b).terms() {
            let k: u32 = term.atoms().iter().map(|(_, p)| p).sum();
            let expect_negative = (total - k) % 2 == 1;
            assert_eq!(coeff.is_negative(), expect_negative, "term {term:?}");
        }
    }

    #[test]
    fn aug_product_of_two_singletons() {
        // [1] * [1] = [2] + [1^2]
        let b = Bracket::univariate(&[1]).unwrap();
        let e = aug_product(&[b.clone(), b]).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(aug_term(vec![vec![2]]), r(1));
        expect.add_term(aug_term(vec![vec![1], vec![1]]), r(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn aug_product_single_bracket_is_identity() {
        let b = Bracket::new(vec![
            Exponents::new(vec![2, 0]),
            Exponents::new(vec![1, 0]),
            Exponents::new(vec![1, 0]),
        ])
        .unwrap();
        let e = aug_product(std::slice::from_ref(&b)).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(Term::from_atom(Atom::Aug(b)), r(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn aug_product_three_bracket_table() {
        // [ (2,0)(1,0) ] * [ (2,1) ] * [ (2,1) ]: seven surviving brackets
        // with coefficients 1,2,2,1,2,1,1.
        let b1 = Bracket::new(vec![Exponents::new(vec![2, 0]), Exponents::new(vec![1, 0])])
            .unwrap();
        let b2 = Bracket::new(vec![Exponents::new(vec![2, 1])]).unwrap();
        let e = aug_product(&[b1, b2.clone(), b2]).unwrap();

        let mut expect = SymExpr::zero();
        expect.add_term(
            aug_term(vec![vec![2, 0], vec![1, 0], vec![2, 1], vec![2, 1]]),
            r(1),
        );
        expect.add_term(aug_term(vec![vec![4, 1], vec![1, 0], vec![2, 1]]), r(2));
        expect.add_term(aug_term(vec![vec![3, 1], vec![2, 0], vec![2, 1]]), r(2));
        expect.add_term(aug_term(vec![vec![4, 2], vec![1, 0], vec![2, 0]]), r(1));
        expect.add_term(aug_term(vec![vec![4, 1], vec![3, 1]]), r(2));
        expect.add_term(aug_term(vec![vec![5, 2], vec![2, 0]]), r(1));
        expect.add_term(aug_term(vec![vec![6, 2], vec![1, 0]]), r(1));
        assert_eq!(e, expect);
    }

    #[test]
    fn expectation_of_bracket_sum() {
        // E[[1]] = n m1; E[[1][1]] = (n)_2 m1^2
        let mut e = SymExpr::zero();
        e.add_term(aug_term(vec![vec![1]]), r(1));
        let got = expectation_of_brackets(&e).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(
            Term::from_powers(vec![
                (Atom::Falling(1), 1),
                (Atom::Moment(Exponents::uni(1)), 1),
            ]),
            r(1),
        );
        assert_eq!(got, expect);

        let mut e = SymExpr::zero();
        e.add_term(aug_term(vec![vec![1], vec![1]]), r(1));
        let got = expectation_of_brackets(&e).unwrap();
        let mut expect = SymExpr::zero();
        expect.add_term(
            Term::from_powers(vec![
                (Atom::Falling(2), 1),
                (Atom::Moment(Exponents::uni(1)), 2),
            ]),
            r(1),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn expectation_rejects_bracket_products() {
        let t = aug_term(vec![vec![1]]);
        let mut e = SymExpr::zero();
        e.add_term(t.mul(&aug_term(vec![vec![2]])), r(1));
        assert!(matches!(
            expectation_of_brackets(&e),
            Err(Error::BracketProduct)
        ));
    }
}
