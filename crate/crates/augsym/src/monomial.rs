//! Umbral monomials: a power product over a fixed-width variable family,
//! optionally tagged with singleton labels.
//!
//! A label stands for one factor of a singleton symbol: two factors carrying
//! the same label square it, and a squared singleton evaluates to zero. That
//! single rule is what keeps indices distinct when brackets are multiplied,
//! see [`merge_block`].

use std::cmp::Ordering;

use crate::combinatorics::Multiset;

/// Exponent vector over a variable family of fixed width.
///
/// Ordered by total degree first, then lexicographically with the last
/// coordinate most significant, so that within one degree the vectors run
/// `(2,0) < (1,1) < (0,2)`. This is the canonical order used everywhere an
/// exponent vector acts as a key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u16>);

impl Exponents {
    pub fn new(v: Vec<u16>) -> Self {
        Self(v)
    }

    /// Width-1 vector, for the univariate case.
    pub fn uni(e: u16) -> Self {
        Self(vec![e])
    }

    pub fn values(&self) -> &[u16] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum; the shorter vector is padded with zeros.
    pub fn add(&self, other: &Exponents) -> Exponents {
        let w = self.0.len().max(other.0.len());
        let mut v = vec![0u16; w];
        for (i, e) in self.0.iter().enumerate() {
            v[i] += e;
        }
        for (i, e) in other.0.iter().enumerate() {
            v[i] += e;
        }
        Exponents(v)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u16>> for Exponents {
    fn from(v: Vec<u16>) -> Self {
        Self(v)
    }
}

impl std::fmt::Display for Exponents {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A commutative power product with an optional multiset of singleton
/// labels. Canonical order: total degree, then exponent vector, then labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    labels: Vec<u32>,
}

impl Monomial {
    pub fn unlabeled(exps: Exponents) -> Self {
        Self {
            exps,
            labels: Vec::new(),
        }
    }

    pub fn labeled(exps: Exponents, label: u32) -> Self {
        Self {
            exps,
            labels: vec![label],
        }
    }

    pub fn with_labels(exps: Exponents, mut labels: Vec<u32>) -> Self {
        labels.sort_unstable();
        Self { exps, labels }
    }

    pub fn exponents(&self) -> &Exponents {
        &self.exps
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn is_labeled(&self) -> bool {
        !self.labels.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.degree()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .cmp(&other.exps)
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Evaluate a block of monomials under the singleton rules.
///
/// If any label occurs at least twice across the block (counting each
/// factor's copies), the block annihilates and `None` is returned. Otherwise
/// the product survives: exponent vectors sum and every surviving label is
/// dropped, since a lone singleton factor evaluates to one.
pub fn merge_block(block: &Multiset<Monomial>) -> Option<Monomial> {
    let mut seen: Vec<u32> = Vec::new();
    let mut exps = Exponents::new(Vec::new());
    for (mono, mult) in block.entries() {
        if *mult >= 2 && mono.is_labeled() {
            return None;
        }
        for &l in mono.labels() {
            if seen.contains(&l) {
                return None;
            }
            seen.push(l);
        }
        for _ in 0..*mult {
            exps = exps.add(mono.exponents());
        }
    }
    Some(Monomial::unlabeled(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: Vec<u16>) -> Monomial {
        Monomial::unlabeled(Exponents::new(v))
    }

    #[test]
    fn exponent_order_is_degree_then_lex() {
        let a = Exponents::new(vec![2, 0]);
        let b = Exponents::new(vec![1, 1]);
        let c = Exponents::new(vec![0, 2]);
        let d = Exponents::new(vec![0, 1]);
        assert!(d < a && a < b && b < c);
        assert!(Exponents::new(vec![1, 0]) < Exponents::new(vec![0, 1]));
    }

    #[test]
    fn merge_of_distinct_labels_sums_and_strips() {
        // {x1 u1^2, x2 u1^2 u2} -> u1^4 u2
        let block = Multiset::from_elems(vec![
            Monomial::labeled(Exponents::new(vec![2, 0]), 1),
            Monomial::labeled(Exponents::new(vec![2, 1]), 2),
        ]);
        let merged = merge_block(&block).unwrap();
        assert_eq!(merged, m(vec![4, 1]));
        assert!(!merged.is_labeled());
    }

    #[test]
    fn merge_annihilates_on_repeated_label() {
        let block = Multiset::from_elems(vec![
            Monomial::labeled(Exponents::new(vec![2]), 1),
            Monomial::labeled(Exponents::new(vec![1]), 1),
        ]);
        assert_eq!(merge_block(&block), None);

        // A doubled labeled factor annihilates on its own.
        let block = Multiset::from_pairs(vec![(Monomial::labeled(Exponents::new(vec![1]), 7), 2)]);
        assert_eq!(merge_block(&block), None);
    }

    #[test]
    fn merge_singleton_block() {
        let block = Multiset::from_elems(vec![m(vec![1, 0])]);
        assert_eq!(merge_block(&block).unwrap(), m(vec![1, 0]));
    }

    #[test]
    fn merge_is_label_consistent() {
        // All-distinct labels give the same product as no labels at all.
        let labeled = Multiset::from_elems(vec![
            Monomial::labeled(Exponents::new(vec![1, 2]), 3),
            Monomial::labeled(Exponents::new(vec![2, 0]), 4),
        ]);
        let plain = Multiset::from_elems(vec![m(vec![1, 2]), m(vec![2, 0])]);
        assert_eq!(merge_block(&labeled), merge_block(&plain));
    }
}
