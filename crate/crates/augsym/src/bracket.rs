//! Augmented symmetric functions, identified by their multiset of exponent
//! vectors. `[v1 v2 ...]` stands for the sum over injective index tuples of
//! the monomials `v1, v2, ...` evaluated at distinct sample units.

use crate::combinatorics::Multiset;
use crate::error::{Error, Result};
use crate::monomial::{Exponents, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    parts: Vec<Exponents>,
}

impl Bracket {
    /// Build from exponent vectors. Parts are sorted canonically; the zero
    /// vector is rejected, as are mixed widths.
    pub fn new(mut parts: Vec<Exponents>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput("bracket needs at least one part"));
        }
        if parts.iter().any(Exponents::is_zero) {
            return Err(Error::ZeroExponentVector);
        }
        let width = parts[0].width();
        if let Some(bad) = parts.iter().find(|p| p.width() != width) {
            return Err(Error::ArityMismatch {
                left: width,
                right: bad.width(),
            });
        }
        parts.sort();
        Ok(Self { parts })
    }

    /// Univariate bracket from a partition-style list of exponents,
    /// e.g. `[2, 1, 1]` for `[1^2 2]`.
    pub fn univariate(exponents: &[u16]) -> Result<Self> {
        Self::new(exponents.iter().map(|&e| Exponents::uni(e)).collect())
    }

    pub fn parts(&self) -> &[Exponents] {
        &self.parts
    }

    /// Number of parts, counted with repetition.
    pub fn len(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn width(&self) -> usize {
        self.parts[0].width()
    }

    pub fn total_degree(&self) -> u32 {
        self.parts.iter().map(Exponents::degree).sum()
    }

    /// The parts as an unlabeled monomial multiset.
    pub fn to_multiset(&self) -> Multiset<Monomial> {
        Multiset::from_elems(
            self.parts
                .iter()
                .map(|e| Monomial::unlabeled(e.clone()))
                .collect::<Vec<_>>(),
        )
    }

    /// Rebuild a bracket from an unlabeled monomial multiset.
    pub fn from_multiset(m: &Multiset<Monomial>) -> Result<Self> {
        Self::new(
            m.iter_expanded()
                .map(|mono| mono.exponents().clone())
                .collect(),
        )
    }
}

impl std::fmt::Display for Bracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_part_order() {
        let b = Bracket::new(vec![
            Exponents::new(vec![2, 1]),
            Exponents::new(vec![1, 0]),
            Exponents::new(vec![2, 0]),
        ])
        .unwrap();
        assert_eq!(b.to_string(), "1,0;2,0;2,1");
        assert_eq!(b.total_degree(), 6);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn rejects_zero_and_mixed_width() {
        assert!(Bracket::new(vec![Exponents::new(vec![0, 0])]).is_err());
        assert!(Bracket::new(vec![Exponents::uni(1), Exponents::new(vec![1, 0])]).is_err());
        assert!(Bracket::new(vec![]).is_err());
    }
}
