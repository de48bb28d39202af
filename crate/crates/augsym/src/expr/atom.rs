use std::cmp::Ordering;

use crate::bracket::Bracket;
use crate::monomial::Exponents;

/// One formal symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// The sample size `n`.
    N,
    /// Falling factorial `(n)_k = n (n-1) ... (n-k+1)`, kept factored until
    /// expansion is requested.
    Falling(u16),
    /// Power sum `S_v`.
    PowerSum(Exponents),
    /// Population moment `m_v`.
    Moment(Exponents),
    /// Augmented symmetric function.
    Aug(Bracket),
}

impl Atom {
    fn rank(&self) -> u8 {
        match self {
            Atom::N => 0,
            Atom::Falling(_) => 1,
            Atom::PowerSum(_) => 2,
            Atom::Moment(_) => 3,
            Atom::Aug(_) => 4,
        }
    }

    /// Whether the atom is a pure function of `n`.
    pub fn is_scalar_in_n(&self) -> bool {
        matches!(self, Atom::N | Atom::Falling(_))
    }

    /// Total degree in the underlying sample variables (zero for `n`-atoms).
    pub fn sym_degree(&self) -> u32 {
        match self {
            Atom::N | Atom::Falling(_) => 0,
            Atom::PowerSum(v) | Atom::Moment(v) => v.degree(),
            Atom::Aug(b) => b.total_degree(),
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Atom::N, Atom::N) => Ordering::Equal,
            (Atom::Falling(a), Atom::Falling(b)) => a.cmp(b),
            (Atom::PowerSum(a), Atom::PowerSum(b)) | (Atom::Moment(a), Atom::Moment(b)) => {
                a.cmp(b)
            }
            (Atom::Aug(a), Atom::Aug(b)) => a.cmp(b),
            _ => unreachable!("rank already ordered distinct variants"),
        })
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
