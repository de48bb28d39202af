/// An ordered multiset: distinct elements kept sorted, each with a positive
/// multiplicity. Equal elements are merged on construction, so structural
/// equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord> {
    entries: Vec<(T, u32)>,
}

impl<T: Ord> Multiset<T> {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Build from `(element, multiplicity)` pairs; equal elements merge and
    /// zero multiplicities are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (T, u32)>) -> Self {
        let mut entries: Vec<(T, u32)> = Vec::new();
        for (t, m) in pairs {
            if m == 0 {
                continue;
            }
            entries.push((t, m));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(T, u32)> = Vec::with_capacity(entries.len());
        for (t, m) in entries {
            match merged.last_mut() {
                Some((last, lm)) if *last == t => *lm += m,
                _ => merged.push((t, m)),
            }
        }
        Self { entries: merged }
    }

    pub fn from_elems(elems: impl IntoIterator<Item = T>) -> Self {
        Self::from_pairs(elems.into_iter().map(|t| (t, 1)))
    }

    /// Total size counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct elements.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(T, u32)] {
        &self.entries
    }

    /// Iterate elements repeated by multiplicity.
    pub fn iter_expanded(&self) -> impl Iterator<Item = &T> {
        self.entries
            .iter()
            .flat_map(|(t, m)| std::iter::repeat(t).take(*m as usize))
    }

    pub fn map<U: Ord>(&self, mut f: impl FnMut(&T) -> U) -> Multiset<U> {
        Multiset::from_pairs(self.entries.iter().map(|(t, m)| (f(t), *m)))
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::from_elems(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_orders() {
        let m = Multiset::from_elems(vec!["b", "a", "b", "a", "a"]);
        assert_eq!(m.entries(), &[("a", 3), ("b", 2)]);
        assert_eq!(m.len(), 5);
        assert_eq!(m.support_len(), 2);

        let same = Multiset::from_pairs(vec![("b", 2), ("a", 2), ("a", 1), ("c", 0)]);
        assert_eq!(m, same);
    }
}
