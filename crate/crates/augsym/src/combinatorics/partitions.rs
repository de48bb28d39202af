use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition of a non-negative integer, stored as its weakly decreasing
/// list of positive parts. The multiplicity form (how many parts equal `j`)
/// is derived on demand so the two views cannot drift apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    /// Build from a weakly decreasing list of positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition);
        }
        Ok(Self { parts })
    }

    /// Build from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity form: map from part value `j` to the count of parts
    /// equal to `j`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl std::fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `i`, in decreasing-lexicographic order on the part
/// lists: `3 -> (3), (2,1), (1,1,1)`. For `i = 0` the single empty
/// partition is returned.
pub fn integer_partitions(i: u32) -> Vec<IntegerPartition> {
    fn rec(remaining: u32, bound: u32, current: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition {
                parts: current.clone(),
            });
            return;
        }
        for part in (1..=bound.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(i, i, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= j;
    }
    acc
}

/// Multinomial coefficient `n! / (parts[0]! * parts[1]! * ...)`.
/// The parts must sum to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u32>(), n);
    let mut acc = factorial(n as u64);
    for &p in parts {
        if p > 1 {
            acc /= factorial(p as u64);
        }
    }
    acc
}

/// Number of set partitions whose block sizes form the partition `lambda`:
/// `i! / (prod_j r_j! * prod_j (j!)^{r_j})` where `r_j` counts parts equal
/// to `j`.
pub fn d_lambda(lambda: &IntegerPartition) -> BigInt {
    let mut acc = factorial(lambda.sum() as u64);
    for (&j, &r) in &lambda.multiplicities() {
        acc /= factorial(r as u64);
        let jf = factorial(j as u64);
        for _ in 0..r {
            acc /= &jf;
        }
    }
    acc
}

/// `Bell(k)`, the number of set partitions of a `k`-element set, via the
/// Bell triangle.
pub fn bell_number(k: u32) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut row = vec![BigInt::one()];
    for _ in 1..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let prev: BigInt = next.last().unwrap().clone();
            next.push(prev + v);
        }
        row = next;
    }
    row.last().cloned().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::set_partitions;

    #[test]
    fn partitions_of_zero_and_three() {
        let p0 = integer_partitions(0);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].is_empty());

        let p3 = integer_partitions(3);
        let parts: Vec<&[u32]> = p3.iter().map(|p| p.parts()).collect();
        assert_eq!(parts, vec![&[3][..], &[2, 1][..], &[1, 1, 1][..]]);
    }

    #[test]
    fn partition_count_of_twelve() {
        // Independent count via Euler's pentagonal-number recurrence.
        fn p_rec(n: usize) -> i64 {
            let mut p = vec![0i64; n + 1];
            p[0] = 1;
            for i in 1..=n {
                let mut k = 1i64;
                loop {
                    let g1 = k * (3 * k - 1) / 2;
                    let g2 = k * (3 * k + 1) / 2;
                    if g1 as usize > i && g2 as usize > i {
                        break;
                    }
                    let sign = if k % 2 == 0 { -1 } else { 1 };
                    if g1 as usize <= i {
                        p[i] += sign * p[i - g1 as usize];
                    }
                    if g2 as usize <= i {
                        p[i] += sign * p[i - g2 as usize];
                    }
                    k += 1;
                }
            }
            p[n]
        }
        assert_eq!(p_rec(12), 77);
        assert_eq!(integer_partitions(12).len(), 77);
        for i in 0..=15u32 {
            assert_eq!(integer_partitions(i).len() as i64, p_rec(i as usize));
        }
    }

    #[test]
    fn d_lambda_small_cases() {
        let l = IntegerPartition::new(vec![1, 1]).unwrap();
        assert_eq!(d_lambda(&l), BigInt::from(1));
        let l = IntegerPartition::new(vec![2, 1]).unwrap();
        assert_eq!(d_lambda(&l), BigInt::from(3));
    }

    #[test]
    fn d_lambda_matches_set_partition_counts() {
        // Count set partitions of {1..i} by block-size type and compare.
        for i in [4u32, 5, 6, 10] {
            let mut by_type: std::collections::HashMap<Vec<u32>, u64> =
                std::collections::HashMap::new();
            for blocks in set_partitions(i).unwrap() {
                let mut sizes: Vec<u32> = blocks.iter().map(|b| b.len() as u32).collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                *by_type.entry(sizes).or_insert(0) += 1;
            }
            for lambda in integer_partitions(i) {
                let counted = by_type.get(lambda.parts()).copied().unwrap_or(0);
                assert_eq!(BigInt::from(counted), d_lambda(&lambda), "type {lambda}");
            }
        }
        // The ten-element case from the direct formula.
        let l = IntegerPartition::from_unsorted(vec![1, 1, 2, 3, 3]).unwrap();
        assert_eq!(l.sum(), 10);
        assert_eq!(d_lambda(&l), BigInt::from(12600));
    }

    #[test]
    fn bell_numbers() {
        let expect = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (k, &b) in expect.iter().enumerate() {
            assert_eq!(bell_number(k as u32), BigInt::from(b));
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
        assert!(IntegerPartition::new(vec![2, 0]).is_err());
    }
}
