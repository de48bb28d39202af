use crate::error::{Error, Result};

/// Largest set the brute-force partition stream will enumerate.
/// `Bell(13)` is about 2.7e7, which is the ceiling for desk-scale oracle runs.
pub const MAX_SET_PARTITION_SIZE: u32 = 13;

/// Streams every partition of `{1, ..., k}` exactly once as a list of
/// blocks, each block a sorted list of element indices. Enumeration walks
/// restricted growth strings, so the total count is `Bell(k)`.
///
/// This is oracle plumbing: the subdivision engine never calls it, the tests
/// use it to check the subdivision engine.
pub fn set_partitions(k: u32) -> Result<SetPartitions> {
    if k == 0 || k > MAX_SET_PARTITION_SIZE {
        return Err(Error::SetPartitionGuard {
            k,
            max: MAX_SET_PARTITION_SIZE,
        });
    }
    Ok(SetPartitions {
        rgs: vec![0; k as usize],
        done: false,
    })
}

pub struct SetPartitions {
    rgs: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn blocks(&self) -> Vec<Vec<u32>> {
        let nblocks = self.rgs.iter().copied().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i as u32 + 1);
        }
        blocks
    }

    fn advance(&mut self) -> bool {
        // Rightmost position that can still be bumped within the growth bound.
        let k = self.rgs.len();
        for i in (1..k).rev() {
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for j in i + 1..k {
                    self.rgs[j] = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<Vec<u32>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.blocks();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell_number;
    use num_bigint::BigInt;

    #[test]
    fn counts_match_bell() {
        assert_eq!(set_partitions(1).unwrap().count(), 1);
        assert_eq!(set_partitions(3).unwrap().count(), 5);
        assert_eq!(set_partitions(4).unwrap().count(), 15);
        for k in 1..=8u32 {
            let n = set_partitions(k).unwrap().count();
            assert_eq!(BigInt::from(n), bell_number(k));
        }
    }

    #[test]
    fn partitions_are_distinct() {
        let all: Vec<_> = set_partitions(5)
            .unwrap()
            .map(|mut blocks| {
                blocks.sort();
                blocks
            })
            .collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
    }

    #[test]
    fn guard_range() {
        assert!(set_partitions(0).is_err());
        assert!(set_partitions(14).is_err());
        assert!(set_partitions(13).is_ok());
    }
}
