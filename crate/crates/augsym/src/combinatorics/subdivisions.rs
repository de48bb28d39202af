//! Multiset subdivisions with exact multiplicities.
//!
//! A subdivision of a multiset `M` is a multiset of non-empty sub-multisets
//! whose multiplicity-wise union is `M`; it is what a set partition becomes
//! when the partitioned elements are allowed to repeat. Many set partitions
//! project to the same subdivision, and the multiplicity recorded here is
//! exactly that number of set partitions.
//!
//! Enumeration never touches set partitions. For each distinct element the
//! partitions of its multiplicity are computed, and the resulting pieces are
//! inserted into the subdivisions built from the previous elements: a piece
//! either lands in an existing block that does not yet contain the element,
//! or opens a new block. Every subdivision is produced exactly once, and the
//! multiplicity comes from the closed formula
//!
//! ```text
//! (prod over elements e of multinomial(f(e); counts of e per block instance))
//!   / prod over distinct blocks B of rep(B)!
//! ```
//!
//! Blocks that would put two factors carrying the same singleton label
//! together evaluate to zero downstream, so for labeled input those
//! placements are skipped during insertion rather than filtered afterwards.
//!
//! The block structure only depends on the multiplicities of `M`, not on
//! which elements carry them, so unlabeled enumerations are memoized keyed
//! by the sorted multiplicity signature and re-instantiated per call.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::combinatorics::{factorial, integer_partitions, Multiset};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// One subdivision: its distinct blocks with repetition counts, plus the
/// number of set partitions that project onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    blocks: Vec<(Multiset<Monomial>, u32)>,
    multiplicity: u128,
}

impl Subdivision {
    /// Distinct blocks in canonical order, each with its repetition count.
    pub fn blocks(&self) -> &[(Multiset<Monomial>, u32)] {
        &self.blocks
    }

    /// Number of blocks counted with repetition.
    pub fn block_count(&self) -> u32 {
        self.blocks.iter().map(|(_, r)| r).sum()
    }

    /// Number of set partitions projecting onto this subdivision.
    pub fn multiplicity(&self) -> u128 {
        self.multiplicity
    }
}

/// Counters for the benchmark harness.
pub mod stats {
    use super::*;

    static PEAK: AtomicU64 = AtomicU64::new(0);

    pub(super) fn record(len: usize) {
        PEAK.fetch_max(len as u64, AtomicOrdering::Relaxed);
    }

    /// Largest subdivision list produced by a single call since the last reset.
    pub fn peak_subdivisions() -> u64 {
        PEAK.load(AtomicOrdering::Relaxed)
    }

    pub fn reset() {
        PEAK.store(0, AtomicOrdering::Relaxed);
    }
}

/// Raw subdivisions over element slots, stored flat and sparse: every
/// block keeps its total size, repetition, and the `(slot, count)` pairs of
/// its non-zero entries, all in shared arenas. This is the form the hot
/// paths walk, many millions of times for the larger estimators.
#[derive(Debug)]
pub(crate) struct RawSubs {
    subs: Vec<SubMeta>,
    block_sizes: Vec<u32>,
    block_reps: Vec<u32>,
    block_nnz_start: Vec<u32>,
    nnz: Vec<(u16, u16)>,
}

#[derive(Debug, Clone, Copy)]
struct SubMeta {
    multiplicity: u128,
    start: u32,
    nblocks: u32,
}

/// Borrowed view of one raw subdivision.
#[derive(Clone, Copy)]
pub(crate) struct RawSubView<'a> {
    pub(crate) multiplicity: u128,
    owner: &'a RawSubs,
    start: usize,
    nblocks: usize,
}

/// One distinct block: parts-with-repetition size, repetition count, and
/// sparse `(slot, count)` entries.
#[derive(Clone, Copy)]
pub(crate) struct RawBlock<'a> {
    pub(crate) size: u32,
    pub(crate) rep: u32,
    pub(crate) entries: &'a [(u16, u16)],
}

impl<'a> RawSubView<'a> {
    pub(crate) fn blocks(&self) -> impl Iterator<Item = RawBlock<'a>> + '_ {
        let o = self.owner;
        (self.start..self.start + self.nblocks).map(move |b| RawBlock {
            size: o.block_sizes[b],
            rep: o.block_reps[b],
            entries: &o.nnz[o.block_nnz_start[b] as usize..o.block_nnz_start[b + 1] as usize],
        })
    }

    /// Number of blocks counted with repetition.
    pub(crate) fn block_count(&self) -> u32 {
        let o = self.owner;
        o.block_reps[self.start..self.start + self.nblocks]
            .iter()
            .sum()
    }
}

impl RawSubs {
    fn from_nested(nested: Vec<RawSub>) -> Self {
        let nblocks: usize = nested.iter().map(|s| s.blocks.len()).sum();
        let mut out = RawSubs {
            subs: Vec::with_capacity(nested.len()),
            block_sizes: Vec::with_capacity(nblocks),
            block_reps: Vec::with_capacity(nblocks),
            block_nnz_start: Vec::with_capacity(nblocks + 1),
            nnz: Vec::new(),
        };
        out.block_nnz_start.push(0);
        for sub in nested {
            let start = out.block_reps.len() as u32;
            for (vec, rep) in &sub.blocks {
                out.block_sizes.push(vec.iter().sum());
                out.block_reps.push(*rep);
                for (slot, &c) in vec.iter().enumerate() {
                    if c > 0 {
                        out.nnz.push((slot as u16, c as u16));
                    }
                }
                out.block_nnz_start.push(out.nnz.len() as u32);
            }
            out.subs.push(SubMeta {
                multiplicity: sub.multiplicity,
                start,
                nblocks: sub.blocks.len() as u32,
            });
        }
        out
    }

    pub(crate) fn len(&self) -> usize {
        self.subs.len()
    }

    pub(crate) fn get(&self, i: usize) -> RawSubView<'_> {
        let meta = self.subs[i];
        RawSubView {
            multiplicity: meta.multiplicity,
            owner: self,
            start: meta.start as usize,
            nblocks: meta.nblocks as usize,
        }
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = RawSubView<'_>> {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Nested working form used during enumeration only.
#[derive(Clone, Debug)]
struct RawSub {
    blocks: Vec<(Vec<u32>, u32)>,
    multiplicity: u128,
}

/// Subdivisions of a multiset given by its multiplicity vector, memoized by
/// shape when unlabeled. `labels`, when present, holds each slot's
/// singleton labels and switches on annihilation pruning (no memoization on
/// that path; pruning depends on the labels, not just the shape).
///
/// The returned subdivisions are over canonicalized slots; the second
/// component maps each canonical slot back to the caller's element index,
/// so the shared enumeration is never copied, callers just reindex their
/// (small) element table.
pub(crate) fn raw_subdivisions(
    mults: &[u32],
    labels: Option<&[&[u32]]>,
) -> Result<(Arc<RawSubs>, Vec<usize>)> {
    if mults.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let (raw, order) = match labels {
        Some(l) if l.iter().any(|ls| !ls.is_empty()) => (
            Arc::new(RawSubs::from_nested(enumerate_counts(mults, Some(l)))),
            (0..mults.len()).collect(),
        ),
        _ => shape_memoized(mults),
    };
    stats::record(raw.len());
    Ok((raw, order))
}

/// Every subdivision of `m`, each exactly once with its exact multiplicity.
///
/// Output order is deterministic: ascending number of blocks, then canonical
/// block order. Blocks holding two copies of one singleton label are never
/// formed; for label-free input nothing is pruned and the multiplicities sum
/// to `Bell(|m|)`.
pub fn subdivisions(m: &Multiset<Monomial>) -> Result<Vec<Subdivision>> {
    let entries = m.entries();
    let mults: Vec<u32> = entries.iter().map(|(_, f)| *f).collect();
    let labels: Vec<&[u32]> = entries.iter().map(|(mono, _)| mono.labels()).collect();
    let raw = raw_subdivisions(&mults, Some(&labels))?;

    let mut out: Vec<Subdivision> = raw
        .iter()
        .map(|rs| {
            let mut blocks: Vec<(Multiset<Monomial>, u32)> = rs
                .blocks()
                .map(|block| {
                    let b = Multiset::from_pairs(
                        block
                            .entries
                            .iter()
                            .map(|&(slot, c)| (entries[slot as usize].0.clone(), c as u32)),
                    );
                    (b, block.rep)
                })
                .collect();
            blocks.sort_by(|a, b| a.0.cmp(&b.0));
            Subdivision {
                blocks,
                multiplicity: rs.multiplicity,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.block_count()
            .cmp(&b.block_count())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    Ok(out)
}

/// Project a set partition of `{1..|m|}` onto a subdivision of `m`,
/// returning the canonical block list. Labeling the elements of `m` in
/// canonical order makes this the reference path the enumerator is tested
/// against.
pub fn subdivision_of_set_partition(
    m: &Multiset<Monomial>,
    partition: &[Vec<u32>],
) -> Vec<(Multiset<Monomial>, u32)> {
    let expanded: Vec<&Monomial> = m.iter_expanded().collect();
    let blocks: Vec<Multiset<Monomial>> = partition
        .iter()
        .map(|idxs| {
            Multiset::from_elems(
                idxs.iter()
                    .map(|&i| expanded[(i - 1) as usize].clone())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let grouped = Multiset::from_elems(blocks);
    grouped.entries().to_vec()
}

fn shape_memoized(mults: &[u32]) -> Arc<RawSubs> {
    static SHAPE_MEMO: LazyLock<Mutex<HashMap<Vec<u32>, Arc<RawSubs>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));

    // Sort slots by descending multiplicity; the block structure is
    // invariant under renaming elements, so one enumeration per signature
    // serves every multiset of that shape.
    let k = mults.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| mults[b].cmp(&mults[a]).then(a.cmp(&b)));
    let signature: Vec<u32> = order.iter().map(|&i| mults[i]).collect();

    let cached = {
        let memo = SHAPE_MEMO.lock().unwrap();
        memo.get(&signature).cloned()
    };
    let shape = match cached {
        Some(v) => v,
        None => {
            let computed = Arc::new(RawSubs::from_nested(enumerate_counts(&signature, None)));
            let mut memo = SHAPE_MEMO.lock().unwrap();
            memo.entry(signature).or_insert(computed).clone()
        }
    };

    if order.iter().enumerate().all(|(s, &i)| s == i) {
        return shape;
    }
    // Undo the sort: slot s of the shape corresponds to entry order[s].
    let mut remapped = RawSubs {
        subs: shape.subs.clone(),
        block_sizes: shape.block_sizes.clone(),
        block_reps: shape.block_reps.clone(),
        block_nnz_start: shape.block_nnz_start.clone(),
        nnz: shape.nnz.clone(),
    };
    for e in remapped.nnz.iter_mut() {
        e.0 = order[e.0 as usize] as u16;
    }
    Arc::new(remapped)
}

/// Core enumeration over element slots with multiplicities `mults`.
/// `labels`, when present, gives each slot's singleton labels and activates
/// annihilation pruning.
fn enumerate_counts(mults: &[u32], labels: Option<&[&[u32]]>) -> Vec<RawSub> {
    let k = mults.len();
    let slot_labels = |s: usize| labels.map(|l| l[s]).unwrap_or(&[]);

    // Subdivisions of the first element alone: one per partition of its
    // multiplicity.
    let mut subs: Vec<Vec<(Vec<u32>, u32)>> = Vec::new();
    for lambda in slot_partitions(mults[0], !slot_labels(0).is_empty()) {
        let mut blocks: Vec<(Vec<u32>, u32)> = lambda
            .multiplicities()
            .iter()
            .map(|(&part, &rep)| {
                let mut v = vec![0u32; k];
                v[0] = part;
                (v, rep)
            })
            .collect();
        blocks.sort();
        subs.push(blocks);
    }

    // Insert each further element, one partition of its multiplicity at a
    // time. A piece may join any block instance that does not already hold
    // this element (or a conflicting label), or open a new block.
    for slot in 1..k {
        let pruning = !slot_labels(slot).is_empty();
        let partitions = slot_partitions(mults[slot], pruning);
        let mut next: Vec<Vec<(Vec<u32>, u32)>> = Vec::new();
        for blocks in &subs {
            let allowed: Vec<bool> = blocks
                .iter()
                .map(|(vec, _)| {
                    !pruning
                        || !vec.iter().enumerate().any(|(s, &c)| {
                            c > 0
                                && slot_labels(slot)
                                    .iter()
                                    .any(|l| slot_labels(s).contains(l))
                        })
                })
                .collect();
            for lambda in &partitions {
                let pieces: Vec<(u32, u32)> = lambda
                    .multiplicities()
                    .iter()
                    .map(|(&v, &c)| (v, c))
                    .collect();
                let mut remaining: Vec<u32> = pieces.iter().map(|&(_, c)| c).collect();
                let mut taken: Vec<Vec<u32>> = vec![vec![0; pieces.len()]; blocks.len()];
                assign_pieces(
                    blocks,
                    &allowed,
                    &pieces,
                    0,
                    &mut remaining,
                    &mut taken,
                    slot,
                    k,
                    &mut next,
                );
            }
        }
        subs = next;
    }

    subs.into_iter()
        .map(|blocks| {
            let multiplicity = closed_multiplicity(mults, &blocks);
            RawSub {
                blocks,
                multiplicity,
            }
        })
        .collect()
}

fn slot_partitions(f: u32, labeled: bool) -> Vec<crate::combinatorics::IntegerPartition> {
    if labeled && f >= 2 {
        // Two copies of one labeled monomial can never share a block, so
        // only the all-singletons split survives.
        vec![crate::combinatorics::IntegerPartition::from_unsorted(vec![1; f as usize]).unwrap()]
    } else {
        integer_partitions(f)
    }
}

/// Distribute the pieces of one element's partition over the existing block
/// types. Each block instance receives at most one piece (a block never
/// holds the inserted element yet, so the piece sizes stay recoverable and
/// no subdivision is emitted twice); pieces left over open new blocks.
#[allow(clippy::too_many_arguments)]
fn assign_pieces(
    blocks: &[(Vec<u32>, u32)],
    allowed: &[bool],
    pieces: &[(u32, u32)],
    ti: usize,
    remaining: &mut Vec<u32>,
    taken: &mut Vec<Vec<u32>>,
    slot: usize,
    width: usize,
    out: &mut Vec<Vec<(Vec<u32>, u32)>>,
) {
    if ti == blocks.len() {
        let mut result: Vec<(Vec<u32>, u32)> = Vec::new();
        for (t, (vec, rep)) in blocks.iter().enumerate() {
            let used: u32 = taken[t].iter().sum();
            if *rep > used {
                result.push((vec.clone(), rep - used));
            }
            for (pi, &cnt) in taken[t].iter().enumerate() {
                if cnt > 0 {
                    let mut v = vec.clone();
                    v[slot] += pieces[pi].0;
                    result.push((v, cnt));
                }
            }
        }
        for (pi, &cnt) in remaining.iter().enumerate() {
            if cnt > 0 {
                let mut v = vec![0u32; width];
                v[slot] = pieces[pi].0;
                result.push((v, cnt));
            }
        }
        result.sort();
        debug_assert!(result.windows(2).all(|w| w[0].0 != w[1].0));
        out.push(result);
        return;
    }

    let cap = blocks[ti].1;
    // Enumerate every sub-multiset of the remaining pieces of size <= cap
    // for this block type.
    fn choose(
        pieces_len: usize,
        pi: usize,
        cap_left: u32,
        remaining: &mut Vec<u32>,
        current: &mut Vec<u32>,
        cont: &mut dyn FnMut(&mut Vec<u32>, &mut Vec<u32>),
    ) {
        if pi == pieces_len {
            cont(remaining, current);
            return;
        }
        let max_take = remaining[pi].min(cap_left);
        for c in 0..=max_take {
            remaining[pi] -= c;
            current[pi] = c;
            choose(pieces_len, pi + 1, cap_left - c, remaining, current, cont);
            remaining[pi] += c;
            current[pi] = 0;
        }
    }

    if allowed[ti] {
        let mut current = vec![0u32; pieces.len()];
        let blocks_ref = blocks;
        choose(
            pieces.len(),
            0,
            cap,
            remaining,
            &mut current,
            &mut |rem, cur| {
                taken[ti].copy_from_slice(cur);
                assign_pieces(
                    blocks_ref, allowed, pieces, ti + 1, rem, taken, slot, width, out,
                );
                taken[ti].iter_mut().for_each(|c| *c = 0);
            },
        );
    } else {
        assign_pieces(
            blocks, allowed, pieces, ti + 1, remaining, taken, slot, width, out,
        );
    }
}

// Factorials up to 34!, the largest that fits u128 alongside the closed
// formula's intermediates for the supported orders.
const FACT: [u128; 35] = {
    let mut t = [1u128; 35];
    let mut k = 1usize;
    while k < 35 {
        t[k] = t[k - 1] * k as u128;
        k += 1;
    }
    t
};

fn closed_multiplicity(mults: &[u32], blocks: &[(Vec<u32>, u32)]) -> u128 {
    // Intermediates are bounded by |M|!, so u128 is exact for |M| < 35.
    let total: u32 = mults.iter().sum();
    if total as usize >= FACT.len() {
        return closed_multiplicity_big(mults, blocks);
    }
    let mut acc = 1u128;
    for (i, &f) in mults.iter().enumerate() {
        // The per-slot multinomial is an integer, so interleaving the
        // divisions keeps every intermediate at or below prod f_i! <= |M|!.
        acc *= FACT[f as usize];
        for (vec, rep) in blocks {
            if vec[i] > 1 {
                let d = FACT[vec[i] as usize];
                for _ in 0..*rep {
                    acc /= d;
                }
            }
        }
    }
    for (_, rep) in blocks {
        if *rep > 1 {
            acc /= FACT[*rep as usize];
        }
    }
    acc
}

fn closed_multiplicity_big(mults: &[u32], blocks: &[(Vec<u32>, u32)]) -> u128 {
    let mut acc = BigInt::one();
    for (i, &f) in mults.iter().enumerate() {
        acc *= factorial(f as u64);
        for (vec, rep) in blocks {
            if vec[i] > 1 {
                let d = factorial(vec[i] as u64);
                for _ in 0..*rep {
                    acc /= &d;
                }
            }
        }
    }
    for (_, rep) in blocks {
        if *rep > 1 {
            acc /= factorial(*rep as u64);
        }
    }
    acc.to_u128()
        .expect("subdivision multiplicity exceeds u128")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{bell_number, set_partitions};
    use crate::monomial::Exponents;
    use std::collections::HashMap;

    fn sym(i: usize, width: usize) -> Monomial {
        let mut v = vec![0u16; width];
        v[i] = 1;
        Monomial::unlabeled(Exponents::new(v))
    }

    fn mono_multiset(mults: &[u32]) -> Multiset<Monomial> {
        Multiset::from_pairs(
            mults
                .iter()
                .enumerate()
                .map(|(i, &f)| (sym(i, mults.len()), f)),
        )
    }

    #[test]
    fn rejects_empty() {
        assert!(matches!(
            subdivisions(&Multiset::empty()),
            Err(Error::EmptyMultiset)
        ));
    }

    #[test]
    fn single_element() {
        let subs = subdivisions(&mono_multiset(&[1])).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].multiplicity(), 1);
        assert_eq!(subs[0].block_count(), 1);
    }

    #[test]
    fn two_by_one_family() {
        // {a, a, b}: four subdivisions with multiplicities 1, 2, 1, 1.
        let subs = subdivisions(&mono_multiset(&[2, 1])).unwrap();
        assert_eq!(subs.len(), 4);
        let mults: Vec<u128> = subs.iter().map(|s| s.multiplicity()).collect();
        assert_eq!(mults, vec![1, 2, 1, 1]);
        assert_eq!(mults.iter().sum::<u128>(), 5); // Bell(3)
        assert_eq!(
            subs.iter().map(|s| s.block_count()).collect::<Vec<_>>(),
            vec![1, 2, 2, 3]
        );
    }

    #[test]
    fn three_by_two_family() {
        // {a^3, g^2}: 16 distinct subdivisions, total multiplicity Bell(5).
        let m = mono_multiset(&[3, 2]);
        let subs = subdivisions(&m).unwrap();
        assert_eq!(subs.len(), 16);
        let total: u128 = subs.iter().map(|s| s.multiplicity()).sum();
        assert_eq!(total, 52);

        // The two-mixed-blocks case {a g}{a g}{a} has multiplicity
        // 3!/(1!1!1!) * 2!/(1!1!) / 2! = 6.
        let ag = Multiset::from_elems(vec![sym(0, 2), sym(1, 2)]);
        let a = Multiset::from_elems(vec![sym(0, 2)]);
        let target = subs
            .iter()
            .find(|s| s.blocks() == [(a.clone(), 1), (ag.clone(), 2)])
            .expect("missing {a,g}{a,g}{a}");
        assert_eq!(target.multiplicity(), 6);
    }

    #[test]
    fn matches_set_partition_projection_up_to_six() {
        let shapes: Vec<Vec<u32>> = vec![
            vec![1],
            vec![2],
            vec![3],
            vec![2, 1],
            vec![1, 1, 1],
            vec![4, 2],
            vec![3, 2, 1],
            vec![2, 2, 2],
            vec![6],
            vec![1, 1, 1, 1, 1, 1],
        ];
        for shape in shapes {
            let m = mono_multiset(&shape);
            let n = m.len();
            let mut histogram: HashMap<Vec<(Multiset<Monomial>, u32)>, u128> = HashMap::new();
            for p in set_partitions(n).unwrap() {
                *histogram
                    .entry(subdivision_of_set_partition(&m, &p))
                    .or_insert(0) += 1;
            }
            let subs = subdivisions(&m).unwrap();
            assert_eq!(subs.len(), histogram.len(), "shape {shape:?}");
            for s in &subs {
                assert_eq!(
                    histogram.get(s.blocks()).copied(),
                    Some(s.multiplicity()),
                    "shape {shape:?}, blocks {:?}",
                    s.blocks()
                );
            }
        }
    }

    #[test]
    fn multiplicities_sum_to_bell_up_to_eight() {
        let shapes: Vec<Vec<u32>> = vec![
            vec![8],
            vec![7, 1],
            vec![4, 4],
            vec![3, 3, 2],
            vec![2, 2, 2, 2],
            vec![1; 8],
            vec![5, 2, 1],
        ];
        for shape in shapes {
            let m = mono_multiset(&shape);
            let subs = subdivisions(&m).unwrap();
            let total: u128 = subs.iter().map(|s| s.multiplicity()).sum();
            let bell = bell_number(m.len());
            assert_eq!(BigInt::from(total), bell, "shape {shape:?}");
        }
    }

    #[test]
    fn shape_invariance_under_renaming() {
        // Same multiplicity shape, different symbols: identical structure.
        let a = subdivisions(&mono_multiset(&[3, 2])).unwrap();
        let m2 = Multiset::from_pairs(vec![(sym(3, 5), 2), (sym(1, 5), 3)]);
        let b = subdivisions(&m2).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.multiplicity(), y.multiplicity());
            assert_eq!(x.block_count(), y.block_count());
        }
    }

    #[test]
    fn label_pruning_drops_annihilating_blocks() {
        // Two monomials sharing a label can never share a block.
        let x1a = Monomial::labeled(Exponents::uni(2), 1);
        let x1b = Monomial::labeled(Exponents::uni(1), 1);
        let x2 = Monomial::labeled(Exponents::uni(3), 2);
        let m = Multiset::from_elems(vec![x1a.clone(), x1b.clone(), x2]);
        let subs = subdivisions(&m).unwrap();
        // Of the 5 set partitions of three distinct elements, the two that
        // put the label-1 monomials together are pruned.
        assert_eq!(subs.len(), 3);
        for s in &subs {
            for (block, _) in s.blocks() {
                let both = block.entries().iter().any(|(m, _)| *m == x1a)
                    && block.entries().iter().any(|(m, _)| *m == x1b);
                assert!(!both);
            }
        }
    }

    #[test]
    fn repeated_labeled_monomial_splits_into_singletons() {
        let m = Multiset::from_pairs(vec![(Monomial::labeled(Exponents::uni(1), 1), 3)]);
        let subs = subdivisions(&m).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].block_count(), 3);
        assert_eq!(subs[0].multiplicity(), 1);
    }

    #[test]
    fn deterministic_order() {
        let m = mono_multiset(&[3, 2, 1]);
        let a = subdivisions(&m).unwrap();
        let b = subdivisions(&m).unwrap();
        assert_eq!(a, b);
    }
}
