//! Unbiased estimators in terms of power sums.
//!
//! Every generator here is one scheme: sum exact rational coefficients times
//! bracket expansions over a partition-like index set, bucket the
//! contributions by the depth of the falling factorial they divide by, and
//! collect everything over the common denominator `(n)_max` in normalized
//! form. The heavy inner expansions all go through
//! [`conversion::aug_to_ps`], which memoizes by bracket, and the outer sums
//! run in parallel with an order-independent exact merge.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use std::sync::Arc;

use crate::bracket::Bracket;
use crate::combinatorics::{
    d_lambda, integer_partitions, raw_subdivisions, IntegerPartition, Multiset, RawSubs,
};
use crate::conversion::{aug_to_ps, merge_entries, singleton_factorial_moment};
use crate::error::{Error, Result};
use crate::expr::unipoly::UniPoly;
use crate::expr::{Atom, Denominator, RationalExpr, SymExpr, Term};
use crate::monomial::{Exponents, Monomial};
use crate::Rational;

/// Default ceiling on the total order of generated estimators.
pub const DEFAULT_MAX_ORDER: u32 = 20;

#[derive(Clone, Copy, Debug)]
pub struct EstimatorConfig {
    pub max_order: u32,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl EstimatorConfig {
    pub fn with_max_order(max_order: u32) -> Self {
        Self { max_order }
    }

    fn check(&self, order: u32) -> Result<()> {
        let cap = self.max_order.min(HARD_ORDER_CEILING);
        if order == 0 || order > cap {
            return Err(Error::OrderGuard { order, max: cap });
        }
        Ok(())
    }
}

/// Hard engine ceiling on the total order. The per-call accumulators below
/// run in `i128`; the sum over all subdivisions of `multiplicity *
/// |prod x_(block size)|` equals `m!` for a size-`m` multiset (each set
/// partition weighted by the cyclic orders of its blocks counts the
/// permutations), and `33!` is the largest factorial an `i128` holds.
pub const HARD_ORDER_CEILING: u32 = 33;

/// Signed factorial moments of the singleton symbol as machine integers:
/// `x[k] = (-1)^(k-1) (k-1)!`.
fn singleton_moment_table() -> [i128; HARD_ORDER_CEILING as usize + 2] {
    let mut t = [0i128; HARD_ORDER_CEILING as usize + 2];
    let mut fact = 1i128;
    for k in 1..t.len() {
        t[k] = if k % 2 == 0 { -fact } else { fact };
        fact = fact.checked_mul(k as i128).unwrap_or(0);
    }
    t
}

/// Accumulator for the estimator sums.
///
/// Every contribution is `integer_coeff * prod S_v / (n)_depth`; the
/// power-sum monomial is stored as a packed key (its sorted part vectors,
/// each part packed four 16-bit coordinates to a word) and bucketed by
/// depth, so one pass per depth multiplies in the expanded cofactor
/// `(n)_max / (n)_depth` at the end. Exponent sums never reach 2^16, so
/// blocks merge by plain word arithmetic on the packed parts. Coefficients
/// are exact machine integers up to total order 20 — the sum of
/// `|outer| * |inner|` over every contribution is bounded by `(order!)^2`,
/// which fits an `i128` there — and big integers beyond.
struct FusedSum {
    max_depth: u32,
    width: usize,
    stride: usize,
    x: [i128; HARD_ORDER_CEILING as usize + 2],
    buckets: Buckets,
    packed_elements: Vec<u64>,
    scratch_key: Vec<u64>,
}

enum Buckets {
    Small(Vec<HashMap<Vec<u64>, i128, rustc_hash::FxBuildHasher>>),
    Big(Vec<HashMap<Vec<u64>, BigInt, rustc_hash::FxBuildHasher>>),
}

const SMALL_COEFF_ORDER: u32 = 20;

/// Words per packed part.
fn stride_for(width: usize) -> usize {
    width.div_ceil(4).max(1)
}

/// Walk every subdivision of the bracket described by `raw` over the packed
/// elements, forming the packed power-sum key and the integer coefficient
/// `multiplicity * prod x_(block size)`, and fold each into `bucket`.
#[allow(clippy::too_many_arguments)]
fn expand_bracket_into<V>(
    raw: &RawSubs,
    stride: usize,
    packed_elements: &[u64],
    x: &[i128],
    scratch_key: &mut Vec<u64>,
    bucket: &mut HashMap<Vec<u64>, V, rustc_hash::FxBuildHasher>,
    make: impl Fn(i128) -> V,
    fold: impl Fn(&mut V, i128),
) {
    for sub in raw.iter() {
        let mut coeff: i128 = sub.multiplicity as i128;
        scratch_key.clear();
        for block in sub.blocks() {
            for _ in 0..block.rep {
                coeff *= x[block.size as usize];
            }
            let base = scratch_key.len();
            scratch_key.resize(base + stride, 0);
            for &(slot, c) in block.entries {
                for w in 0..stride {
                    scratch_key[base + w] += c as u64 * packed_elements[slot as usize * stride + w];
                }
            }
            for _ in 1..block.rep {
                let at = scratch_key.len();
                scratch_key.resize(at + stride, 0);
                scratch_key.copy_within(base..base + stride, at);
            }
        }
        if stride == 1 {
            scratch_key.sort_unstable();
        } else {
            sort_strided(scratch_key, stride);
        }
        match bucket.get_mut(scratch_key.as_slice()) {
            Some(acc) => fold(acc, coeff),
            None => {
                bucket.insert(scratch_key.clone(), make(coeff));
            }
        }
    }
}

fn pack_part(values: &[u16], stride: usize, out: &mut Vec<u64>) {
    let base = out.len();
    out.resize(base + stride, 0);
    for (coord, &e) in values.iter().enumerate() {
        out[base + coord / 4] |= (e as u64) << (16 * (coord % 4));
    }
}

fn unpack_part(words: &[u64], width: usize) -> Exponents {
    let mut v = vec![0u16; width];
    for (coord, e) in v.iter_mut().enumerate() {
        *e = ((words[coord / 4] >> (16 * (coord % 4))) & 0xffff) as u16;
    }
    Exponents::new(v)
}

fn sort_strided(v: &mut Vec<u64>, stride: usize) {
    let n = v.len() / stride;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_unstable_by(|&a, &b| v[a * stride..(a + 1) * stride].cmp(&v[b * stride..(b + 1) * stride]));
    let mut out = Vec::with_capacity(v.len());
    for i in idx {
        out.extend_from_slice(&v[i * stride..(i + 1) * stride]);
    }
    *v = out;
}

impl FusedSum {
    fn new(max_depth: u32, width: usize) -> Self {
        let buckets = if max_depth <= SMALL_COEFF_ORDER {
            Buckets::Small((0..=max_depth).map(|_| HashMap::default()).collect())
        } else {
            Buckets::Big((0..=max_depth).map(|_| HashMap::default()).collect())
        };
        Self {
            max_depth,
            width,
            stride: stride_for(width),
            x: singleton_moment_table(),
            buckets,
            packed_elements: Vec::new(),
            scratch_key: Vec::new(),
        }
    }

    /// Add `outer_coeff * (expansion of the bracket with the given distinct
    /// parts and counts) / (n)_depth`.
    fn add_expansion(
        &mut self,
        depth: u32,
        outer_coeff: i128,
        elements: &[(Exponents, u32)],
    ) -> Result<()> {
        let mults: Vec<u32> = elements.iter().map(|(_, c)| *c).collect();
        let raw = raw_subdivisions(&mults, None)?;
        let stride = self.stride;
        let Self {
            buckets,
            packed_elements,
            scratch_key,
            x,
            ..
        } = self;
        packed_elements.clear();
        for (exps, _) in elements {
            pack_part(exps.values(), stride, packed_elements);
        }
        match buckets {
            Buckets::Small(b) => expand_bracket_into(
                &raw,
                stride,
                packed_elements,
                x,
                scratch_key,
                &mut b[depth as usize],
                |c| outer_coeff * c,
                |acc, c| *acc += outer_coeff * c,
            ),
            Buckets::Big(b) => {
                let big = BigInt::from(outer_coeff);
                expand_bracket_into(
                    &raw,
                    stride,
                    packed_elements,
                    x,
                    scratch_key,
                    &mut b[depth as usize],
                    |c| &big * c,
                    |acc, c| *acc += &big * c,
                );
            }
        }
        Ok(())
    }

    fn merge(mut self, other: FusedSum) -> FusedSum {
        match (&mut self.buckets, other.buckets) {
            (Buckets::Small(mine), Buckets::Small(theirs)) => {
                for (depth, map) in theirs.into_iter().enumerate() {
                    let m = &mut mine[depth];
                    for (k, v) in map {
                        match m.get_mut(&k) {
                            Some(acc) => *acc += v,
                            None => {
                                m.insert(k, v);
                            }
                        }
                    }
                }
            }
            (Buckets::Big(mine), Buckets::Big(theirs)) => {
                for (depth, map) in theirs.into_iter().enumerate() {
                    let m = &mut mine[depth];
                    for (k, v) in map {
                        match m.get_mut(&k) {
                            Some(acc) => *acc += v,
                            None => {
                                m.insert(k, v);
                            }
                        }
                    }
                }
            }
            _ => unreachable!("accumulators created with one mode"),
        }
        self
    }

    fn build(self) -> RationalExpr {
        let width = self.width;
        let stride = self.stride;
        let max_depth = self.max_depth;
        // (n)_max / (n)_depth = (n-depth)...(n-max+1), expanded once per depth.
        let cofactors: Vec<UniPoly> = (0..=max_depth)
            .map(|depth| {
                let mut cof = UniPoly::one();
                for j in depth..max_depth {
                    cof = cof.mul(&UniPoly::n_minus(j));
                }
                cof
            })
            .collect();
        let mut num = SymExpr::zero();
        let mut emit = |depth: usize, key: &[u64], coeff: BigInt| {
            if coeff.is_zero() {
                return;
            }
            let cof = &cofactors[depth];
            let mut powers: Vec<(Atom, u32)> = Vec::new();
            for part in key.chunks(stride) {
                let atom = Atom::PowerSum(unpack_part(part, width));
                match powers.last_mut() {
                    Some((a, p)) if *a == atom => *p += 1,
                    _ => powers.push((atom, 1)),
                }
            }
            let coeff = Rational::from(coeff);
            for (i, c) in cof.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut atoms = powers.clone();
                if i > 0 {
                    atoms.push((Atom::N, i as u32));
                }
                num.add_term(Term::from_powers(atoms), &coeff * c);
            }
        };
        match self.buckets {
            Buckets::Small(maps) => {
                for (depth, map) in maps.into_iter().enumerate() {
                    for (key, v) in map {
                        emit(depth, &key, BigInt::from(v));
                    }
                }
            }
            Buckets::Big(maps) => {
                for (depth, map) in maps.into_iter().enumerate() {
                    for (key, v) in map {
                        emit(depth, &key, v);
                    }
                }
            }
        }
        RationalExpr::new(num, Denominator::falling(max_depth as u16)).normalized()
    }
}

/// The unbiased estimator of the product of moments indexed by the parts of
/// `m`: the bracket of those parts divided by `(n)_{|m|}`, or its power-sum
/// expansion when `power_sums` is set.
pub fn u_statistic(m: &Multiset<Monomial>, power_sums: bool) -> Result<RationalExpr> {
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    if m.entries().iter().any(|(mono, _)| mono.is_labeled()) {
        return Err(Error::LabeledInput);
    }
    let bracket = Bracket::from_multiset(m)?;
    let depth = bracket.len();
    let num = if power_sums {
        aug_to_ps(&bracket)
    } else {
        SymExpr::from_atom(Atom::Aug(bracket))
    };
    Ok(RationalExpr::new(num, Denominator::falling(depth as u16)).normalized())
}

/// Partition form of [`u_statistic`]: the parts become univariate exponents.
pub fn u_statistic_partition(lambda: &IntegerPartition, power_sums: bool) -> Result<RationalExpr> {
    let m = partition_multiset(lambda);
    u_statistic(&m, power_sums)
}

fn partition_multiset(lambda: &IntegerPartition) -> Multiset<Monomial> {
    Multiset::from_elems(
        lambda
            .parts()
            .iter()
            .map(|&p| Monomial::unlabeled(Exponents::uni(p as u16)))
            .collect::<Vec<_>>(),
    )
}

/// The `i`-th cumulant written in moments: the sum over partitions of `i`
/// of `(-1)^(len-1) (len-1)! * d_lambda * m_{part_1} m_{part_2} ...`.
pub fn cumulants_from_moments(i: u32) -> Result<SymExpr> {
    if i == 0 {
        return Err(Error::OrderGuard { order: 0, max: 0 });
    }
    let mut out = SymExpr::zero();
    for lambda in integer_partitions(i) {
        let coeff = singleton_factorial_moment(lambda.len() as u32)
            * Rational::from(d_lambda(&lambda));
        let powers: Vec<(Atom, u32)> = lambda
            .multiplicities()
            .iter()
            .map(|(&j, &r)| (Atom::Moment(Exponents::uni(j as u16)), r))
            .collect();
        out.add_term(Term::from_powers(powers), coeff);
    }
    Ok(out)
}

/// Joint cumulant of the monomial multiset `t` in terms of (possibly
/// multivariate) moments; reduces to [`cumulants_from_moments`] when `t` is
/// `i` copies of the first-degree univariate monomial.
pub fn joint_cumulant_in_moments(t: &Multiset<Monomial>) -> Result<SymExpr> {
    check_plain_input(t)?;
    let (elements, mults) = element_vectors(t);
    let mut out = SymExpr::zero();
    for sub in raw_subdivisions(&mults, None)?.iter() {
        let coeff = Rational::from(BigInt::from(sub.multiplicity))
            * singleton_factorial_moment(sub.block_count());
        let powers: Vec<(Atom, u32)> = sub
            .blocks()
            .map(|block| (Atom::Moment(merge_entries(block.entries, &elements)), block.rep))
            .collect();
        out.add_term(Term::from_powers(powers), coeff);
    }
    Ok(out)
}

fn element_vectors(t: &Multiset<Monomial>) -> (Vec<(Exponents, u32)>, Vec<u32>) {
    let elements: Vec<(Exponents, u32)> = t
        .entries()
        .iter()
        .map(|(mono, c)| (mono.exponents().clone(), *c))
        .collect();
    let mults = elements.iter().map(|(_, c)| *c).collect();
    (elements, mults)
}

/// `x_(k)` as an exact machine integer (valid under the order ceiling).
fn singleton_moment_int(k: u32) -> i128 {
    let mut mag = 1i128;
    for j in 2..k as i128 {
        mag *= j;
    }
    if k % 2 == 0 {
        -mag
    } else {
        mag
    }
}

/// `d_lambda` as a machine integer (valid under the order ceiling).
fn d_lambda_int(lambda: &IntegerPartition) -> i128 {
    use num_traits::ToPrimitive;
    d_lambda(lambda)
        .to_i128()
        .expect("set partition counts fit i128 under the order ceiling")
}

/// Grouped univariate elements of the pooled partition multiset.
fn partition_elements(lambdas: &[&IntegerPartition]) -> Vec<(Exponents, u32)> {
    let mut counts: BTreeMap<u16, u32> = BTreeMap::new();
    for lambda in lambdas {
        for (&j, &r) in &lambda.multiplicities() {
            *counts.entry(j as u16).or_insert(0) += r;
        }
    }
    counts
        .into_iter()
        .map(|(j, r)| (Exponents::uni(j), r))
        .collect()
}

fn run_fused<J: Sync>(
    jobs: &[J],
    max_depth: u32,
    width: usize,
    per_job: impl Fn(&J, &mut FusedSum) -> Result<()> + Sync,
) -> Result<RationalExpr> {
    let sum = jobs
        .par_iter()
        .try_fold(
            || FusedSum::new(max_depth, width),
            |mut acc, job| {
                per_job(job, &mut acc)?;
                Ok::<FusedSum, Error>(acc)
            },
        )
        .try_reduce(|| FusedSum::new(max_depth, width), |a, b| Ok(a.merge(b)))?;
    Ok(sum.build())
}

/// The `i`-th k-statistic: the unique symmetric unbiased estimator of the
/// `i`-th cumulant, collected over `(n)_i`.
pub fn k_statistic(i: u32, cfg: &EstimatorConfig) -> Result<RationalExpr> {
    cfg.check(i)?;
    let partitions = integer_partitions(i);
    run_fused(&partitions, i, 1, |lambda, acc| {
        let depth = lambda.len() as u32;
        let coeff = singleton_moment_int(depth) * d_lambda_int(lambda);
        acc.add_expansion(depth, coeff, &partition_elements(&[lambda]))
    })
}

/// Polykay: the symmetric unbiased estimator of a product of univariate
/// cumulants of the given orders. A single order reproduces the k-statistic.
pub fn polykay(orders: &[u32], cfg: &EstimatorConfig) -> Result<RationalExpr> {
    if orders.is_empty() {
        return Err(Error::EmptyInput("polykay needs at least one order"));
    }
    if orders.iter().any(|&r| r == 0) {
        return Err(Error::OrderGuard {
            order: 0,
            max: cfg.max_order,
        });
    }
    let total: u32 = orders.iter().sum();
    cfg.check(total)?;

    // One tuple of partitions per factor; every tuple contributes the
    // bracket of all its parts pooled together.
    let per_order: Vec<Vec<IntegerPartition>> =
        orders.iter().map(|&r| integer_partitions(r)).collect();
    let tuples = cartesian_indices(&per_order.iter().map(Vec::len).collect::<Vec<_>>());

    run_fused(&tuples, total, 1, |idx, acc| {
        let mut depth = 0u32;
        let mut coeff = 1i128;
        let mut lambdas: Vec<&IntegerPartition> = Vec::with_capacity(idx.len());
        for (g, &i) in idx.iter().enumerate() {
            let lambda = &per_order[g][i];
            depth += lambda.len() as u32;
            coeff *= singleton_moment_int(lambda.len() as u32) * d_lambda_int(lambda);
            lambdas.push(lambda);
        }
        acc.add_expansion(depth, coeff, &partition_elements(&lambdas))
    })
}

/// Multivariate k-statistic: the unbiased estimator of the joint cumulant
/// indexed by the monomial multiset `t`. The outer sum runs over the
/// subdivisions of `t`; each block-merged multiset expands through the
/// bracket-to-power-sum conversion.
pub fn multivariate_k_statistic(
    t: &Multiset<Monomial>,
    cfg: &EstimatorConfig,
) -> Result<RationalExpr> {
    check_plain_input(t)?;
    cfg.check(t.len())?;
    let width = t.entries()[0].0.exponents().width();
    let (elements, mults) = element_vectors(t);
    let outer = raw_subdivisions(&mults, None)?;
    let idxs: Vec<usize> = (0..outer.len()).collect();
    run_fused(&idxs, t.len(), width, |&i, acc| {
        let sub = outer.get(i);
        let depth = sub.block_count();
        let coeff = sub.multiplicity as i128 * singleton_moment_int(depth);
        acc.add_expansion(depth, coeff, &merged_elements(&sub, &elements))
    })
}

/// The block-merged multiset of one outer subdivision, grouped into
/// distinct exponent vectors with counts.
fn merged_elements(
    sub: &crate::combinatorics::RawSubView<'_>,
    elements: &[(Exponents, u32)],
) -> Vec<(Exponents, u32)> {
    let mut grouped: BTreeMap<Exponents, u32> = BTreeMap::new();
    for block in sub.blocks() {
        let merged = merge_entries(block.entries, elements);
        *grouped.entry(merged).or_insert(0) += block.rep;
    }
    grouped.into_iter().collect()
}

/// Multivariate polykay: the unbiased estimator of a product of joint
/// cumulants, one group of monomials per factor. A single group reproduces
/// [`multivariate_k_statistic`]; all-univariate groups reproduce
/// [`polykay`].
pub fn multivariate_polykay(
    groups: &[Multiset<Monomial>],
    cfg: &EstimatorConfig,
) -> Result<RationalExpr> {
    if groups.is_empty() {
        return Err(Error::EmptyInput("polykay needs at least one group"));
    }
    let total: u32 = groups.iter().map(Multiset::len).sum();
    cfg.check(total)?;
    let width = groups[0].entries()[0].0.exponents().width();
    for g in groups {
        check_plain_input(g)?;
        let w = g.entries()[0].0.exponents().width();
        if w != width {
            return Err(Error::ArityMismatch {
                left: width,
                right: w,
            });
        }
    }

    let per_group: Vec<(Vec<(Exponents, u32)>, Arc<RawSubs>)> = groups
        .iter()
        .map(|g| {
            let (elements, mults) = element_vectors(g);
            Ok((elements, raw_subdivisions(&mults, None)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let tuples = cartesian_indices(&per_group.iter().map(|(_, s)| s.len()).collect::<Vec<_>>());

    run_fused(&tuples, total, width, |idx, acc| {
        let mut depth = 0u32;
        let mut coeff = 1i128;
        let mut grouped: BTreeMap<Exponents, u32> = BTreeMap::new();
        for (g, &i) in idx.iter().enumerate() {
            let (elements, subs) = &per_group[g];
            let sub = subs.get(i);
            depth += sub.block_count();
            coeff *= sub.multiplicity as i128 * singleton_moment_int(sub.block_count());
            for block in sub.blocks() {
                *grouped.entry(merge_entries(block.entries, elements)).or_insert(0) += block.rep;
            }
        }
        let merged: Vec<(Exponents, u32)> = grouped.into_iter().collect();
        acc.add_expansion(depth, coeff, &merged)
    })
}

fn check_plain_input(t: &Multiset<Monomial>) -> Result<()> {
    if t.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    if t.entries().iter().any(|(mono, _)| mono.is_labeled()) {
        return Err(Error::LabeledInput);
    }
    if t.entries().iter().any(|(mono, _)| mono.exponents().is_zero()) {
        return Err(Error::ZeroExponentVector);
    }
    // Merged exponents must stay within one packed 16-bit lane.
    let degree: u32 = t.entries().iter().map(|(m, c)| m.degree() * c).sum();
    if degree > u16::MAX as u32 {
        return Err(Error::DegreeGuard {
            degree,
            max: u16::MAX as u32,
        });
    }
    Ok(())
}

fn cartesian_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(out.len() * s);
        for prefix in &out {
            for i in 0..s {
                let mut t = prefix.clone();
                t.push(i);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn cfg() -> EstimatorConfig {
        EstimatorConfig::default()
    }

    fn uni_multiset(parts: &[u16]) -> Multiset<Monomial> {
        Multiset::from_elems(
            parts
                .iter()
                .map(|&p| Monomial::unlabeled(Exponents::uni(p)))
                .collect::<Vec<_>>(),
        )
    }

    fn bi(x: u16, y: u16) -> Monomial {
        Monomial::unlabeled(Exponents::new(vec![x, y]))
    }

    fn s(i: u16) -> SymExpr {
        SymExpr::from_atom(Atom::PowerSum(Exponents::uni(i)))
    }

    fn sv(v: Vec<u16>) -> SymExpr {
        SymExpr::from_atom(Atom::PowerSum(Exponents::new(v)))
    }

    fn n() -> SymExpr {
        SymExpr::from_atom(Atom::N)
    }

    fn m(v: Vec<u16>) -> SymExpr {
        SymExpr::from_atom(Atom::Moment(Exponents::new(v)))
    }

    #[test]
    fn cumulants_in_moments() {
        assert_eq!(cumulants_from_moments(1).unwrap(), m(vec![1]));
        let k2 = &m(vec![2]) - &m(vec![1]).pow(2);
        assert_eq!(cumulants_from_moments(2).unwrap(), k2);
        let k3 = &(&m(vec![3]) - &m(vec![1]).mul(&m(vec![2])).scale(&Rational::from(
            BigInt::from(3),
        ))) + &m(vec![1]).pow(3).scale(&Rational::from(BigInt::from(2)));
        assert_eq!(cumulants_from_moments(3).unwrap(), k3);
    }

    #[test]
    fn joint_cumulant_reduces_to_univariate() {
        for i in 1..=5u32 {
            let t = uni_multiset(&vec![1u16; i as usize]);
            assert_eq!(
                joint_cumulant_in_moments(&t).unwrap(),
                cumulants_from_moments(i).unwrap()
            );
        }
    }

    #[test]
    fn joint_cumulant_covariance() {
        // kappa_{1,1} = m_{1,1} - m_{1,0} m_{0,1}
        let t = Multiset::from_elems(vec![bi(1, 0), bi(0, 1)]);
        let expect = &m(vec![1, 1]) - &m(vec![1, 0]).mul(&m(vec![0, 1]));
        assert_eq!(joint_cumulant_in_moments(&t).unwrap(), expect);
    }

    #[test]
    fn k_statistic_small() {
        // k_1 = S1 / n
        let k1 = k_statistic(1, &cfg()).unwrap();
        assert_eq!(k1.num, s(1));
        assert_eq!(k1.den, Denominator::falling(1));

        // k_2 = (n S2 - S1^2) / (n (n-1))
        let k2 = k_statistic(2, &cfg()).unwrap();
        let expect = &n().mul(&s(2)) - &s(1).pow(2);
        assert_eq!(k2.num, expect);
        assert_eq!(k2.den, Denominator::falling(2));

        // k_3 = (n^2 S3 - 3 n S1 S2 + 2 S1^3) / (n (n-1) (n-2))
        let k3 = k_statistic(3, &cfg()).unwrap();
        let expect = &(&n().pow(2).mul(&s(3))
            - &n().mul(&s(1)).mul(&s(2)).scale(&Rational::from(BigInt::from(3))))
            + &s(1).pow(3).scale(&Rational::from(BigInt::from(2)));
        assert_eq!(k3.num, expect);
        assert_eq!(k3.den, Denominator::falling(3));
    }

    #[test]
    fn k_statistic_term_counts_match_partition_counts() {
        for i in 1..=10u32 {
            let k = k_statistic(i, &cfg()).unwrap();
            assert_eq!(k.sym_term_count(), integer_partitions(i).len(), "k_{i}");
        }
    }

    #[test]
    fn k_statistic_denominator_divides_falling() {
        for i in 1..=8u32 {
            let k = k_statistic(i, &cfg()).unwrap();
            let full = UniPoly::falling(i as u16);
            // Strip the denominator's roots from (n)_i; all must divide.
            let mut rem = full;
            let mut ok = true;
            for (&j, &e) in k.den.factors() {
                for _ in 0..e {
                    match rem.div_exact_n_minus(j) {
                        Some(q) => rem = q,
                        None => ok = false,
                    }
                }
            }
            assert!(ok, "k_{i} denominator does not divide (n)_{i}");
        }
    }

    #[test]
    fn order_guard() {
        assert!(matches!(
            k_statistic(21, &cfg()),
            Err(Error::OrderGuard { .. })
        ));
        assert!(k_statistic(4, &EstimatorConfig::with_max_order(3)).is_err());
        assert!(matches!(
            polykay(&[15, 6], &cfg()),
            Err(Error::OrderGuard { .. })
        ));
    }

    #[test]
    fn u_statistic_forms() {
        // (1,1): bracket form 1/(n)_2 * AUG[1;1], power-sum form (S1^2-S2)/(n(n-1))
        let lambda = IntegerPartition::new(vec![1, 1]).unwrap();
        let u = u_statistic_partition(&lambda, false).unwrap();
        assert_eq!(u.den, Denominator::falling(2));
        let b = Bracket::univariate(&[1, 1]).unwrap();
        assert_eq!(u.num, SymExpr::from_atom(Atom::Aug(b)));

        let u = u_statistic_partition(&lambda, true).unwrap();
        assert_eq!(u.num, &s(1).pow(2) - &s(2));
        assert_eq!(u.den, Denominator::falling(2));

        // single part (1): S1 / n
        let lambda = IntegerPartition::new(vec![1]).unwrap();
        let u = u_statistic_partition(&lambda, true).unwrap();
        assert_eq!(u.to_text(), "S[1]/n");

        // multivariate: {(2,1)} -> S[2,1]/n
        let t = Multiset::from_elems(vec![bi(2, 1)]);
        let u = u_statistic(&t, true).unwrap();
        assert_eq!(u.num, sv(vec![2, 1]));
        assert_eq!(u.den, Denominator::falling(1));
    }

    #[test]
    fn polykay_single_equals_k_statistic() {
        for i in 1..=6u32 {
            assert_eq!(polykay(&[i], &cfg()).unwrap(), k_statistic(i, &cfg()).unwrap());
        }
    }

    #[test]
    fn polykay_one_one() {
        // k_{1,1} = (S1^2 - S2) / (n (n-1))
        let p = polykay(&[1, 1], &cfg()).unwrap();
        assert_eq!(p.num, &s(1).pow(2) - &s(2));
        assert_eq!(p.den, Denominator::falling(2));
    }

    #[test]
    fn multivariate_covariance_estimator() {
        // T = {(1,0),(0,1)}: (n S_{1,1} - S_{1,0} S_{0,1}) / (n (n-1))
        let t = Multiset::from_elems(vec![bi(1, 0), bi(0, 1)]);
        let k = multivariate_k_statistic(&t, &cfg()).unwrap();
        let expect = &n().mul(&sv(vec![1, 1])) - &sv(vec![1, 0]).mul(&sv(vec![0, 1]));
        assert_eq!(k.num, expect);
        assert_eq!(k.den, Denominator::falling(2));
    }

    #[test]
    fn multivariate_polykay_product_of_means() {
        // [{(1,0)}, {(0,1)}]: (S_{1,0} S_{0,1} - S_{1,1}) / (n (n-1))
        let groups = vec![
            Multiset::from_elems(vec![bi(1, 0)]),
            Multiset::from_elems(vec![bi(0, 1)]),
        ];
        let p = multivariate_polykay(&groups, &cfg()).unwrap();
        let expect = &sv(vec![1, 0]).mul(&sv(vec![0, 1])) - &sv(vec![1, 1]);
        assert_eq!(p.num, expect);
        assert_eq!(p.den, Denominator::falling(2));
    }

    #[test]
    fn multivariate_polykay_single_group_is_k_statistic() {
        let t = Multiset::from_elems(vec![bi(2, 0), bi(0, 1), bi(1, 1)]);
        let a = multivariate_polykay(std::slice::from_ref(&t), &cfg()).unwrap();
        let b = multivariate_k_statistic(&t, &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn univariate_embedding_matches_k_statistic() {
        // T = {(1),(1),(1)} through the multivariate machinery equals k_3.
        let t = uni_multiset(&[1, 1, 1]);
        let a = multivariate_k_statistic(&t, &cfg()).unwrap();
        let b = k_statistic(3, &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coordinate_permutation_symmetry() {
        // Swapping the two variable coordinates everywhere maps the
        // estimator of T to the estimator of swapped T.
        let t = Multiset::from_elems(vec![bi(2, 0), bi(0, 1), bi(1, 1)]);
        let swapped = t.map(|mono| {
            let v = mono.exponents().values();
            Monomial::unlabeled(Exponents::new(vec![v[1], v[0]]))
        });
        let a = multivariate_k_statistic(&t, &cfg()).unwrap();
        let b = multivariate_k_statistic(&swapped, &cfg()).unwrap();

        let mut swapped_a = SymExpr::zero();
        for (term, coeff) in a.num.terms() {
            let powers: Vec<(Atom, u32)> = term
                .atoms()
                .iter()
                .map(|(atom, p)| {
                    let swapped_atom = match atom {
                        Atom::PowerSum(v) => {
                            let w = v.values();
                            Atom::PowerSum(Exponents::new(vec![w[1], w[0]]))
                        }
                        other => other.clone(),
                    };
                    (swapped_atom, *p)
                })
                .collect();
            swapped_a.add_term(Term::from_powers(powers), coeff.clone());
        }
        assert_eq!(swapped_a, b.num);
        assert_eq!(a.den, b.den);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(polykay(&[], &cfg()).is_err());
        assert!(polykay(&[0], &cfg()).is_err());
        assert!(multivariate_k_statistic(&Multiset::empty(), &cfg()).is_err());
        let one = Rational::one();
        let _ = one;
    }
}
