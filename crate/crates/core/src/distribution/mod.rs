//! Exact weight distributions `|A_r|`, the number of vectors of weight `r`, and ball sizes.
//!
//! The general route sums over ideals grouped by (size, number of maximal elements).
//! An ideal `I` with `j` maximal and `i - j` non-maximal elements contributes vectors
//! whose maximal blocks carry weights `b_1 + ... + b_j = r - (i - j) M_w` with every
//! `b_s ∈ [1, M_w]`, while each non-maximal block is free. For every partition of that
//! residual into exactly `j` parts and every arrangement of its parts over the maximal
//! labels, the count is `∏ |D_{b_s}^{k_s}|` times `m^{Σ k}` over the non-maximal blocks.
//!
//! When all blocks share one size the arrangement sum collapses to multiplicity
//! binomials ([`count_of_weight_uniform`]). Chains have a closed form
//! ([`crate::nrt::chain_distribution`]). [`brute_distribution`] classifies every vector
//! and serves as the oracle for the others.

pub mod arrangement;
pub mod partition;
pub mod special;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::blockspace::BlockSpace;
use crate::error::{Error, Result};
use crate::poset::{enumerate_ideals, Ideal, IdealIndex};
use crate::weights::BlockWeightTable;
use crate::Caps;

pub use arrangement::{arrangements, Arrangements};
pub use partition::{bounded_partitions, BoundedPartition, PartitionMemo};

/// Spaces with at most this many vectors are classified exhaustively under [`Method::Auto`].
pub const AUTO_BRUTE_LIMIT: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    General,
    Uniform,
    Chain,
    Brute,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Auto,
        Method::General,
        Method::Uniform,
        Method::Chain,
        Method::Brute,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::General => "general",
            Method::Uniform => "uniform",
            Method::Chain => "chain",
            Method::Brute => "brute",
        }
    }

    /// Whether this method can run on `space` at all, ignoring resource caps.
    pub fn applies_to(self, space: &BlockSpace) -> bool {
        match self {
            Method::Auto | Method::General | Method::Brute => true,
            Method::Uniform => space.label_map().uniform_size().is_some(),
            Method::Chain => space.poset().is_chain(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown distribution method {s:?}")))
    }
}

/// `counts[r] = |A_r|` for `r = 0..=n·M_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
    method: Method,
}

impl WeightDistribution {
    pub(crate) fn new(counts: Vec<BigUint>, method: Method) -> Self {
        WeightDistribution { counts, method }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<BigUint> {
        self.counts
    }

    /// `|A_r|`, zero past the top weight.
    pub fn count(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    /// The method that actually produced the counts (never `Auto`).
    pub fn method(&self) -> Method {
        self.method
    }

    /// `Σ_r |A_r|`, which is `m^N` for a correct distribution.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn max_weight(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Shared state for evaluating `|A_r|` over many `r`.
struct Counter<'a> {
    space: &'a BlockSpace,
    idx: &'a IdealIndex,
    table: BlockWeightTable,
    memo: PartitionMemo,
    modulus: BigUint,
}

/// One ideal together with the partitions its maximal blocks may carry.
struct WorkItem<'a> {
    ideal: &'a Ideal,
    partitions: Arc<Vec<BoundedPartition>>,
}

impl<'a> Counter<'a> {
    fn new(space: &'a BlockSpace, idx: &'a IdealIndex) -> Result<Self> {
        if idx.n() != space.n() {
            return Err(Error::domain("ideal index was built for a different poset"));
        }
        Ok(Counter {
            space,
            idx,
            table: BlockWeightTable::new(space.weight_function(), space.label_map().block_sizes()),
            memo: PartitionMemo::new(space.max_weight()),
            modulus: BigUint::from(space.modulus()),
        })
    }

    fn check_level(&self, r: u32) -> Result<()> {
        let top = self.space.max_total_weight();
        if r > top {
            return Err(Error::domain(format!(
                "weight level {r} exceeds n·M_w = {top}"
            )));
        }
        Ok(())
    }

    /// Groups that can hold a vector of weight `r`, with the residual weight left for
    /// their maximal blocks. A residual `<= 0` is never feasible: some maximal block
    /// must be nonzero.
    fn feasible_groups(
        &mut self,
        r: u32,
    ) -> Vec<(usize, usize, &'a [Ideal], Arc<Vec<BoundedPartition>>)> {
        let mw = self.space.max_weight();
        let n = self.space.n();
        let mut out = Vec::new();
        for ((i, j), ideals) in self.idx.groups() {
            let nonmax = (i - j) as u32;
            let floor = nonmax * mw;
            if r <= floor {
                continue;
            }
            let residual = r - floor;
            if residual < j as u32 || residual > j as u32 * mw {
                continue;
            }
            let partitions = self.memo.get(residual, n - nonmax as usize);
            out.push((i, j, ideals, partitions));
        }
        out
    }

    fn general(&mut self, r: u32) -> Result<BigUint> {
        self.check_level(r)?;
        if r == 0 {
            return Ok(BigUint::one());
        }
        let items: Vec<WorkItem<'a>> = self
            .feasible_groups(r)
            .into_iter()
            .flat_map(|(_, _, ideals, partitions)| {
                ideals.iter().map(move |ideal| WorkItem {
                    ideal,
                    partitions: partitions.clone(),
                })
            })
            .collect();
        let pi = self.space.label_map();
        let table = &self.table;
        let modulus = &self.modulus;
        Ok(items
            .par_iter()
            .map(|item| {
                let sizes: Vec<usize> = item.ideal.maximals().iter().map(|l| pi.size(l)).collect();
                let j = sizes.len();
                let mut acc = BigUint::zero();
                for b in item.partitions.iter().filter(|b| b.len() == j) {
                    for arrangement in Arrangements::new(b.parts()) {
                        let product = sizes
                            .iter()
                            .zip(&arrangement)
                            .fold(BigUint::one(), |p, (&k, &part)| p * table.get(k, part));
                        acc += product;
                    }
                }
                if acc.is_zero() {
                    return acc;
                }
                let free = pi.sum_sizes(item.ideal.non_maximals()) as u32;
                acc * modulus.pow(free)
            })
            .reduce(BigUint::zero, |a, b| a + b))
    }

    fn uniform(&mut self, r: u32) -> Result<BigUint> {
        let k =
            self.space.label_map().uniform_size().ok_or_else(|| {
                Error::precondition("the uniform formula needs equal block sizes")
            })?;
        self.check_level(r)?;
        if r == 0 {
            return Ok(BigUint::one());
        }
        let mut total = BigUint::zero();
        for (i, j, ideals, partitions) in self.feasible_groups(r) {
            let free = self.modulus.pow((k * (i - j)) as u32);
            for b in partitions.iter().filter(|b| b.len() == j) {
                let mut term = free.clone();
                let mut placed = 0usize;
                for (value, mult) in b.multiplicities() {
                    term *= self.table.get(k, value).pow(mult as u32);
                    term *= binomial(j - placed, mult);
                    placed += mult;
                }
                total += term * BigUint::from(ideals.len());
            }
        }
        Ok(total)
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `|A_r|` by the general ideal / partition / arrangement sum.
pub fn count_of_weight(space: &BlockSpace, idx: &IdealIndex, r: u32) -> Result<BigUint> {
    Counter::new(space, idx)?.general(r)
}

/// `|A_r|` for equal block sizes, without enumerating arrangements.
pub fn count_of_weight_uniform(space: &BlockSpace, idx: &IdealIndex, r: u32) -> Result<BigUint> {
    Counter::new(space, idx)?.uniform(r)
}

/// The whole distribution by the requested method.
///
/// `Auto` classifies tiny spaces exhaustively and otherwise prefers the chain closed form,
/// then the equal-block formula, then the general sum.
pub fn full_distribution(
    space: &BlockSpace,
    method: Method,
    caps: &Caps,
) -> Result<WeightDistribution> {
    let method = match method {
        Method::Auto => {
            if space
                .size_u64()
                .is_some_and(|s| s <= AUTO_BRUTE_LIMIT.min(caps.brute_cap))
            {
                Method::Brute
            } else if space.poset().is_chain() {
                Method::Chain
            } else if space.label_map().uniform_size().is_some() {
                Method::Uniform
            } else {
                Method::General
            }
        }
        other => other,
    };
    match method {
        Method::Brute => brute_distribution(space, caps.brute_cap),
        Method::Chain => crate::nrt::chain_distribution(space),
        Method::General | Method::Uniform => {
            if method == Method::Uniform && space.label_map().uniform_size().is_none() {
                return Err(Error::precondition(
                    "the uniform formula needs equal block sizes",
                ));
            }
            let idx = enumerate_ideals(space.poset(), caps.ideal_cap)?;
            distribution_with_index(space, &idx, method)
        }
        Method::Auto => unreachable!("resolved above"),
    }
}

/// General or uniform distribution over a prebuilt ideal index.
pub fn distribution_with_index(
    space: &BlockSpace,
    idx: &IdealIndex,
    method: Method,
) -> Result<WeightDistribution> {
    let mut counter = Counter::new(space, idx)?;
    let counts = (0..=space.max_total_weight())
        .map(|r| match method {
            Method::General => counter.general(r),
            Method::Uniform => counter.uniform(r),
            other => Err(Error::precondition(format!(
                "{other} does not use an ideal index"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution::new(counts, method))
}

/// `|B_r(x)| = 1 + Σ_{t=1}^{r} |A_t|`, the same for every center.
pub fn ball_size(space: &BlockSpace, dist: &WeightDistribution, r: u32) -> Result<BigUint> {
    let top = space.max_total_weight();
    if r > top {
        return Err(Error::domain(format!("radius {r} exceeds n·M_w = {top}")));
    }
    if dist.counts.len() != top as usize + 1 {
        return Err(Error::domain("distribution does not belong to this space"));
    }
    Ok(dist.counts[..=r as usize].iter().sum())
}

/// Fails with a capacity error unless `m^N <= cap`; returns `m^N`.
pub(crate) fn guarded_size(space: &BlockSpace, cap: u64, what: &'static str) -> Result<u64> {
    match space.size_u64() {
        Some(size) if size <= cap => Ok(size),
        _ => Err(Error::capacity(what, space.size(), cap)),
    }
}

/// Calls `f` on every vector whose mixed-radix index lies in `range`, reusing one buffer.
pub(crate) fn for_each_coords(
    space: &BlockSpace,
    range: std::ops::Range<u64>,
    mut f: impl FnMut(&[u32]),
) {
    if range.is_empty() {
        return;
    }
    let m = space.modulus();
    let mut coords = space.vector_from_index(range.start).into_coords();
    for _ in range {
        f(&coords);
        for a in coords.iter_mut() {
            *a += 1;
            if *a < m {
                break;
            }
            *a = 0;
        }
    }
}

/// Classifies every vector of the space by weight.
pub fn brute_distribution(space: &BlockSpace, cap: u64) -> Result<WeightDistribution> {
    let size = guarded_size(space, cap, "brute-force distribution")?;
    let levels = space.max_total_weight() as usize + 1;
    const CHUNK: u64 = 1 << 14;
    let chunks = size.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; levels];
            let range = c * CHUNK..((c + 1) * CHUNK).min(size);
            for_each_coords(space, range, |coords| {
                local[space.weight_of_coords(coords) as usize] += 1;
            });
            local
        })
        .reduce(
            || vec![0u64; levels],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(WeightDistribution::new(
        counts.into_iter().map(BigUint::from).collect(),
        Method::Brute,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockspace::LabelMap;
    use crate::poset::{Poset, DEFAULT_IDEAL_CAP};
    use crate::weights::WeightFunction;

    fn example_space() -> BlockSpace {
        BlockSpace::new(
            Poset::new(5, &[(1, 2)]).unwrap(),
            LabelMap::new(vec![2, 3, 4, 2, 2]).unwrap(),
            WeightFunction::lee(7).unwrap(),
        )
        .unwrap()
    }

    fn z5_lee_chain() -> BlockSpace {
        BlockSpace::new(
            Poset::chain(2).unwrap(),
            LabelMap::unit(2).unwrap(),
            WeightFunction::lee(5).unwrap(),
        )
        .unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn example_weight_three() {
        let s = example_space();
        let idx = enumerate_ideals(s.poset(), DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(count_of_weight(&s, &idx, 3).unwrap(), big(35_384));
    }

    #[test]
    fn example_weight_fourteen() {
        let s = example_space();
        let idx = enumerate_ideals(s.poset(), DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(count_of_weight(&s, &idx, 14).unwrap(), big(22_829_377_536));
    }

    #[test]
    fn weight_zero_and_range() {
        let s = example_space();
        let idx = enumerate_ideals(s.poset(), DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(count_of_weight(&s, &idx, 0).unwrap(), BigUint::one());
        assert!(count_of_weight(&s, &idx, 16).is_err());
        assert!(count_of_weight_uniform(&s, &idx, 3).is_err());
    }

    #[test]
    fn example_distribution_sums_to_space() {
        let s = example_space();
        let d = full_distribution(&s, Method::Auto, &Caps::default()).unwrap();
        assert_eq!(d.method(), Method::General);
        assert_eq!(d.total(), big(7).pow(13));
        assert_eq!(d.count(3), big(35_384));
        assert_eq!(d.count(14), big(22_829_377_536));
    }

    #[test]
    fn small_chain_distribution() {
        let s = z5_lee_chain();
        let expected: Vec<BigUint> = [1, 2, 2, 10, 10].into_iter().map(big).collect();
        for method in Method::ALL {
            let d = full_distribution(&s, method, &Caps::default()).unwrap();
            assert_eq!(d.counts(), expected.as_slice(), "{method}");
        }
    }

    #[test]
    fn auto_resolution() {
        let caps = Caps::default();
        assert_eq!(
            full_distribution(&z5_lee_chain(), Method::Auto, &caps)
                .unwrap()
                .method(),
            Method::Brute
        );
        let chain = BlockSpace::new(
            Poset::chain(4).unwrap(),
            LabelMap::new(vec![2, 1, 3, 2]).unwrap(),
            WeightFunction::lee(5).unwrap(),
        )
        .unwrap();
        assert_eq!(
            full_distribution(&chain, Method::Auto, &caps)
                .unwrap()
                .method(),
            Method::Chain
        );
        let uniform = BlockSpace::new(
            Poset::new(4, &[(1, 2), (1, 3)]).unwrap(),
            LabelMap::new(vec![2; 4]).unwrap(),
            WeightFunction::lee(5).unwrap(),
        )
        .unwrap();
        assert_eq!(
            full_distribution(&uniform, Method::Auto, &caps)
                .unwrap()
                .method(),
            Method::Uniform
        );
    }

    #[test]
    fn inapplicable_methods_rejected() {
        let s = example_space();
        let caps = Caps::default();
        assert!(matches!(
            full_distribution(&s, Method::Uniform, &caps),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            full_distribution(&s, Method::Chain, &caps),
            Err(Error::Precondition(_))
        ));
        assert!(full_distribution(&s, Method::Brute, &caps)
            .unwrap_err()
            .is_capacity());
    }

    #[test]
    fn brute_on_binary_antichain() {
        let s = BlockSpace::new(
            Poset::antichain(2).unwrap(),
            LabelMap::unit(2).unwrap(),
            WeightFunction::hamming(3).unwrap(),
        )
        .unwrap();
        let d = brute_distribution(&s, 100).unwrap();
        assert_eq!(d.counts(), &[big(1), big(4), big(4)]);
        assert!(brute_distribution(&s, 8).unwrap_err().is_capacity());
    }

    #[test]
    fn ball_sizes() {
        let s = z5_lee_chain();
        let d = brute_distribution(&s, 100).unwrap();
        assert_eq!(ball_size(&s, &d, 0).unwrap(), big(1));
        assert_eq!(ball_size(&s, &d, 2).unwrap(), big(5));
        assert_eq!(ball_size(&s, &d, 4).unwrap(), big(25));
        assert!(ball_size(&s, &d, 5).is_err());
    }

    #[test]
    fn uniform_matches_general_on_example_poset() {
        let s = BlockSpace::new(
            Poset::new(5, &[(1, 2)]).unwrap(),
            LabelMap::new(vec![2; 5]).unwrap(),
            WeightFunction::lee(7).unwrap(),
        )
        .unwrap();
        let idx = enumerate_ideals(s.poset(), DEFAULT_IDEAL_CAP).unwrap();
        let general = distribution_with_index(&s, &idx, Method::General).unwrap();
        let uniform = distribution_with_index(&s, &idx, Method::Uniform).unwrap();
        assert_eq!(general.counts(), uniform.counts());
        assert_eq!(general.total(), big(7).pow(10));
    }

    #[test]
    fn uniform_top_weight_corollary() {
        // t = 4 maximal elements, k = 2, m = 7, |D_3| = 2
        let s = BlockSpace::new(
            Poset::new(5, &[(1, 2)]).unwrap(),
            LabelMap::new(vec![2; 5]).unwrap(),
            WeightFunction::lee(7).unwrap(),
        )
        .unwrap();
        let idx = enumerate_ideals(s.poset(), DEFAULT_IDEAL_CAP).unwrap();
        let top = count_of_weight_uniform(&s, &idx, 15).unwrap();
        let expected = (big(49) - big(25)).pow(4) * big(7).pow(2);
        assert_eq!(top, expected);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(4, 0), big(1));
        assert_eq!(binomial(2, 3), big(0));
    }
}
