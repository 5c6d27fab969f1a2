//! Finite posets on the label set `[n] = {1, ..., n}`.
//!
//! The order relation is stored densely as one bitmask per label (`n <= 64`), so
//! down-set, up-set and comparability lookups are single word operations. Labels
//! in the public API are 1-based; bit `i - 1` of a mask stands for label `i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_LABELS: usize = 64;

/// Default cap on the number of ideals materialised by [`enumerate_ideals`].
pub const DEFAULT_IDEAL_CAP: usize = 1 << 20;

/// A set of poset labels, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    /// Builds a set from 1-based labels, each of which must lie in `[n]`.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::domain(format!("label {label} is outside [1, {n}]")));
            }
            bits |= 1 << (label - 1);
        }
        Ok(LabelSet(bits))
    }

    pub const fn from_bits(bits: u64) -> Self {
        LabelSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, label: usize) -> bool {
        label >= 1 && label <= MAX_LABELS && self.0 & (1 << (label - 1)) != 0
    }

    pub const fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub const fn difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A partial order on `[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `down[j]` has bit `i` set iff `i ⪯ j` (0-based).
    down: Vec<u64>,
    /// `up[i]` has bit `j` set iff `i ⪯ j` (0-based).
    up: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(i, j))
            .collect();
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("strict_pairs", &pairs)
            .finish()
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of the cover pairs `(a, b)`,
    /// each meaning `a ⪯ b`. Rejects closures that are not antisymmetric.
    pub fn new(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_LABELS {
            return Err(Error::domain(format!(
                "poset size must be in [1, {MAX_LABELS}], got {n}"
            )));
        }
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(a, b) in covers {
            for label in [a, b] {
                if label == 0 || label > n {
                    return Err(Error::domain(format!(
                        "cover ({a}, {b}) uses label {label} outside [1, {n}]"
                    )));
                }
            }
            up[a - 1] |= 1 << (b - 1);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if *row & (1 << k) != 0 {
                    *row |= row_k;
                }
            }
        }
        let mut down = vec![0u64; n];
        for (i, &row) in up.iter().enumerate() {
            for j in (0..n).filter(|&j| row & (1 << j) != 0) {
                down[j] |= 1 << i;
            }
        }
        for i in 0..n {
            let both = up[i] & down[i] & !(1u64 << i);
            if both != 0 {
                let j = both.trailing_zeros() as usize;
                return Err(Error::InvalidPoset(format!(
                    "cycle through labels {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Poset { n, down, up })
    }

    /// The chain `1 ⪯ 2 ⪯ ... ⪯ n`.
    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Poset::new(n, &covers)
    }

    /// The antichain on `[n]`: only the identity relation.
    pub fn antichain(n: usize) -> Result<Self> {
        Poset::new(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> LabelSet {
        LabelSet(if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        })
    }

    /// `i ⪯ j`, on 1-based labels.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "label out of range"
        );
        self.up[i - 1] & (1 << (j - 1)) != 0
    }

    /// `⟨j⟩`, the principal down-set of `j` (includes `j`).
    pub fn down_set(&self, j: usize) -> LabelSet {
        LabelSet(self.down[j - 1])
    }

    /// Every `i` with `j ⪯ i` (includes `j`).
    pub fn up_set(&self, j: usize) -> LabelSet {
        LabelSet(self.up[j - 1])
    }

    /// Smallest ideal containing `set`, as a raw mask. Hot path for weight evaluation.
    #[inline]
    pub(crate) fn closure_bits(&self, set: u64) -> u64 {
        let mut acc = 0u64;
        let mut bits = set;
        while bits != 0 {
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc |= self.down[tz];
        }
        acc
    }

    /// Maximal elements of an arbitrary subset, as a raw mask.
    #[inline]
    pub(crate) fn maximal_bits(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = set;
        while bits != 0 {
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.up[tz] & set == 1 << tz {
                out |= 1 << tz;
            }
        }
        out
    }

    pub fn maximal_elements_of(&self, set: LabelSet) -> LabelSet {
        LabelSet(self.maximal_bits(set.0))
    }

    /// Maximal elements of the whole poset.
    pub fn maximal_elements(&self) -> LabelSet {
        self.maximal_elements_of(self.full())
    }

    pub fn minimal_elements(&self) -> LabelSet {
        LabelSet(
            (0..self.n)
                .filter(|&i| self.down[i] == 1 << i)
                .fold(0, |acc, i| acc | 1 << i),
        )
    }

    pub fn is_ideal(&self, set: LabelSet) -> bool {
        self.closure_bits(set.0) == set.0
    }

    /// `⟨s⟩`, the ideal generated by `s`, with its maximal elements.
    pub fn ideal_closure(&self, s: LabelSet) -> Result<Ideal> {
        if !s.is_subset(self.full()) {
            return Err(Error::domain(format!(
                "label set {s:?} is not contained in [1, {}]",
                self.n
            )));
        }
        Ok(self.ideal_from_bits(self.closure_bits(s.0)))
    }

    fn ideal_from_bits(&self, members: u64) -> Ideal {
        Ideal {
            members: LabelSet(members),
            maximals: LabelSet(self.maximal_bits(members)),
        }
    }

    /// True iff the order is total.
    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (self.up[i] | self.down[i]) == self.full().0)
    }

    /// For a total order, the labels from bottom to top.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        if !self.is_chain() {
            return None;
        }
        let mut labels: Vec<usize> = (1..=self.n).collect();
        labels.sort_by_key(|&j| self.down[j - 1].count_ones());
        Some(labels)
    }

    /// Cover pairs of the order (its Hasse diagram), sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j || self.up[i] & (1 << j) == 0 {
                    continue;
                }
                // no k strictly between i and j
                let between = self.up[i] & self.down[j] & !(1u64 << i) & !(1u64 << j);
                if between == 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

/// A down-closed subset of a poset together with its maximal elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: LabelSet,
    maximals: LabelSet,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("members", &self.members)
            .field("maximals", &self.maximals)
            .finish()
    }
}

impl Ideal {
    pub fn members(&self) -> LabelSet {
        self.members
    }

    pub fn maximals(&self) -> LabelSet {
        self.maximals
    }

    /// `I \ Max(I)`.
    pub fn non_maximals(&self) -> LabelSet {
        self.members.difference(self.maximals)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All ideals of a poset, grouped by (cardinality `i`, number of maximal elements `j`).
///
/// The empty ideal is kept apart: groups are only indexed for `1 <= j <= i <= n`.
#[derive(Clone, Debug)]
pub struct IdealIndex {
    n: usize,
    groups: BTreeMap<(usize, usize), Vec<Ideal>>,
    empty: Ideal,
}

impl IdealIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The ideals of cardinality `size` with exactly `maximals` maximal elements.
    pub fn group(&self, size: usize, maximals: usize) -> &[Ideal] {
        self.groups
            .get(&(size, maximals))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Nonempty groups as `((i, j), ideals)`, ordered by `(i, j)`.
    pub fn groups(&self) -> impl Iterator<Item = ((usize, usize), &[Ideal])> {
        self.groups.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Every ideal of cardinality `size`; for `size == 0` just the empty ideal.
    pub fn of_size(&self, size: usize) -> Vec<Ideal> {
        if size == 0 {
            return vec![self.empty];
        }
        (1..=size)
            .flat_map(|j| self.group(size, j).iter().copied())
            .collect()
    }

    pub fn empty_ideal(&self) -> Ideal {
        self.empty
    }

    /// Number of ideals including the empty one.
    pub fn total(&self) -> usize {
        1 + self.groups.values().map(Vec::len).sum::<usize>()
    }
}

/// Enumerates every ideal of `p` exactly once, by walking its antichains.
///
/// Each antichain `A` generates the ideal `⟨A⟩` whose maximal set is `A`, so the
/// antichain walk is duplicate-free by construction. Fails with a capacity error
/// once more than `cap` ideals (including the empty one) would be produced.
pub fn enumerate_ideals(p: &Poset, cap: usize) -> Result<IdealIndex> {
    let full = p.full().0;
    let incomparable: Vec<u64> = (0..p.n).map(|v| full & !(p.down[v] | p.up[v])).collect();

    let mut groups: BTreeMap<(usize, usize), Vec<Ideal>> = BTreeMap::new();
    let mut count = 1usize; // the empty ideal

    // Stack frames: (antichain, ideal members, candidates still addable).
    let mut stack: Vec<(u64, u64, u64)> = vec![(0, 0, full)];
    while let Some((antichain, members, candidates)) = stack.pop() {
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // Only labels above v remain candidates, so each antichain is built in
            // increasing label order exactly once.
            let next_candidates = rest & incomparable[v];
            let next_antichain = antichain | 1 << v;
            let next_members = members | p.down[v];
            count += 1;
            if count > cap {
                return Err(Error::capacity(
                    "ideal enumeration",
                    format!("> {cap} ideals"),
                    cap as u64,
                ));
            }
            let key = (
                next_members.count_ones() as usize,
                next_antichain.count_ones() as usize,
            );
            groups.entry(key).or_default().push(Ideal {
                members: LabelSet(next_members),
                maximals: LabelSet(next_antichain),
            });
            if next_candidates != 0 {
                stack.push((next_antichain, next_members, next_candidates));
            }
        }
    }
    for ideals in groups.values_mut() {
        ideals.sort_by_key(|ideal| ideal.members.to_vec());
    }
    Ok(IdealIndex {
        n: p.n,
        groups,
        empty: Ideal {
            members: LabelSet::EMPTY,
            maximals: LabelSet::EMPTY,
        },
    })
}
