//! The space `Z_m^N = Z_m^{k_1} ⊕ ... ⊕ Z_m^{k_n}` with its weighted-coordinates
//! poset block weight and distance.
//!
//! For a vector `x`, let `I = ⟨supp_π(x)⟩` and `M` its maximal elements. The weight is
//! the sum of the block weights `w̃(x_i)` over `i ∈ M`, plus `M_w` for every element of
//! `I \ M`.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poset::{LabelSet, Poset};
use crate::weights::WeightFunction;

/// Block sizes `(k_1, ..., k_n)` with their prefix offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    block_sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl LabelMap {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.is_empty() {
            return Err(Error::domain("label map needs at least one block"));
        }
        if let Some(i) = block_sizes.iter().position(|&k| k == 0) {
            return Err(Error::domain(format!("block {} has size 0", i + 1)));
        }
        let mut offsets = Vec::with_capacity(block_sizes.len() + 1);
        offsets.push(0);
        for &k in &block_sizes {
            offsets.push(offsets.last().unwrap() + k);
        }
        Ok(LabelMap {
            block_sizes,
            offsets,
        })
    }

    /// Every block of size one.
    pub fn unit(n: usize) -> Result<Self> {
        LabelMap::new(vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.block_sizes.len()
    }

    /// `N = Σ k_i`.
    pub fn total_length(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// `k_i` for a 1-based label.
    pub fn size(&self, label: usize) -> usize {
        self.block_sizes[label - 1]
    }

    /// Coordinate range of block `label` (1-based).
    pub fn range(&self, label: usize) -> std::ops::Range<usize> {
        self.offsets[label - 1]..self.offsets[label]
    }

    /// `Σ_{i ∈ set} k_i`.
    pub fn sum_sizes(&self, set: LabelSet) -> usize {
        set.iter().map(|i| self.size(i)).sum()
    }

    /// The common block size, if all blocks agree.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.block_sizes[0];
        self.block_sizes.iter().all(|&s| s == k).then_some(k)
    }

    pub fn is_unit(&self) -> bool {
        self.uniform_size() == Some(1)
    }
}

/// An element of `Z_m^N`, stored flat.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockVector {
    coords: Vec<u32>,
}

impl BlockVector {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }
}

impl fmt::Debug for BlockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A `(P, w, π)`-space over `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpace {
    poset: Poset,
    pi: LabelMap,
    weight: WeightFunction,
}

impl BlockSpace {
    pub fn new(poset: Poset, pi: LabelMap, weight: WeightFunction) -> Result<Self> {
        if poset.n() != pi.n() {
            return Err(Error::domain(format!(
                "poset has {} labels but the label map has {} blocks",
                poset.n(),
                pi.n()
            )));
        }
        Ok(BlockSpace { poset, pi, weight })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn label_map(&self) -> &LabelMap {
        &self.pi
    }

    pub fn weight_function(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn modulus(&self) -> u32 {
        self.weight.modulus()
    }

    pub fn n(&self) -> usize {
        self.pi.n()
    }

    pub fn total_length(&self) -> usize {
        self.pi.total_length()
    }

    pub fn max_weight(&self) -> u32 {
        self.weight.max_weight()
    }

    /// `n · M_w`, the largest weight any vector can have.
    pub fn max_total_weight(&self) -> u32 {
        self.n() as u32 * self.max_weight()
    }

    /// The same poset and label map with the Hamming weight, i.e. the `(P, π)`-space.
    pub fn with_weight(&self, weight: WeightFunction) -> Result<Self> {
        if weight.modulus() != self.modulus() {
            return Err(Error::domain("replacement weight has a different modulus"));
        }
        Ok(BlockSpace {
            weight,
            ..self.clone()
        })
    }

    pub fn hamming_twin(&self) -> BlockSpace {
        self.with_weight(WeightFunction::hamming(self.modulus()).expect("modulus already valid"))
            .expect("same modulus")
    }

    /// `m^N`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.modulus()).pow(self.total_length() as u32)
    }

    /// `m^N` if it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        u64::from(self.modulus()).checked_pow(self.total_length() as u32)
    }

    pub fn vector(&self, coords: Vec<u32>) -> Result<BlockVector> {
        if coords.len() != self.total_length() {
            return Err(Error::domain(format!(
                "vector has length {} but N = {}",
                coords.len(),
                self.total_length()
            )));
        }
        let m = self.modulus();
        if let Some(&bad) = coords.iter().find(|&&a| a >= m) {
            return Err(Error::domain(format!(
                "coordinate {bad} is not a residue mod {m}"
            )));
        }
        Ok(BlockVector { coords })
    }

    pub fn zero(&self) -> BlockVector {
        BlockVector {
            coords: vec![0; self.total_length()],
        }
    }

    /// The vector with mixed-radix index `index` (coordinate 0 least significant).
    pub fn vector_from_index(&self, mut index: u64) -> BlockVector {
        let m = u64::from(self.modulus());
        let coords = (0..self.total_length())
            .map(|_| {
                let a = (index % m) as u32;
                index /= m;
                a
            })
            .collect();
        BlockVector { coords }
    }

    /// Block `label` (1-based) of `x`.
    pub fn block<'a>(&self, x: &'a BlockVector, label: usize) -> &'a [u32] {
        &x.coords[self.pi.range(label)]
    }

    pub fn sub(&self, x: &BlockVector, y: &BlockVector) -> BlockVector {
        let m = self.modulus();
        BlockVector {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(&a, &b)| (a + m - b) % m)
                .collect(),
        }
    }

    pub fn add(&self, x: &BlockVector, y: &BlockVector) -> BlockVector {
        let m = self.modulus();
        BlockVector {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(&a, &b)| (a + b) % m)
                .collect(),
        }
    }

    pub fn neg(&self, x: &BlockVector) -> BlockVector {
        let m = self.modulus();
        BlockVector {
            coords: x.coords.iter().map(|&a| (m - a) % m).collect(),
        }
    }

    pub fn scale(&self, c: u32, x: &BlockVector) -> BlockVector {
        let m = u64::from(self.modulus());
        BlockVector {
            coords: x
                .coords
                .iter()
                .map(|&a| ((u64::from(a) * u64::from(c)) % m) as u32)
                .collect(),
        }
    }

    fn support_bits(&self, coords: &[u32]) -> u64 {
        let mut bits = 0u64;
        for label in 1..=self.n() {
            if coords[self.pi.range(label)].iter().any(|&a| a != 0) {
                bits |= 1 << (label - 1);
            }
        }
        bits
    }

    /// `supp_π(x)`: labels whose block is nonzero.
    pub fn support_pi(&self, x: &BlockVector) -> LabelSet {
        LabelSet::from_bits(self.support_bits(&x.coords))
    }

    /// Weight of a raw coordinate slice of length `N`.
    pub fn weight_of_coords(&self, coords: &[u32]) -> u32 {
        let support = self.support_bits(coords);
        if support == 0 {
            return 0;
        }
        let members = self.poset.closure_bits(support);
        let maximals = self.poset.maximal_bits(members);
        let mut total = (members.count_ones() - maximals.count_ones()) * self.max_weight();
        for label in LabelSet::from_bits(maximals).iter() {
            total += self.weight.block_weight(&coords[self.pi.range(label)]);
        }
        total
    }

    /// The `(P, w, π)`-weight of `x`.
    pub fn weight(&self, x: &BlockVector) -> u32 {
        self.weight_of_coords(&x.coords)
    }

    /// The `(P, w, π)`-distance `w(x - y)`.
    pub fn distance(&self, x: &BlockVector, y: &BlockVector) -> u32 {
        self.weight(&self.sub(x, y))
    }
}

/// Classical weights that the `(P, w, π)`-weight specialises to, written directly from
/// their definitions (order lookups only, no bitmask closure).
pub mod classic {
    use super::*;

    fn down_closure(poset: &Poset, set: &[usize]) -> Vec<usize> {
        (1..=poset.n())
            .filter(|&j| set.iter().any(|&i| poset.leq(j, i)))
            .collect()
    }

    fn maximal(poset: &Poset, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&j| !set.iter().any(|&i| i != j && poset.leq(j, i)))
            .collect()
    }

    fn nonzero_blocks(space: &BlockSpace, x: &BlockVector) -> Vec<usize> {
        (1..=space.n())
            .filter(|&i| space.block(x, i).iter().any(|&a| a != 0))
            .collect()
    }

    fn require_unit(space: &BlockSpace) -> Result<()> {
        if space.label_map().is_unit() {
            Ok(())
        } else {
            Err(Error::precondition(
                "this weight needs every block of size 1",
            ))
        }
    }

    /// `w_π(x) = |supp_π(x)|`.
    pub fn pi_weight(space: &BlockSpace, x: &BlockVector) -> u32 {
        nonzero_blocks(space, x).len() as u32
    }

    /// `w_(P,π)(x) = |⟨supp_π(x)⟩|`.
    pub fn ppi_weight(space: &BlockSpace, x: &BlockVector) -> u32 {
        down_closure(space.poset(), &nonzero_blocks(space, x)).len() as u32
    }

    /// `w_P(u) = |⟨supp(u)⟩|`, for unit blocks.
    pub fn p_weight(space: &BlockSpace, u: &BlockVector) -> Result<u32> {
        require_unit(space)?;
        let support: Vec<usize> = (1..=space.n()).filter(|&i| u.coords[i - 1] != 0).collect();
        Ok(down_closure(space.poset(), &support).len() as u32)
    }

    /// `w_(P,w)(u) = Σ_{i ∈ Max} w(u_i) + |I \ Max| · M_w`, for unit blocks.
    pub fn pw_weight(space: &BlockSpace, u: &BlockVector) -> Result<u32> {
        require_unit(space)?;
        let support: Vec<usize> = (1..=space.n()).filter(|&i| u.coords[i - 1] != 0).collect();
        let ideal = down_closure(space.poset(), &support);
        let maxima = maximal(space.poset(), &ideal);
        let w = space.weight_function();
        let at_maxima: u32 = maxima.iter().map(|&i| w.weight(u.coords[i - 1])).sum();
        Ok(at_maxima + (ideal.len() - maxima.len()) as u32 * w.max_weight())
    }
}
