//! Coordinate weights on `Z_m`, block weights and block weight classes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted; subadditivity is checked over all of `Z_m × Z_m`.
pub const MAX_MODULUS: u32 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Hamming,
    Lee,
    Custom,
}

/// A weight `w : Z_m -> N ∪ {0}` together with the data derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    kind: WeightKind,
    m: u32,
    table: Vec<u32>,
    max_weight: u32,
    min_nonzero_weight: u32,
    /// `class_sizes[r] = |D_r|`.
    class_sizes: Vec<u64>,
}

impl WeightFunction {
    pub fn hamming(m: u32) -> Result<Self> {
        check_modulus(m)?;
        let table = (0..m).map(|a| u32::from(a != 0)).collect();
        Self::from_table(WeightKind::Hamming, m, table)
    }

    pub fn lee(m: u32) -> Result<Self> {
        check_modulus(m)?;
        let table = (0..m).map(|a| a.min(m - a)).collect();
        Self::from_table(WeightKind::Lee, m, table)
    }

    /// A user-supplied table; every residue must be given a weight.
    pub fn custom(m: u32, table: &BTreeMap<u32, u32>) -> Result<Self> {
        check_modulus(m)?;
        if let Some((&bad, _)) = table.iter().find(|(&a, _)| a >= m) {
            return Err(Error::InvalidWeight(format!(
                "table entry for residue {bad} outside Z_{m}"
            )));
        }
        let values = (0..m)
            .map(|a| {
                table.get(&a).copied().ok_or_else(|| {
                    Error::InvalidWeight(format!("table has no weight for residue {a}"))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::from_table(WeightKind::Custom, m, values)
    }

    /// Dispatches on `kind`; `custom_table` must be present iff `kind` is custom.
    pub fn make(
        kind: WeightKind,
        m: u32,
        custom_table: Option<&BTreeMap<u32, u32>>,
    ) -> Result<Self> {
        match (kind, custom_table) {
            (WeightKind::Hamming, None) => Self::hamming(m),
            (WeightKind::Lee, None) => Self::lee(m),
            (WeightKind::Custom, Some(t)) => Self::custom(m, t),
            (WeightKind::Custom, None) => Err(Error::InvalidWeight(
                "custom weight requires a table".into(),
            )),
            (_, Some(_)) => Err(Error::InvalidWeight(
                "a table is only accepted for custom weights".into(),
            )),
        }
    }

    fn from_table(kind: WeightKind, m: u32, table: Vec<u32>) -> Result<Self> {
        debug_assert_eq!(table.len(), m as usize);
        if table[0] != 0 {
            return Err(Error::InvalidWeight(format!(
                "w(0) = {} must be 0",
                table[0]
            )));
        }
        if let Some(a) = (1..m).find(|&a| table[a as usize] == 0) {
            return Err(Error::InvalidWeight(format!(
                "w({a}) = 0 for a nonzero residue"
            )));
        }
        if let Some(a) = (1..m).find(|&a| table[a as usize] != table[(m - a) as usize]) {
            return Err(Error::InvalidWeight(format!(
                "not symmetric: w({a}) = {} but w({}) = {}",
                table[a as usize],
                m - a,
                table[(m - a) as usize]
            )));
        }
        for a in 0..m {
            for b in a..m {
                let sum = (a + b) % m;
                let (wa, wb, ws) = (table[a as usize], table[b as usize], table[sum as usize]);
                if u64::from(ws) > u64::from(wa) + u64::from(wb) {
                    return Err(Error::InvalidWeight(format!(
                        "not subadditive: w({a} + {b}) = {ws} > w({a}) + w({b}) = {}",
                        u64::from(wa) + u64::from(wb)
                    )));
                }
            }
        }
        let max_weight = *table.iter().max().expect("m >= 2");
        let min_nonzero_weight = *table[1..].iter().min().expect("m >= 2");
        let mut class_sizes = vec![0u64; max_weight as usize + 1];
        for &w in &table {
            class_sizes[w as usize] += 1;
        }
        Ok(WeightFunction {
            kind,
            m,
            table,
            max_weight,
            min_nonzero_weight,
            class_sizes,
        })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// `w(a)` for a residue `a < m`.
    #[inline]
    pub fn weight(&self, a: u32) -> u32 {
        self.table[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `M_w`.
    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Minimum weight over the nonzero residues.
    pub fn min_nonzero_weight(&self) -> u32 {
        self.min_nonzero_weight
    }

    /// `|D_r|` for `0 <= r <= M_w`, zero beyond.
    pub fn class_size(&self, r: u32) -> u64 {
        self.class_sizes.get(r as usize).copied().unwrap_or(0)
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    /// The residues of weight exactly `r`.
    pub fn class(&self, r: u32) -> Vec<u32> {
        (0..self.m)
            .filter(|&a| self.table[a as usize] == r)
            .collect()
    }

    /// `Σ_{i <= r} |D_i|`.
    pub fn cumulative_class_size(&self, r: u32) -> u64 {
        self.class_sizes.iter().take(r as usize + 1).sum()
    }

    /// `w̃^k(v) = max_i w(v_i)`, the block weight of a tuple of residues.
    #[inline]
    pub fn block_weight(&self, v: &[u32]) -> u32 {
        v.iter().map(|&a| self.table[a as usize]).max().unwrap_or(0)
    }

    /// `|D_r^k|`: the number of `k`-tuples whose block weight is `r`.
    pub fn block_class_size(&self, k: usize, r: u32) -> Result<BigUint> {
        if r > self.max_weight {
            return Err(Error::domain(format!(
                "weight level {r} exceeds M_w = {}",
                self.max_weight
            )));
        }
        if r == 0 {
            return Ok(BigUint::one());
        }
        let k = k as u32;
        let upto = BigUint::from(self.cumulative_class_size(r)).pow(k);
        let below = BigUint::from(self.cumulative_class_size(r - 1)).pow(k);
        Ok(upto - below)
    }
}

fn check_modulus(m: u32) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidWeight(format!(
            "modulus must be in [2, {MAX_MODULUS}], got {m}"
        )));
    }
    Ok(())
}

/// Cached `|D_r^k|` for every block size in use and every `0 <= r <= M_w`.
#[derive(Clone, Debug)]
pub struct BlockWeightTable {
    max_weight: u32,
    /// `by_size[k]` is `None` for unused sizes.
    by_size: Vec<Option<Vec<BigUint>>>,
}

impl BlockWeightTable {
    pub fn new(w: &WeightFunction, block_sizes: &[usize]) -> Self {
        let largest = block_sizes.iter().copied().max().unwrap_or(0);
        let mut by_size = vec![None; largest + 1];
        for &k in block_sizes {
            if by_size[k].is_none() {
                let row = (0..=w.max_weight())
                    .map(|r| w.block_class_size(k, r).expect("r <= M_w"))
                    .collect();
                by_size[k] = Some(row);
            }
        }
        BlockWeightTable {
            max_weight: w.max_weight(),
            by_size,
        }
    }

    /// `|D_r^k|`; zero for `r > M_w`. Panics if `k` was not registered.
    pub fn get(&self, k: usize, r: u32) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        let row = self.by_size[k]
            .as_ref()
            .unwrap_or_else(|| panic!("block size {k} not in table"));
        row.get(r as usize)
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }
}
