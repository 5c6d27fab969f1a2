//! Chain posets (NRT block spaces): closed-form distribution, chain Singleton bound,
//! ball containment, packing radius and the minimum distance relation for linear codes.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::blockspace::{BlockSpace, BlockVector};
use crate::codes::{min_distance, Code, Metric};
use crate::distribution::{for_each_coords, guarded_size, Method, WeightDistribution};
use crate::error::{Error, Result};
use crate::weights::BlockWeightTable;
use crate::Caps;

/// Block sizes listed from the bottom of the chain to the top.
fn chain_sizes(space: &BlockSpace) -> Result<Vec<usize>> {
    let order = space
        .poset()
        .chain_order()
        .ok_or_else(|| Error::precondition("the poset is not a chain"))?;
    Ok(order
        .into_iter()
        .map(|l| space.label_map().size(l))
        .collect())
}

/// `|A_r| = |D_r^{k_1}|` for `r <= M_w` and `|A_{t M_w + s}| = m^{k_1 + ... + k_t} |D_s^{k_{t+1}}|`.
pub fn chain_distribution(space: &BlockSpace) -> Result<WeightDistribution> {
    let sizes = chain_sizes(space)?;
    let mw = space.max_weight();
    let table = BlockWeightTable::new(space.weight_function(), &sizes);
    let m = BigUint::from(space.modulus());
    let mut counts = vec![BigUint::one()];
    let mut below = BigUint::one();
    for &k in &sizes {
        for s in 1..=mw {
            counts.push(&below * table.get(k, s));
        }
        below *= m.pow(k as u32);
    }
    Ok(WeightDistribution::new(counts, Method::Chain))
}

/// The chain Singleton bound, and its equal-block corollary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSingletonReport {
    pub r: u32,
    /// `k_1 + ... + k_r` over the bottom `r` blocks.
    pub lhs: usize,
    /// `N - ⌈log_q |C|⌉`.
    pub rhs: usize,
    pub holds: bool,
    /// For equal block size `s`: `r ≤ n - ⌈log_q |C|⌉ / s`.
    pub corollary_holds: Option<bool>,
}

pub fn chain_singleton_bound(
    space: &BlockSpace,
    d: u32,
    log_card: u32,
) -> Result<ChainSingletonReport> {
    let sizes = chain_sizes(space)?;
    if d == 0 {
        return Err(Error::domain("minimum distance must be positive"));
    }
    let r = (d - 1) / space.max_weight();
    let lhs: usize = sizes.iter().take(r as usize).sum();
    let rhs = space.total_length().saturating_sub(log_card as usize);
    let corollary_holds = space
        .label_map()
        .uniform_size()
        .map(|s| (r as usize * s) as i64 <= (space.n() * s) as i64 - i64::from(log_card));
    Ok(ChainSingletonReport {
        r,
        lhs,
        rhs,
        holds: lhs <= rhs,
        corollary_holds,
    })
}

pub fn chain_singleton_check(code: &Code, caps: &Caps) -> Result<ChainSingletonReport> {
    chain_sizes(code.space())?;
    let d = min_distance(code, Metric::Pwpi, caps)?;
    chain_singleton_bound(code.space(), d, code.log_q_card_ceil())
}

/// Ball sizes around one center compared by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallContainment {
    pub radius: u32,
    /// Radius of the comparison `(P, π)`-ball: `t + 1` for `r = t M_w + s`, 0 for `r = 0`.
    pub ppi_radius: u32,
    pub pwpi_size: u64,
    pub ppi_size: u64,
    pub contained: bool,
    pub equal: bool,
}

impl BallContainment {
    /// Containment holds and equality happens exactly when `M_w | r`.
    pub fn consistent(&self, max_weight: u32) -> bool {
        self.contained && self.equal == (self.radius % max_weight == 0)
    }
}

/// Enumerates `B_pwpi(x, r)` and `B_ppi(x, t + 1)` over the whole space.
pub fn ball_containment_check(
    space: &BlockSpace,
    x: &BlockVector,
    r: u32,
    cap: u64,
) -> Result<BallContainment> {
    chain_sizes(space)?;
    if x.coords().len() != space.total_length() {
        return Err(Error::domain("center has the wrong length"));
    }
    let top = space.max_total_weight();
    if r > top {
        return Err(Error::domain(format!("radius {r} exceeds n·M_w = {top}")));
    }
    let size = guarded_size(space, cap, "ball enumeration")?;
    let mw = space.max_weight();
    let ppi_radius = if r == 0 { 0 } else { (r - 1) / mw + 1 };
    let twin = space.hamming_twin();
    let m = space.modulus();
    const CHUNK: u64 = 1 << 14;
    let (pwpi_size, ppi_size, outside) = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = (0u64, 0u64, 0u64);
            let mut diff = vec![0u32; x.coords().len()];
            for_each_coords(space, c * CHUNK..((c + 1) * CHUNK).min(size), |y| {
                for ((d, &a), &b) in diff.iter_mut().zip(y).zip(x.coords()) {
                    *d = (a + m - b) % m;
                }
                let in_pwpi = space.weight_of_coords(&diff) <= r;
                let in_ppi = twin.weight_of_coords(&diff) <= ppi_radius;
                acc.0 += u64::from(in_pwpi);
                acc.1 += u64::from(in_ppi);
                acc.2 += u64::from(in_pwpi && !in_ppi);
            });
            acc
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(BallContainment {
        radius: r,
        ppi_radius,
        pwpi_size,
        ppi_size,
        contained: outside == 0,
        equal: outside == 0 && pwpi_size == ppi_size,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PackingMode {
    /// `M_w (d_ppi - 1)`.
    Formula,
    /// Largest `r` with pairwise disjoint balls, found by enumeration.
    Brute,
}

/// Packing radius of a code in a chain space.
pub fn packing_radius(code: &Code, mode: PackingMode, caps: &Caps) -> Result<u32> {
    let space = code.space();
    chain_sizes(space)?;
    match mode {
        PackingMode::Formula => {
            Ok(space.max_weight() * (min_distance(code, Metric::Ppi, caps)? - 1))
        }
        PackingMode::Brute => brute_packing_radius(code, caps),
    }
}

/// Balls of radius `r` around `c1`, `c2` meet iff some `z` has `d(c1, z), d(c2, z) <= r`,
/// so the radius is `min over pairs of (meet - 1)` with
/// `meet(δ) = min_z max(w(z), w(z - δ))` depending only on `δ = c2 - c1`.
/// For a linear code the differences are exactly the nonzero codewords.
fn brute_packing_radius(code: &Code, caps: &Caps) -> Result<u32> {
    let space = code.space();
    let size = guarded_size(space, caps.brute_cap, "packing radius enumeration")?;
    let words = code.codewords(caps.codeword_cap)?;
    if words.len() < 2 {
        return Err(Error::domain("packing radius needs at least two codewords"));
    }
    let mut seen = HashSet::new();
    let mut differences: Vec<BlockVector> = Vec::new();
    let mut record = |delta: BlockVector| {
        // meet(δ) = meet(-δ)
        let neg = space.neg(&delta);
        let delta = delta.min(neg);
        if seen.insert(delta.clone()) {
            differences.push(delta);
        }
    };
    if code.is_linear() {
        words
            .iter()
            .filter(|c| !c.is_zero())
            .for_each(|c| record(c.clone()));
    } else {
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                record(space.sub(b, a));
            }
        }
    }
    let work = BigUint::from(differences.len()) * size;
    if work > BigUint::from(caps.brute_cap) {
        return Err(Error::capacity(
            "packing radius enumeration",
            work,
            caps.brute_cap,
        ));
    }
    let m = space.modulus();
    let meets: Vec<u32> = differences
        .par_iter()
        .map(|delta| {
            let mut best = u32::MAX;
            let mut shifted = vec![0u32; delta.coords().len()];
            for_each_coords(space, 0..size, |z| {
                let wz = space.weight_of_coords(z);
                if wz >= best {
                    return;
                }
                for ((s, &a), &b) in shifted.iter_mut().zip(z).zip(delta.coords()) {
                    *s = (a + m - b) % m;
                }
                best = best.min(wz.max(space.weight_of_coords(&shifted)));
            });
            best
        })
        .collect();
    Ok(meets.into_iter().min().expect("at least one pair") - 1)
}

/// Both sides of `d_pwpi = m_w + M_w (d_ppi - 1)` for a linear code on a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDistanceRelation {
    pub d_pwpi: u32,
    pub d_ppi: u32,
    /// Least weight of a nonzero residue.
    pub m_w: u32,
    pub max_weight: u32,
    /// `m_w + M_w (d_ppi - 1)`.
    pub rhs: u32,
    /// `d_pwpi - m_w`.
    pub r_pwpi: u32,
    pub agree: bool,
    /// Only unit blocks are held to the relation; larger blocks are reported.
    pub asserted: bool,
}

impl MinDistanceRelation {
    pub fn violated(&self) -> bool {
        self.asserted && !self.agree
    }
}

pub fn min_distance_relation_check(code: &Code, caps: &Caps) -> Result<MinDistanceRelation> {
    let space = code.space();
    chain_sizes(space)?;
    if !code.is_linear() {
        return Err(Error::precondition(
            "the minimum distance relation is for linear codes",
        ));
    }
    let d_pwpi = min_distance(code, Metric::Pwpi, caps)?;
    let d_ppi = min_distance(code, Metric::Ppi, caps)?;
    let w = space.weight_function();
    let (m_w, mw) = (w.min_nonzero_weight(), w.max_weight());
    let rhs = m_w + mw * (d_ppi - 1);
    Ok(MinDistanceRelation {
        d_pwpi,
        d_ppi,
        m_w,
        max_weight: mw,
        rhs,
        r_pwpi: d_pwpi - m_w,
        agree: d_pwpi == rhs,
        asserted: space.label_map().is_unit(),
    })
}

/// Everything the chain theory says about one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAnalysis {
    pub distribution: WeightDistribution,
    pub singleton: ChainSingletonReport,
    pub packing_radius_formula: u32,
    /// `None` when the space or code is too large to enumerate.
    pub packing_radius_brute: Option<u32>,
    /// Present for linear codes.
    pub min_distance_relation: Option<MinDistanceRelation>,
}

pub fn analyze_chain(code: &Code, caps: &Caps) -> Result<ChainAnalysis> {
    let space = code.space();
    let distribution = chain_distribution(space)?;
    let packing_radius_brute = match packing_radius(code, PackingMode::Brute, caps) {
        Ok(r) => Some(r),
        Err(e) if e.is_capacity() => None,
        Err(e) => return Err(e),
    };
    Ok(ChainAnalysis {
        distribution,
        singleton: chain_singleton_check(code, caps)?,
        packing_radius_formula: packing_radius(code, PackingMode::Formula, caps)?,
        packing_radius_brute,
        min_distance_relation: code
            .is_linear()
            .then(|| min_distance_relation_check(code, caps))
            .transpose()?,
    })
}
