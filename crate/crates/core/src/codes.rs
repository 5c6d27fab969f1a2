//! Block codes: minimum distances under the four poset metrics, the Singleton bound,
//! MDS certification and the weighted-versus-unweighted comparisons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::blockspace::{classic, BlockSpace, BlockVector};
use crate::error::{Error, Result};
use crate::poset::{enumerate_ideals, IdealIndex};
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Explicit(Vec<BlockVector>),
    /// Reduced row echelon basis over the prime field.
    Linear(Vec<BlockVector>),
}

/// A code in a block space, either an explicit word list or the span of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    space: BlockSpace,
    repr: Repr,
}

fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    let (p64, mut base, mut exp, mut acc) = (u64::from(p), u64::from(a), p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form over `Z_p`, zero rows dropped.
fn row_reduce(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let width = rows.first().map_or(0, Vec::len);
    let p64 = u64::from(p);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = u64::from(inverse_mod(rows[rank][col], p));
        for a in rows[rank].iter_mut() {
            *a = (u64::from(*a) * inv % p64) as u32;
        }
        let lead = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let factor = u64::from(row[col]);
            if r == rank || factor == 0 {
                continue;
            }
            for (a, &b) in row.iter_mut().zip(&lead) {
                *a = ((u64::from(*a) + (p64 - factor) * u64::from(b)) % p64) as u32;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

impl Code {
    /// An explicit code, deduplicated and sorted.
    pub fn explicit(space: &BlockSpace, words: Vec<Vec<u32>>) -> Result<Code> {
        if words.is_empty() {
            return Err(Error::domain("an explicit code needs at least one word"));
        }
        let mut words = words
            .into_iter()
            .map(|w| space.vector(w))
            .collect::<Result<Vec<_>>>()?;
        words.sort();
        words.dedup();
        Ok(Code {
            space: space.clone(),
            repr: Repr::Explicit(words),
        })
    }

    /// The `Z_p`-span of `generators`, for prime `m = p`.
    pub fn linear(space: &BlockSpace, generators: Vec<Vec<u32>>) -> Result<Code> {
        let p = space.modulus();
        if !is_prime(p) {
            return Err(Error::UnsupportedAlphabet(format!(
                "linear codes need a prime modulus, got {p}"
            )));
        }
        let rows = generators
            .into_iter()
            .map(|g| space.vector(g).map(BlockVector::into_coords))
            .collect::<Result<Vec<_>>>()?;
        let basis = row_reduce(rows, p)
            .into_iter()
            .map(|row| space.vector(row).expect("reduced rows stay in range"))
            .collect();
        Ok(Code {
            space: space.clone(),
            repr: Repr::Linear(basis),
        })
    }

    /// The same words read in another space over the same `Z_m^N`.
    pub fn in_space(&self, space: &BlockSpace) -> Result<Code> {
        if space.modulus() != self.space.modulus()
            || space.total_length() != self.space.total_length()
        {
            return Err(Error::domain(
                "target space has a different alphabet or length",
            ));
        }
        Ok(Code {
            space: space.clone(),
            repr: self.repr.clone(),
        })
    }

    pub fn space(&self) -> &BlockSpace {
        &self.space
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.repr, Repr::Linear(_))
    }

    /// Explicit words, or `None` for a linear code.
    pub fn words(&self) -> Option<&[BlockVector]> {
        match &self.repr {
            Repr::Explicit(w) => Some(w),
            Repr::Linear(_) => None,
        }
    }

    /// Row-reduced basis, or `None` for an explicit code.
    pub fn basis(&self) -> Option<&[BlockVector]> {
        match &self.repr {
            Repr::Linear(b) => Some(b),
            Repr::Explicit(_) => None,
        }
    }

    pub fn cardinality(&self) -> BigUint {
        match &self.repr {
            Repr::Explicit(w) => BigUint::from(w.len()),
            Repr::Linear(b) => BigUint::from(self.space.modulus()).pow(b.len() as u32),
        }
    }

    /// The least `t` with `q^t >= |C|`.
    pub fn log_q_card_ceil(&self) -> u32 {
        if let Repr::Linear(b) = &self.repr {
            return b.len() as u32;
        }
        let card = self.cardinality();
        let q = BigUint::from(self.space.modulus());
        let mut power = BigUint::one();
        let mut t = 0;
        while power < card {
            power *= &q;
            t += 1;
        }
        t
    }

    /// `|C|` if it is at most `cap`.
    fn guarded_len(&self, cap: u64) -> Result<u64> {
        let card = self.cardinality();
        match card.to_u64() {
            Some(c) if c <= cap => Ok(c),
            _ => Err(Error::capacity("codeword iteration", card, cap)),
        }
    }

    /// The `index`-th codeword of a linear code (coefficients in mixed radix).
    fn combination(&self, basis: &[BlockVector], mut index: u64) -> Vec<u32> {
        let m = self.space.modulus();
        let mut out = vec![0u32; self.space.total_length()];
        for row in basis {
            let c = (index % u64::from(m)) as u32;
            index /= u64::from(m);
            if c == 0 {
                continue;
            }
            for (a, &b) in out.iter_mut().zip(row.coords()) {
                *a = ((u64::from(*a) + u64::from(c) * u64::from(b)) % u64::from(m)) as u32;
            }
        }
        out
    }

    /// Every codeword, failing if there are more than `cap`.
    pub fn codewords(&self, cap: u64) -> Result<Vec<BlockVector>> {
        let len = self.guarded_len(cap)?;
        Ok(match &self.repr {
            Repr::Explicit(w) => w.clone(),
            Repr::Linear(b) => (0..len)
                .map(|i| self.space.vector(self.combination(b, i)).expect("in range"))
                .collect(),
        })
    }
}

/// The four metrics a code can be measured in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    /// The weighted block metric of the space.
    Pwpi,
    /// Block poset metric: the same space with the Hamming weight.
    Ppi,
    /// Weighted poset metric; unit blocks only.
    Pw,
    /// Plain poset metric; unit blocks only.
    P,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Pwpi, Metric::Ppi, Metric::Pw, Metric::P];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Pwpi => "pwpi",
            Metric::Ppi => "ppi",
            Metric::Pw => "pw",
            Metric::P => "p",
        }
    }

    pub fn applies_to(self, space: &BlockSpace) -> bool {
        match self {
            Metric::Pwpi | Metric::Ppi => true,
            Metric::Pw | Metric::P => space.label_map().is_unit(),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown metric {s:?}")))
    }
}

type Weigher = Box<dyn Fn(&BlockVector) -> u32 + Send + Sync>;

fn weigher(space: &BlockSpace, metric: Metric) -> Result<Weigher> {
    if !metric.applies_to(space) {
        return Err(Error::precondition(format!(
            "the {metric} metric needs every block of size 1"
        )));
    }
    let space = space.clone();
    Ok(match metric {
        Metric::Pwpi => Box::new(move |x| space.weight(x)),
        Metric::Ppi => {
            let twin = space.hamming_twin();
            Box::new(move |x| twin.weight(x))
        }
        Metric::Pw => Box::new(move |x| classic::pw_weight(&space, x).expect("unit blocks")),
        Metric::P => Box::new(move |x| classic::p_weight(&space, x).expect("unit blocks")),
    })
}

fn too_small() -> Error {
    Error::domain("minimum distance needs at least two codewords")
}

/// `d(C)` in `metric`. Linear codes use the minimum nonzero codeword weight,
/// explicit codes the minimum over pairs.
pub fn min_distance(code: &Code, metric: Metric, caps: &Caps) -> Result<u32> {
    match &code.repr {
        Repr::Explicit(_) => pairwise_min_distance(code, metric, caps),
        Repr::Linear(basis) => {
            if basis.is_empty() {
                return Err(too_small());
            }
            let w = weigher(&code.space, metric)?;
            let len = code.guarded_len(caps.codeword_cap)?;
            let space = &code.space;
            Ok((1..len)
                .into_par_iter()
                .map(|i| w(&space.vector(code.combination(basis, i)).expect("in range")))
                .min()
                .expect("at least one nonzero codeword"))
        }
    }
}

/// `min_{c1 != c2} d(c1, c2)` by scanning every pair.
pub fn pairwise_min_distance(code: &Code, metric: Metric, caps: &Caps) -> Result<u32> {
    let w = weigher(&code.space, metric)?;
    let words = code.codewords(caps.codeword_cap)?;
    if words.len() < 2 {
        return Err(too_small());
    }
    let space = &code.space;
    Ok((0..words.len())
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..words.len()).map(move |j| (i, j)))
        .map(|(i, j)| w(&space.sub(&words[i], &words[j])))
        .min()
        .expect("at least one pair"))
}

/// Both sides of the Singleton bound for a code of minimum distance `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    pub d: u32,
    /// `⌊(d - 1)/M_w⌋`.
    pub r: u32,
    /// `max_{J ∈ 𝓘^r} Σ_{i ∈ J} k_i`, 0 when `r = 0`.
    pub lhs: usize,
    /// `N - ⌈log_q |C|⌉`.
    pub rhs: usize,
    pub holds: bool,
    pub is_mds: bool,
}

/// Singleton bound in `space` for minimum distance `d` and `⌈log_q |C|⌉ = log_card`.
pub fn singleton_bound(
    space: &BlockSpace,
    idx: &IdealIndex,
    d: u32,
    log_card: u32,
) -> Result<SingletonReport> {
    if d == 0 {
        return Err(Error::domain("minimum distance must be positive"));
    }
    if idx.n() != space.n() {
        return Err(Error::domain("ideal index was built for a different poset"));
    }
    let r = (d - 1) / space.max_weight();
    let pi = space.label_map();
    let lhs = idx
        .of_size(r as usize)
        .iter()
        .map(|ideal| pi.sum_sizes(ideal.members()))
        .max()
        .unwrap_or(0);
    let rhs = space.total_length().saturating_sub(log_card as usize);
    Ok(SingletonReport {
        d,
        r,
        lhs,
        rhs,
        holds: lhs <= rhs,
        is_mds: lhs == rhs,
    })
}

/// Singleton bound for `code` in its own metric.
pub fn singleton_check(code: &Code, idx: &IdealIndex, caps: &Caps) -> Result<SingletonReport> {
    let d = min_distance(code, Metric::Pwpi, caps)?;
    singleton_bound(&code.space, idx, d, code.log_q_card_ceil())
}

/// Closed rational interval `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MdsInterval {
    pub lower: Ratio<i64>,
    pub upper: Ratio<i64>,
}

impl MdsInterval {
    pub fn contains(&self, d: u32) -> bool {
        let d = Ratio::from_integer(i64::from(d));
        self.lower <= d && d <= self.upper
    }
}

impl fmt::Display for MdsInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Where the minimum distance of an MDS code with equal block size `k` must lie:
/// `[M_w(n - L/k) + 1, M_w(n - L/k + 1)]` with `L = ⌈log_q |C|⌉`, kept exact.
pub fn mds_necessary_interval(
    n: usize,
    k: usize,
    max_weight: u32,
    log_card: u32,
) -> Result<MdsInterval> {
    if k == 0 || n == 0 || max_weight == 0 {
        return Err(Error::domain("interval needs positive n, k and M_w"));
    }
    let mw = Ratio::from_integer(i64::from(max_weight));
    let base = Ratio::from_integer(n as i64) - Ratio::new(i64::from(log_card), k as i64);
    Ok(MdsInterval {
        lower: mw * base + 1,
        upper: mw * (base + 1),
    })
}

/// `⌊(d_pwpi - 1)/M_w⌋ <= d_ppi - 1`, and the unit-block analogue with `d_pw`, `d_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
    /// `(⌊(d_pw - 1)/M_w⌋, d_p - 1)` for unit blocks.
    pub unit: Option<(u32, u32)>,
    pub unit_holds: Option<bool>,
}

impl ComparisonReport {
    pub fn all_hold(&self) -> bool {
        self.holds && self.unit_holds.unwrap_or(true)
    }
}

pub fn distance_comparison(
    max_weight: u32,
    d_pwpi: u32,
    d_ppi: u32,
    unit: Option<(u32, u32)>,
) -> ComparisonReport {
    let ratio = |d: u32| (d - 1) / max_weight;
    let lhs = ratio(d_pwpi);
    let unit = unit.map(|(d_pw, d_p)| (ratio(d_pw), d_p - 1));
    ComparisonReport {
        lhs,
        rhs: d_ppi - 1,
        holds: lhs < d_ppi,
        unit,
        unit_holds: unit.map(|(a, b)| a <= b),
    }
}

pub fn distance_comparison_check(code: &Code, caps: &Caps) -> Result<ComparisonReport> {
    let d_pwpi = min_distance(code, Metric::Pwpi, caps)?;
    let d_ppi = min_distance(code, Metric::Ppi, caps)?;
    let unit = if code.space.label_map().is_unit() {
        Some((
            min_distance(code, Metric::Pw, caps)?,
            min_distance(code, Metric::P, caps)?,
        ))
    } else {
        None
    };
    Ok(distance_comparison(
        code.space.max_weight(),
        d_pwpi,
        d_ppi,
        unit,
    ))
}

/// MDS status under the weighted metric and its Hamming reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InheritanceReport {
    pub pwpi_mds: bool,
    pub ppi_mds: bool,
    pub pw_mds: Option<bool>,
    pub p_mds: Option<bool>,
}

impl InheritanceReport {
    /// Weighted MDS implies unweighted MDS, for both pairs.
    pub fn holds(&self) -> bool {
        let implies = |a: bool, b: bool| !a || b;
        implies(self.pwpi_mds, self.ppi_mds)
            && match (self.pw_mds, self.p_mds) {
                (Some(a), Some(b)) => implies(a, b),
                _ => true,
            }
    }
}

pub fn mds_inheritance_check(
    code: &Code,
    idx: &IdealIndex,
    caps: &Caps,
) -> Result<InheritanceReport> {
    Ok(analyze_with_index(code, idx, caps)?.inheritance)
}

/// Everything the code-level theory says about one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeAnalysis {
    pub cardinality: BigUint,
    pub log_q_card_ceil: u32,
    pub d_pwpi: u32,
    pub d_ppi: u32,
    pub d_pw: Option<u32>,
    pub d_p: Option<u32>,
    /// Singleton bound in the weighted metric.
    pub singleton: SingletonReport,
    /// Singleton bound in the `(P, π)` metric.
    pub singleton_ppi: SingletonReport,
    pub mds_interval: Option<MdsInterval>,
    pub comparison: ComparisonReport,
    pub inheritance: InheritanceReport,
    /// `M_w (d_ppi - 1)` when the poset is a chain.
    pub packing_radius: Option<u32>,
}

impl CodeAnalysis {
    pub fn is_mds(&self) -> bool {
        self.singleton.is_mds
    }

    /// Whether an MDS code lies in its necessary interval (vacuous otherwise).
    pub fn interval_consistent(&self) -> bool {
        match self.mds_interval {
            Some(iv) if self.is_mds() => iv.contains(self.d_pwpi),
            _ => true,
        }
    }

    /// Every never-violated property holds.
    pub fn theorems_hold(&self) -> bool {
        self.singleton.holds
            && self.singleton_ppi.holds
            && self.comparison.all_hold()
            && self.inheritance.holds()
            && self.interval_consistent()
    }
}

pub fn analyze(code: &Code, caps: &Caps) -> Result<CodeAnalysis> {
    let idx = enumerate_ideals(code.space.poset(), caps.ideal_cap)?;
    analyze_with_index(code, &idx, caps)
}

pub fn analyze_with_index(code: &Code, idx: &IdealIndex, caps: &Caps) -> Result<CodeAnalysis> {
    let space = &code.space;
    let twin = space.hamming_twin();
    let log_card = code.log_q_card_ceil();
    let d_pwpi = min_distance(code, Metric::Pwpi, caps)?;
    let d_ppi = min_distance(code, Metric::Ppi, caps)?;
    let unit = space.label_map().is_unit();
    let (d_pw, d_p) = if unit {
        (
            Some(min_distance(code, Metric::Pw, caps)?),
            Some(min_distance(code, Metric::P, caps)?),
        )
    } else {
        (None, None)
    };
    let singleton = singleton_bound(space, idx, d_pwpi, log_card)?;
    let singleton_ppi = singleton_bound(&twin, idx, d_ppi, log_card)?;
    let pw_mds = d_pw
        .map(|d| singleton_bound(space, idx, d, log_card).map(|s| s.is_mds))
        .transpose()?;
    let p_mds = d_p
        .map(|d| singleton_bound(&twin, idx, d, log_card).map(|s| s.is_mds))
        .transpose()?;
    let mds_interval = space
        .label_map()
        .uniform_size()
        .map(|k| mds_necessary_interval(space.n(), k, space.max_weight(), log_card))
        .transpose()?;
    let comparison = distance_comparison(space.max_weight(), d_pwpi, d_ppi, d_pw.zip(d_p));
    let packing_radius = space
        .poset()
        .is_chain()
        .then(|| space.max_weight() * (d_ppi - 1));
    Ok(CodeAnalysis {
        cardinality: code.cardinality(),
        log_q_card_ceil: log_card,
        d_pwpi,
        d_ppi,
        d_pw,
        d_p,
        inheritance: InheritanceReport {
            pwpi_mds: singleton.is_mds,
            ppi_mds: singleton_ppi.is_mds,
            pw_mds,
            p_mds,
        },
        singleton,
        singleton_ppi,
        mds_interval,
        comparison,
        packing_radius,
    })
}

impl Code {
    /// True when the code is all of `Z_m^N`.
    pub fn is_full_space(&self) -> bool {
        self.cardinality() == self.space.size()
    }
}
