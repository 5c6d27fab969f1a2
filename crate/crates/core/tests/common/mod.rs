//! Test-side oracles that share no code with the library beyond its constructors.
#![allow(dead_code)]

use pbcode::{BlockSpace, LabelMap, Poset, WeightFunction};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hamming,
    Lee,
}

/// A randomly drawn space, kept in plain data so the oracles can read it directly.
#[derive(Clone, Debug)]
pub struct Config {
    pub m: u32,
    pub kind: Kind,
    pub n: usize,
    pub sizes: Vec<usize>,
    /// Pairs `(a, b)` meaning `a ⪯ b`, not necessarily covers.
    pub relations: Vec<(usize, usize)>,
}

impl Config {
    pub fn space(&self) -> BlockSpace {
        let w = match self.kind {
            Kind::Hamming => WeightFunction::hamming(self.m),
            Kind::Lee => WeightFunction::lee(self.m),
        }
        .unwrap();
        BlockSpace::new(
            Poset::new(self.n, &self.relations).unwrap(),
            LabelMap::new(self.sizes.clone()).unwrap(),
            w,
        )
        .unwrap()
    }

    pub fn total_length(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn size(&self) -> u64 {
        u64::from(self.m).pow(self.total_length() as u32)
    }

    pub fn is_unit(&self) -> bool {
        self.sizes.iter().all(|&k| k == 1)
    }

    pub fn with_kind(&self, kind: Kind) -> Config {
        Config {
            kind,
            ..self.clone()
        }
    }

    pub fn coord_weight(&self, a: u32) -> u32 {
        match (self.kind, a) {
            (_, 0) => 0,
            (Kind::Hamming, _) => 1,
            (Kind::Lee, a) => a.min(self.m - a),
        }
    }

    pub fn max_weight(&self) -> u32 {
        (0..self.m).map(|a| self.coord_weight(a)).max().unwrap()
    }

    /// `below[i][j]` iff `i ⪯ j` (0-based), by repeated relaxation.
    pub fn order(&self) -> Vec<Vec<bool>> {
        let mut below = vec![vec![false; self.n]; self.n];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.relations {
            below[a - 1][b - 1] = true;
        }
        loop {
            let mut changed = false;
            for i in 0..self.n {
                for j in 0..self.n {
                    if !below[i][j] {
                        continue;
                    }
                    for k in 0..self.n {
                        if below[j][k] && !below[i][k] {
                            below[i][k] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return below;
            }
        }
    }

    pub fn is_chain(&self) -> bool {
        let o = self.order();
        (0..self.n).all(|i| (0..self.n).all(|j| o[i][j] || o[j][i]))
    }

    pub fn blocks<'a>(&self, coords: &'a [u32]) -> Vec<&'a [u32]> {
        let mut out = Vec::new();
        let mut start = 0;
        for &k in &self.sizes {
            out.push(&coords[start..start + k]);
            start += k;
        }
        out
    }
}

/// Weight straight from the definition: take the down-closure of the nonzero blocks,
/// charge maximal members their largest coordinate weight and the rest `M_w`.
pub fn oracle_weight(c: &Config, coords: &[u32]) -> u32 {
    oracle_weight_with(c, coords, |a| c.coord_weight(a), c.max_weight())
}

pub fn oracle_weight_with(c: &Config, coords: &[u32], w: impl Fn(u32) -> u32, mw: u32) -> u32 {
    let order = c.order();
    let blocks = c.blocks(coords);
    let support: Vec<usize> = (0..c.n)
        .filter(|&i| blocks[i].iter().any(|&a| a != 0))
        .collect();
    let ideal: Vec<usize> = (0..c.n)
        .filter(|&j| support.iter().any(|&i| order[j][i]))
        .collect();
    let mut total = 0;
    for &j in &ideal {
        let is_max = !ideal.iter().any(|&i| i != j && order[j][i]);
        total += if is_max {
            blocks[j].iter().map(|&a| w(a)).max().unwrap()
        } else {
            mw
        };
    }
    total
}

pub fn index_to_coords(c: &Config, mut index: u64) -> Vec<u32> {
    (0..c.total_length())
        .map(|_| {
            let a = (index % u64::from(c.m)) as u32;
            index /= u64::from(c.m);
            a
        })
        .collect()
}

pub fn oracle_distribution(c: &Config) -> Vec<u64> {
    let mut counts = vec![0u64; c.n * c.max_weight() as usize + 1];
    for i in 0..c.size() {
        counts[oracle_weight(c, &index_to_coords(c, i)) as usize] += 1;
    }
    counts
}

pub fn sub(c: &Config, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a + c.m - b) % c.m)
        .collect()
}

pub fn add(c: &Config, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| (a + b) % c.m).collect()
}

pub fn random_vector(c: &Config, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..c.total_length())
        .map(|_| rng.gen_range(0..c.m))
        .collect()
}

/// Random order on `[n]`: a random DAG on a shuffled labelling.
pub fn random_relations(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                out.push((labels[i], labels[j]));
            }
        }
    }
    out
}

pub fn chain_relations(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    labels.windows(2).map(|w| (w[0], w[1])).collect()
}

pub const SUITE_MODULI: [u32; 3] = [2, 3, 5];

/// A suite configuration: `m ∈ {2, 3, 5}`, `n ≤ 4`, `k_i ≤ 2`, `N ≤ 6`.
pub fn random_config(rng: &mut ChaCha8Rng) -> Config {
    random_config_limited(rng, 6, |rng, n| random_relations(n, 0.45, rng))
}

pub fn random_chain_config(rng: &mut ChaCha8Rng) -> Config {
    random_config_limited(rng, 6, |rng, n| chain_relations(n, rng))
}

pub fn random_config_limited(
    rng: &mut ChaCha8Rng,
    max_len: usize,
    relations: impl Fn(&mut ChaCha8Rng, usize) -> Vec<(usize, usize)>,
) -> Config {
    let m = *SUITE_MODULI.choose(rng).unwrap();
    let kind = if rng.gen_bool(0.5) {
        Kind::Hamming
    } else {
        Kind::Lee
    };
    let n = rng.gen_range(1..=4);
    let mut sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    while sizes.iter().sum::<usize>() > max_len {
        let i = sizes.iter().position(|&k| k == 2).unwrap();
        sizes[i] = 1;
    }
    let relations = relations(rng, n);
    Config {
        m,
        kind,
        n,
        sizes,
        relations,
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between 2 and `max_words` distinct words (fewer if the space is smaller).
pub fn random_explicit_words(c: &Config, max_words: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let cap = (max_words as u64).min(c.size()) as usize;
    let target = rng.gen_range(2..=cap.max(2));
    let mut words: Vec<Vec<u32>> = Vec::new();
    while words.len() < target {
        let w = random_vector(c, rng);
        if !words.contains(&w) {
            words.push(w);
        }
    }
    words
}

/// Up to `max_rank` random generators, at least one of them nonzero.
pub fn random_generators(c: &Config, max_rank: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    loop {
        let count = rng.gen_range(1..=max_rank);
        let gens: Vec<Vec<u32>> = (0..count).map(|_| random_vector(c, rng)).collect();
        if gens.iter().any(|g| g.iter().any(|&a| a != 0)) {
            return gens;
        }
    }
}

/// Every element of the `Z_p`-span of `gens`, deduplicated.
pub fn span(c: &Config, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; c.total_length()]];
    for g in gens {
        let mut next = Vec::new();
        for v in &out {
            for s in 0..c.m {
                let scaled: Vec<u32> = g.iter().map(|&a| a * s % c.m).collect();
                next.push(add(c, v, &scaled));
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// `min_{a != b} w(a - b)` with the definition-level weight.
pub fn oracle_min_distance(c: &Config, words: &[Vec<u32>]) -> u32 {
    let mut best = u32::MAX;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            best = best.min(oracle_weight(c, &sub(c, a, b)));
        }
    }
    best
}
