use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

/// A non-increasing sequence of positive parts, each at most `M_w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedPartition {
    parts: Vec<u32>,
}

impl BoundedPartition {
    /// Wraps `parts`, sorting them into non-increasing order. Panics on a zero part.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        BoundedPartition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `t! / (r_1! ⋯ r_l!)`, the number of distinct arrangements of the parts.
    pub fn arrangement_count(&self) -> BigUint {
        let factorial = |n: usize| (1..=n).fold(BigUint::one(), |acc, i| acc * i);
        let denominator = self
            .multiplicities()
            .iter()
            .fold(BigUint::one(), |acc, &(_, r)| acc * factorial(r));
        factorial(self.len()) / denominator
    }
}

/// All partitions of `target` into at most `max_parts` parts, each in `[1, max_part]`,
/// in descending lexicographic order. Empty when `target == 0` or the target is
/// out of reach.
pub fn bounded_partitions(target: u32, max_part: u32, max_parts: usize) -> Vec<BoundedPartition> {
    let mut out = Vec::new();
    if target == 0 || max_part == 0 || u64::from(target) > u64::from(max_part) * max_parts as u64 {
        return out;
    }
    let mut current = Vec::with_capacity(max_parts);
    extend(target, max_part, max_parts, &mut current, &mut out);
    out
}

fn extend(
    remaining: u32,
    cap: u32,
    slots: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<BoundedPartition>,
) {
    if remaining == 0 {
        out.push(BoundedPartition {
            parts: current.clone(),
        });
        return;
    }
    if slots == 0 || u64::from(remaining) > u64::from(cap) * slots as u64 {
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        current.push(part);
        extend(remaining - part, part, slots - 1, current, out);
        current.pop();
    }
}

/// Memoised [`bounded_partitions`] for a fixed `max_part`.
#[derive(Debug, Default)]
pub struct PartitionMemo {
    max_part: u32,
    cache: HashMap<(u32, usize), Arc<Vec<BoundedPartition>>>,
}

impl PartitionMemo {
    pub fn new(max_part: u32) -> Self {
        PartitionMemo {
            max_part,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, target: u32, max_parts: usize) -> Arc<Vec<BoundedPartition>> {
        let max_part = self.max_part;
        self.cache
            .entry((target, max_parts))
            .or_insert_with(|| Arc::new(bounded_partitions(target, max_part, max_parts)))
            .clone()
    }
}
