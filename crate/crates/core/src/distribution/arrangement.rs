use super::partition::BoundedPartition;

/// Distinct permutations of a multiset of parts, in ascending lexicographic order.
///
/// Steps with the classic next-permutation rule, which skips repeated values and so
/// never yields a duplicate.
#[derive(Clone, Debug)]
pub struct Arrangements {
    current: Vec<u32>,
    done: bool,
}

impl Arrangements {
    pub fn new(parts: &[u32]) -> Self {
        let mut current = parts.to_vec();
        current.sort_unstable();
        Arrangements {
            current,
            done: false,
        }
    }
}

impl Iterator for Arrangements {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let v = &mut self.current;
        match (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            None => self.done = true,
            Some(i) => {
                let pivot = i - 1;
                let swap = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
                v.swap(pivot, swap);
                v[i..].reverse();
            }
        }
        Some(out)
    }
}

/// Every arrangement of the parts of `b`.
pub fn arrangements(b: &BoundedPartition) -> Vec<Vec<u32>> {
    Arrangements::new(b.parts()).collect()
}
