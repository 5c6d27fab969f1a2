mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use pbcode::{enumerate_ideals, LabelSet, Poset};

/// Ideals grouped by (size, maximal count), found by testing every subset.
fn census_oracle(c: &common::Config) -> BTreeMap<(usize, usize), usize> {
    let order = c.order();
    let mut out = BTreeMap::new();
    for set in 1u32..1 << c.n {
        let members: Vec<usize> = (0..c.n).filter(|&i| set & (1 << i) != 0).collect();
        let closed = members
            .iter()
            .all(|&j| (0..c.n).all(|i| !order[i][j] || members.contains(&i)));
        if !closed {
            continue;
        }
        let maximal = members
            .iter()
            .filter(|&&j| !members.iter().any(|&i| i != j && order[j][i]))
            .count();
        *out.entry((members.len(), maximal)).or_insert(0) += 1;
    }
    out
}

fn seeded_config(seed: u64, n: usize) -> common::Config {
    let mut rng = common::rng(seed);
    let relations = common::random_relations(n, 0.3, &mut rng);
    common::Config {
        m: 2,
        kind: common::Kind::Hamming,
        n,
        sizes: vec![1; n],
        relations,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ideal_census_matches_subsets(seed in any::<u64>(), n in 1usize..=8) {
        let c = seeded_config(seed, n);
        let p = Poset::new(n, &c.relations).unwrap();
        let idx = enumerate_ideals(&p, 1 << 16).unwrap();
        let got: BTreeMap<(usize, usize), usize> = idx.groups().map(|(key, ideals)| (key, ideals.len())).collect();
        prop_assert_eq!(got, census_oracle(&c));
        for (_, ideals) in idx.groups() {
            for ideal in ideals {
                prop_assert!(p.is_ideal(ideal.members()));
                prop_assert_eq!(p.maximal_elements_of(ideal.members()), ideal.maximals());
            }
        }
    }

    #[test]
    fn closure_is_smallest_ideal(seed in any::<u64>(), n in 1usize..=8, bits in any::<u64>()) {
        let c = seeded_config(seed, n);
        let p = Poset::new(n, &c.relations).unwrap();
        let order = c.order();
        let set = LabelSet::from_bits(bits & ((1u64 << n) - 1));
        let ideal = p.ideal_closure(set).unwrap();
        let expected: Vec<usize> = (1..=n)
            .filter(|&j| set.iter().any(|i| order[j - 1][i - 1]))
            .collect();
        prop_assert_eq!(ideal.members().to_vec(), expected);
        prop_assert!(set.is_subset(ideal.members()));
        prop_assert_eq!(p.ideal_closure(ideal.members()).unwrap().members(), ideal.members());
    }

    #[test]
    fn order_relation_matches(seed in any::<u64>(), n in 1usize..=8) {
        let c = seeded_config(seed, n);
        let p = Poset::new(n, &c.relations).unwrap();
        let order = c.order();
        for i in 1..=n {
            for j in 1..=n {
                prop_assert_eq!(p.leq(i, j), order[i - 1][j - 1]);
            }
        }
        prop_assert_eq!(p.is_chain(), c.is_chain());
        let rebuilt = Poset::new(n, &p.cover_pairs()).unwrap();
        prop_assert_eq!(rebuilt, p);
    }
}

#[test]
fn cycles_rejected() {
    assert!(Poset::new(3, &[(1, 2), (2, 3), (3, 1)]).is_err());
    assert!(Poset::new(2, &[(1, 3)]).is_err());
}
