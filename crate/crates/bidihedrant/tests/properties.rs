//! Randomized property tests for the group, field and graph kernels.

use proptest::prelude::*;

use bidihedrant::graph::SimpleGraph;
use bidihedrant::matgf::{field_of_order, Mat, SemilinearElement};
use bidihedrant::{Permutation, PermutationGroup};

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn group_strategy(degree: usize) -> impl Strategy<Value = PermutationGroup> {
    proptest::collection::vec(perm_strategy(degree), 1..4)
        .prop_map(|gens| PermutationGroup::from_generators(gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn order_divides_degree_factorial(g in (3usize..8).prop_flat_map(group_strategy)) {
        let degree = g.degree();
        prop_assert_eq!(factorial(degree) % g.order(), 0);
    }

    #[test]
    fn random_words_sift_as_members(
        (g, word) in (3usize..8)
            .prop_flat_map(group_strategy)
            .prop_flat_map(|g| {
                let n = g.generators().len();
                (Just(g), proptest::collection::vec(0..n, 0..12))
            })
    ) {
        let mut w = Permutation::identity(g.degree());
        for i in word {
            w = w.compose(&g.generators()[i]);
        }
        prop_assert!(g.contains(&w).unwrap());
    }

    #[test]
    fn normal_closure_is_normal(
        g in (3usize..7).prop_flat_map(group_strategy)
    ) {
        let x = g.generators()[0].clone();
        let n = g.normal_closure(&x).unwrap();
        for s in g.generators() {
            for y in n.generators() {
                prop_assert!(n.contains(&y.conjugate(s)).unwrap());
            }
        }
    }

    #[test]
    fn conjugacy_class_sizes_sum_to_order(
        g in (3usize..6).prop_flat_map(group_strategy)
    ) {
        let sizes = g.conjugacy_class_sizes().unwrap();
        let total: u128 = sizes.iter().sum();
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn graph6_roundtrip(
        (n, edge_bits) in (1usize..70).prop_flat_map(|n| {
            let max_edges = n * (n.saturating_sub(1)) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), max_edges))
        })
    ) {
        let mut g = SimpleGraph::empty(n);
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if edge_bits[idx] {
                    g.add_edge(i, j).unwrap();
                }
                idx += 1;
            }
        }
        let encoded = g.to_graph6();
        let decoded = SimpleGraph::from_graph6(&encoded).unwrap();
        prop_assert_eq!(g, decoded);
    }

    #[test]
    fn semilinear_composition_agrees_on_vectors(
        (e1, e2, k1, k2, v) in (
            proptest::collection::vec(0u64..9, 4),
            proptest::collection::vec(0u64..9, 4),
            0u32..2,
            0u32..2,
            proptest::collection::vec(0u64..9, 2),
        )
    ) {
        let f = field_of_order(9).unwrap();
        let a = SemilinearElement { matrix: Mat { d: 2, entries: e1 }, frobenius_power: k1 };
        let b = SemilinearElement { matrix: Mat { d: 2, entries: e2 }, frobenius_power: k2 };
        let ab = a.compose(&b, &f);
        // Convention: a applied first, then b.
        let expected = b.apply_vec(&a.apply_vec(&v, &f), &f);
        prop_assert_eq!(ab.apply_vec(&v, &f), expected);
    }

    #[test]
    fn orbits_partition_domain(g in (3usize..8).prop_flat_map(group_strategy)) {
        let orbits = bidihedrant::action::orbits(&g);
        let mut all: Vec<usize> = orbits.into_iter().flatten().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.degree()).collect::<Vec<_>>());
    }
}
