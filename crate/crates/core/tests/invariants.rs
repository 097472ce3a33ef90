use proptest::prelude::*;

use multicontract::bonds::{classify, enumerate_bonds};
use multicontract::contraction::{is_contraction, verify_model, CheckOptions};
use multicontract::corpus::{
    random_connected, random_contraction, random_multigraph, random_two_connected, rng,
};
use multicontract::decomposition::{blocks, tutte_decomposition, validate_decomposition};
use multicontract::{EdgeRef, Multigraph};

fn any_graph() -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 1usize..=6, 0usize..=8)
        .prop_map(|(seed, n, m)| random_multigraph(&mut rng(seed), n, m))
}

fn connected_graph() -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 1usize..=6, 0usize..=4)
        .prop_map(|(seed, n, m)| random_connected(&mut rng(seed), n, m))
}

fn two_connected_graph() -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 2usize..=7, 0usize..=3)
        .prop_map(|(seed, n, m)| random_two_connected(&mut rng(seed), n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contracting_an_edge_keeps_the_graph_well_formed(g in connected_graph(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v, m) = edges[pick.index(edges.len())];
        let h = g.contract_edge(EdgeRef::new(u, v).unwrap()).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - 1);
        prop_assert_eq!(h.edge_sum(), g.edge_sum() - m);
        prop_assert!(h.edges().all(|(a, b, k)| a != b && k >= 1));
        prop_assert_eq!(h.component_count(), g.component_count());
    }

    #[test]
    fn contraction_is_reflexive_and_transitive(g in any_graph(), seed in any::<u64>()) {
        let opts = CheckOptions::plain();
        prop_assert!(is_contraction(&g, &g, &opts));
        let mut r = rng(seed);
        let (mid, _) = random_contraction(&mut r, &g, 2);
        let (low, _) = random_contraction(&mut r, &mid, 2);
        prop_assert!(is_contraction(&mid, &g, &opts));
        prop_assert!(is_contraction(&low, &mid, &opts));
        prop_assert!(is_contraction(&low, &g, &opts));
    }

    #[test]
    fn witness_models_verify(g in any_graph(), seed in any::<u64>(), steps in 0usize..5) {
        let (h, model) = random_contraction(&mut rng(seed), &g, steps);
        prop_assert_eq!(verify_model(&h, &g, &model, &CheckOptions::plain()), Ok(true));
    }

    #[test]
    fn bonds_are_minimal_cuts(g in any_graph()) {
        for b in enumerate_bonds(&g) {
            prop_assert!(b.size() >= 1);
            prop_assert!(b.is_minimal_cut(&g));
        }
    }

    #[test]
    fn classification_is_isomorphism_invariant(g in any_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng(seed));
        prop_assert_eq!(classify(&g), classify(&g.permuted(&perm)));
    }

    #[test]
    fn blocks_partition_the_edges(g in any_graph()) {
        let forest = blocks(&g);
        for (u, v, _) in g.edges() {
            let holding = forest.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holding, 1);
        }
        for (i, a) in forest.blocks.iter().enumerate() {
            for b in &forest.blocks[i + 1..] {
                let shared: Vec<_> = a.iter().filter(|x| b.contains(x)).collect();
                prop_assert!(shared.len() <= 1);
                prop_assert!(shared.iter().all(|x| forest.cutvertices.contains(x)));
            }
        }
    }

    #[test]
    fn tutte_decompositions_validate(g in two_connected_graph()) {
        let d = tutte_decomposition(&g).unwrap();
        prop_assert_eq!(validate_decomposition(&g, &d).unwrap(), vec![]);
    }
}
