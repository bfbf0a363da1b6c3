use hamlab::graph::{generate_erdos_renyi, generate_planted_cycle, parse_graph, validate_circuit};
use hamlab::layered::{exact_build, exact_decide, ExactBudget};
use hamlab::oracle::held_karp::dp_has_circuit;
use hamlab::oracle::{oracle_has_circuit, oracle_level_sets};
use hamlab::stateset::{fuzzy_build, fuzzy_decide, FuzzyConfig};
use hamlab::{Graph, Parallelism, VertexSet};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric_and_degrees_sum(g in graph(12)) {
        let mut degree_sum = 0;
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in g.neighbors(u) {
                prop_assert!(g.has_edge(v, u));
            }
            degree_sum += g.degree(u);
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn edge_list_round_trips(g in graph(12)) {
        prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn generators_are_deterministic(n in 3usize..30, p in 0.0f64..=1.0, seed: u64) {
        prop_assert_eq!(
            generate_erdos_renyi(n, p, seed).unwrap(),
            generate_erdos_renyi(n, p, seed).unwrap()
        );
        let planted = generate_planted_cycle(n, p, seed).unwrap();
        prop_assert_eq!(&planted, &generate_planted_cycle(n, p, seed).unwrap());
        let cycle: Vec<usize> = (0..n).collect();
        prop_assert!(validate_circuit(&planted, &cycle).is_ok());
    }

    #[test]
    fn layered_nodes_are_simple_paths(g in graph(7), picks in prop::collection::vec(any::<prop::sample::Index>(), 16)) {
        let dag = exact_build(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        let occupied: Vec<usize> = (0..dag.depth()).filter(|&i| dag.level_len(i) > 0).collect();
        for (k, pick) in picks.iter().enumerate() {
            let i = occupied[k % occupied.len()];
            let tags: Vec<_> = dag.level(i).collect();
            let tag = tags[pick.index(tags.len())];
            let path = dag.path_to(tag);
            prop_assert_eq!(path.len(), i + 1);
            prop_assert_eq!(path[0], 0);
            prop_assert_eq!(*path.last().unwrap(), dag.node(tag).meaning as usize);
            let distinct: VertexSet = path.iter().copied().collect();
            prop_assert_eq!(distinct.len(), path.len());
            for w in path.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
        }
    }

    #[test]
    fn exact_level_sets_match_brute_force(g in graph(7)) {
        let d = exact_decide(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        prop_assert_eq!(&d.level_sets, &oracle_level_sets(&g, 0, 10).unwrap());
        prop_assert_eq!(d.has_circuit, oracle_has_circuit(&g, 0).is_some());
        prop_assert_eq!(d.has_circuit, dp_has_circuit(&g).unwrap());
    }

    #[test]
    fn state_sets_cover_exact_level_sets(g in graph(8)) {
        let exact = exact_decide(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        let fuzzy = fuzzy_decide(&g, 0, FuzzyConfig::default()).unwrap();
        prop_assert!(fuzzy.level_sets.contains_levelwise(&exact.level_sets));
        prop_assert!(fuzzy.within_size_bounds);
        if exact.has_circuit {
            prop_assert!(fuzzy.nonempty);
        }
        if let Some(c) = &fuzzy.candidate {
            prop_assert!(c.validate(&g).is_ok());
        }
    }

    #[test]
    fn planted_cycles_are_found(n in 3usize..40, p in 0.0f64..0.3, seed: u64) {
        let g = generate_planted_cycle(n, p, seed).unwrap();
        prop_assert!(fuzzy_decide(&g, 0, FuzzyConfig::default()).unwrap().nonempty);
    }

    #[test]
    fn fan_out_does_not_change_structures(g in graph(9)) {
        let seq = FuzzyConfig { par: Parallelism::Sequential, ..FuzzyConfig::default() };
        let par = FuzzyConfig { par: Parallelism::Parallel, ..FuzzyConfig::default() };
        prop_assert_eq!(fuzzy_build(&g, 0, seq).unwrap().dump(), fuzzy_build(&g, 0, par).unwrap().dump());
        let a = exact_build(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        let b = exact_build(&g, 0, ExactBudget::default(), Parallelism::Parallel).unwrap();
        prop_assert_eq!(a.dump(), b.dump());
    }
}
