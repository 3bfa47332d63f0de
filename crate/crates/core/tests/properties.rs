//! Invariants checked against brute-force oracles on small random graphs.

mod common;

use std::collections::BTreeSet;

use common::*;
use lcol::graph::{check_coloring, component_distance, small_big_split, validate_f_assignment};
use lcol::io::{parse_instance, write_instance};
use lcol::minor::{find_k5_minor, is_k5_model};
use lcol::peelgen::{gen_peel_instance, PeelGenOptions};
use lcol::solver::{color_degree_choosable, solve_exact, uncolorability_certificate, SolveBudget, Verdict};
use lcol::structure::{block_decomposition, is_gallai_tree, is_planar, vertex_connectivity};
use lcol::{Graph, ListAssignment};
use proptest::collection::vec;
use proptest::prelude::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.1f64..0.9).prop_flat_map(|(n, p)| {
        vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn with_lists(max_n: usize) -> impl Strategy<Value = (Graph, ListAssignment)> {
    small_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), vec(proptest::sample::subsequence((1u32..=4).collect::<Vec<_>>(), 1..=3), n))
            .prop_map(|(g, ls)| {
                let lists = ls.into_iter().map(|l| l.into_iter().collect::<BTreeSet<_>>()).collect();
                (g, ListAssignment::from_sets_unchecked(lists))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn split_partitions_vertices(g in small_graph(10), k in 1usize..8) {
        let (s, b) = small_big_split(&g, k);
        let mut all: Vec<_> = s.iter().chain(&b).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        prop_assert!(s.iter().all(|&v| g.degree(v) < k));
        prop_assert!(b.iter().all(|&v| g.degree(v) >= k));
    }

    #[test]
    fn component_distance_matches_floyd_warshall(g in small_graph(10), mask in vec(any::<bool>(), 10)) {
        let set: Vec<_> = (0..g.n()).filter(|&v| mask[v]).collect();
        prop_assert_eq!(component_distance(&g, &set), brute_set_distance(&g, &set));
    }

    #[test]
    fn blocks_match_cut_vertex_oracle(g in small_graph(10)) {
        let bd = block_decomposition(&g);
        let cuts: BTreeSet<_> = bd.cut_vertices.iter().copied().collect();
        prop_assert_eq!(&cuts, &brute_cut_vertices(&g));
        // Every edge lies in exactly one block.
        for (u, v) in g.edges() {
            let holders = bd.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holders, 1);
        }
        for b in &bd.blocks {
            let (h, _) = g.induced(b);
            prop_assert!(h.is_connected());
            if h.n() >= 3 {
                prop_assert!(brute_cut_vertices(&h).is_empty());
            }
        }
        for (i, a) in bd.blocks.iter().enumerate() {
            for b in &bd.blocks[i + 1..] {
                prop_assert!(a.iter().filter(|v| b.contains(v)).count() <= 1);
            }
        }
    }

    #[test]
    fn connectivity_matches_subset_search(g in small_graph(9)) {
        prop_assert_eq!(vertex_connectivity(&g), brute_connectivity(&g));
    }

    #[test]
    fn exact_solver_matches_enumeration((g, lists) in with_lists(8)) {
        let res = solve_exact(&g, &lists, SolveBudget::default()).unwrap();
        let brute = brute_color(&g, &lists);
        prop_assert_eq!(res.verdict == Verdict::Colorable, brute.is_some());
        if let Some(c) = &res.coloring {
            prop_assert!(check_coloring(&g, &lists, c));
        }
        if let Some(cert) = &res.certificate {
            prop_assert!(cert.verify(&g, &lists));
        }
    }

    #[test]
    fn text_format_round_trips((g, lists) in with_lists(10)) {
        let text = write_instance(&g, &lists);
        let (g2, l2) = parse_instance(&text).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&l2, &lists);
        prop_assert_eq!(write_instance(&g2, &l2), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn k5_minor_matches_branch_set_enumeration(g in small_graph(8)) {
        let found = find_k5_minor(&g, 10_000_000).unwrap();
        prop_assert_eq!(found.is_some(), brute_k5_minor(&g));
        if let Some(w) = &found {
            prop_assert!(is_k5_model(&g, w));
            prop_assert!(!is_planar(&g));
        }
    }

    #[test]
    fn degree_lists_on_gallai_trees(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (g, blocks) = random_gallai_tree(&mut rng, 12);
        let lists = gallai_lists(&mut rng, &g, &blocks);
        prop_assert!(is_gallai_tree(&g));
        let cert = uncolorability_certificate(&g, &lists);
        let brute = brute_color(&g, &lists);
        if g.n() > 1 && (0..g.n()).all(|v| lists.list(v).len() == g.degree(v)) {
            prop_assert_eq!(cert.is_some(), brute.is_none());
        }
        if let Some(c) = cert {
            prop_assert!(c.verify(&g, &lists));
        }
    }

    #[test]
    fn non_gallai_graphs_are_degree_choosable(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = 4 + (seed % 8) as usize;
        let g = random_connected(&mut rng, n, n);
        prop_assume!(!is_gallai_tree(&g));
        let lists = degree_lists(&mut rng, &g, g.max_degree() as u32 + 1);
        let c = color_degree_choosable(&g, &lists).unwrap();
        prop_assert!(check_coloring(&g, &lists, &c));
    }
}

#[test]
fn runs_are_deterministic() {
    let opts = PeelGenOptions::default();
    for seed in 0..3 {
        let a = gen_peel_instance(seed, 8, 3, &opts).unwrap();
        let b = gen_peel_instance(seed, 8, 3, &opts).unwrap();
        assert_eq!(a, b);
        assert!(validate_f_assignment(&a.graph, &a.lists, 8));
        let s1 = solve_exact(&a.graph, &a.lists, SolveBudget::default()).unwrap();
        let s2 = solve_exact(&a.graph, &a.lists, SolveBudget::default()).unwrap();
        assert_eq!(s1, s2);
    }
}
