mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{brute_chromatic, brute_clique_number, check_witness, naive_contains_subdivision};
use ispab::formats::{
    emit_dimacs, emit_edgelist, emit_graph6, parse_dimacs, parse_edgelist, parse_graph6,
};
use ispab::generators::{subdivide, PatternPab};
use ispab::graph::trace;
use ispab::oracles::{chromatic_number, clique_number};
use ispab::structure::{compute_bounds, BoundsConfig};
use ispab::subdivision::{detect_pattern, membership_witness, validate_witness};
use ispab::{Graph, Limits};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 0..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn same(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edges().eq(h.edges())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formats_round_trip(g in graph(70)) {
        prop_assert!(same(&g, &parse_graph6(&emit_graph6(&g)).unwrap()));
        prop_assert!(same(&g, &parse_dimacs(&emit_dimacs(&g)).unwrap()));
        prop_assert!(same(&g, &parse_edgelist(&emit_edgelist(&g)).unwrap()));
    }

    #[test]
    fn trace_counts_cover_each_part(g in graph(14), v in 0usize..14, cut in 0usize..14) {
        prop_assume!(v < g.n());
        let rest: Vec<usize> = g.vertices().filter(|&u| u != v).collect();
        let cut = cut.min(rest.len());
        let parts = vec![rest[..cut].to_vec(), rest[cut..].to_vec()];
        let t = trace(&g, v, &parts).unwrap();
        for (p, pt) in parts.iter().zip(&t.parts) {
            prop_assert_eq!(pt.size(), p.len());
            prop_assert_eq!(pt.neighbours, p.iter().filter(|&&u| g.has_edge(u, v)).count());
        }
    }

    #[test]
    fn subdivided_patterns_are_found(
        a in 1usize..=3,
        b in 1usize..=3,
        stretch in proptest::collection::vec(0usize..3, 0..20),
        seed in any::<u64>(),
    ) {
        let p = PatternPab::new(a, b).unwrap();
        let edges: Vec<(usize, usize)> = p.graph.edges().collect();
        let lengths: BTreeMap<(usize, usize), usize> =
            edges.iter().zip(&stretch).map(|(&e, &extra)| (e, 1 + extra)).collect();
        let sub = subdivide(&p.graph, &lengths, seed).unwrap();
        let added: usize = lengths.values().map(|l| l - 1).sum();
        prop_assert_eq!(sub.n(), p.graph.n() + added);
        prop_assert_eq!(sub.edge_count(), p.graph.edge_count() + added);
        let w = detect_pattern(&p, &sub, &Limits::default()).unwrap().expect("a subdivision contains its pattern");
        prop_assert!(validate_witness(&p.graph, &sub, &w).is_ok());
        prop_assert_eq!(check_witness(&p.graph, &sub, &w), Ok(()));
    }

    #[test]
    fn detection_matches_the_naive_search(g in graph(9), a in 1usize..=2) {
        let p = PatternPab::new(a, a).unwrap();
        let found = membership_witness(&g, a, &Limits::default()).unwrap();
        prop_assert_eq!(found.is_some(), naive_contains_subdivision(&p.graph, &g));
        if let Some(w) = found {
            prop_assert_eq!(check_witness(&p.graph, &g, &w), Ok(()));
        }
    }

    #[test]
    fn membership_is_hereditary(g in graph(11), drop in any::<u64>()) {
        let limits = Limits::default();
        prop_assume!(membership_witness(&g, 2, &limits).unwrap().is_none());
        let keep: Vec<usize> = g.vertices().filter(|&v| drop >> v & 1 == 0).collect();
        let sub = g.induced(&keep).unwrap();
        prop_assert!(membership_witness(&sub.graph, 2, &limits).unwrap().is_none());
    }

    #[test]
    fn oracles_match_brute_force(g in graph(10)) {
        let limits = Limits::default();
        let clique = clique_number(&g, &limits).unwrap();
        prop_assert_eq!(clique.size, brute_clique_number(&g));
        prop_assert!(g.is_clique(&clique.vertices));
        let chi = chromatic_number(&g, &limits).unwrap();
        prop_assert_eq!(chi.colours_used, brute_chromatic(&g));
        prop_assert!(g.edges().all(|(u, v)| chi.colour[u] != chi.colour[v]));
    }

    #[test]
    fn bounds_grow_with_omega_and_tau(a in 2usize..=3, omega in 1usize..=4, tau in 0usize..=4) {
        let c = BoundsConfig::default();
        let here = compute_bounds(a, omega, tau, c).unwrap();
        let up_omega = compute_bounds(a, omega + 1, tau, c).unwrap();
        let up_tau = compute_bounds(a, omega, tau + 1, c).unwrap();
        prop_assert!(here.f < up_omega.f);
        prop_assert!(here.b <= up_omega.b && here.b <= up_tau.b);
        prop_assert!(here.chi_bound <= up_omega.chi_bound && here.chi_bound <= up_tau.chi_bound);
        prop_assert!(here.final_bound < up_omega.final_bound);
        prop_assert!(here.colouring_term < up_tau.colouring_term);
    }
}
