//! Arboricity, degeneracy, core-extraction and certificate-restriction
//! invariants against exhaustive oracles on random instances.

use std::collections::BTreeSet;

use num_rational::Rational64;
use proptest::prelude::*;

use pgspan::analysis::{
    arboricity, degeneracy, girth, high_min_degree_from_arboricity, min_degree_subgraph,
};
use pgspan::generate;
use pgspan::graph::Graph;
use pgspan::greedy::{parallel_greedy, GreedyConfig};
use pgspan::oracle;
use pgspan::pg::{restrict_pg_sequence, verify_pg_sequence};

type G = Graph<Rational64>;

/// Connected random graph: a random spanning tree plus extra random edges.
fn connected_random(n: usize, extra: f64, seed: u64) -> G {
    use rand::Rng;
    let mut rng = generate::derived_rng(seed, 0x636f6e6e, 0);
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.insert((parent, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < extra {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    G::unit(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_arboricity_equals_exhaustive_nash_williams(
        n in 2usize..10,
        extra in 0.0f64..0.7,
        seed in 0u64..100_000,
    ) {
        let g = connected_random(n, extra, seed);
        let a = arboricity(&g, Default::default());
        prop_assert_eq!(a.exact, oracle::arboricity_exhaustive(&g));
        let alpha = a.exact.unwrap();
        let (d, _) = degeneracy(&g);
        // Sandwich and the connected-graph edge-count inequality.
        if alpha > 0 {
            prop_assert!(alpha <= d && d <= 2 * alpha - 1, "alpha {} degeneracy {}", alpha, d);
            prop_assert!(
                g.edge_count() + 1 >= g.vertex_count() - 1 + alpha as usize,
                "m+1 >= n-1+alpha violated: m={} n={} alpha={}",
                g.edge_count(), g.vertex_count(), alpha
            );
        }
    }

    #[test]
    fn half_average_degree_core_is_non_empty(
        n in 1usize..30,
        p in 0.0f64..0.6,
        seed in 0u64..100_000,
    ) {
        let g = generate::erdos_renyi(n, p, seed).unwrap();
        prop_assume!(g.edge_count() > 0);
        let rho_half = g.average_degree() / Rational64::from_integer(2);
        let core = min_degree_subgraph(&g, rho_half);
        prop_assert!(!core.is_empty());
        // And the returned set really has min degree >= rho/2.
        let (sub, _) = g.induced_subgraph(&core).unwrap();
        for v in 0..sub.vertex_count() {
            prop_assert!(Rational64::from_integer(sub.degree(v) as i64) >= rho_half);
        }
    }

    #[test]
    fn alpha_half_subgraph_has_the_promised_min_degree(
        n in 2usize..16,
        extra in 0.0f64..0.7,
        seed in 0u64..100_000,
    ) {
        let g = connected_random(n, extra, seed);
        prop_assume!(g.edge_count() > 0);
        let res = high_min_degree_from_arboricity(&g, Default::default()).unwrap();
        let alpha = res.arboricity.exact.unwrap();
        for v in 0..res.graph.vertex_count() {
            prop_assert!(
                Rational64::from_integer(res.graph.degree(v) as i64)
                    >= Rational64::new(alpha as i64, 2)
            );
        }
    }

    #[test]
    fn certificate_restrictions_stay_valid(
        n in 4usize..24,
        seed in 0u64..100_000,
        t in 2u32..6,
        keep_mod in 2usize..4,
    ) {
        let g = generate::erdos_renyi(n, 0.35, seed).unwrap();
        let res = parallel_greedy(&g, &GreedyConfig::new(t, seed).unwrap()).unwrap();
        prop_assert_eq!(verify_pg_sequence(n, &res.certificate, t).unwrap(), None);
        // Keep a pseudo-random subset of the edges.
        let keep: BTreeSet<(usize, usize)> = res
            .certificate
            .union_edges()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| (i + seed as usize) % keep_mod == 0)
            .map(|(_, e)| e)
            .collect();
        let restricted = restrict_pg_sequence(&res.certificate, &keep);
        prop_assert_eq!(verify_pg_sequence(n, &restricted, t).unwrap(), None);
        prop_assert_eq!(restricted.edge_count(), keep.len());
    }

    #[test]
    fn girth_matches_oracle(n in 3usize..10, p in 0.1f64..0.7, seed in 0u64..100_000) {
        let g = generate::erdos_renyi(n, p, seed).unwrap();
        prop_assert_eq!(girth(&g).unwrap(), oracle::girth_exhaustive(&g));
    }

    #[test]
    fn degeneracy_matches_trace_oracle(n in 1usize..24, p in 0.0f64..0.7, seed in 0u64..100_000) {
        let g = generate::erdos_renyi(n, p, seed).unwrap();
        prop_assert_eq!(degeneracy(&g).0, oracle::degeneracy_trace(&g));
    }
}

#[test]
fn girth_on_odd_even_cycles_and_dense_graphs() {
    for n in 3..12 {
        let c = generate::cycle(n).unwrap();
        assert_eq!(girth(&c).unwrap(), Some(n as u64));
    }
    assert_eq!(girth(&generate::complete(6).unwrap()).unwrap(), Some(3));
    assert_eq!(girth(&generate::grid(3, 4).unwrap()).unwrap(), Some(4));
}

#[test]
fn arboricity_of_named_families() {
    // Complete graphs: ceil(n/2) by Nash-Williams on the full set.
    for n in 2..9usize {
        let g = generate::complete(n).unwrap();
        let expect = (n as u32).div_ceil(2);
        assert_eq!(arboricity(&g, Default::default()).exact, Some(expect), "K_{n}");
    }
    // Petersen: 15 edges on 10 vertices, ceil(15/9) = 2.
    let p = generate::petersen().unwrap();
    assert_eq!(arboricity(&p, Default::default()).exact, Some(2));
    assert_eq!(oracle::arboricity_exhaustive(&p), Some(2));
}
