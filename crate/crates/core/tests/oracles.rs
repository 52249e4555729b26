//! Fast algorithms against brute-force references.

use std::collections::BTreeSet;

use balgraph::balance::{balanced, bipartite_adjacency_matrix, enumerate_induced_cycles, matrix_is_balanced_oracle};
use balgraph::enumeration::enumerate_cubic_bipartite;
use balgraph::graph::{canonical_form, is_isomorphic, Bipartiteness};
use balgraph::matrix::ZeroOneMatrix;
use balgraph::polytope::exact_cover;
use balgraph::Graph;
use balgraph_testkit as kit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn balance_matches_matrix_definition_on_all_small_sides() {
    let cases = kit::small_connected_bipartite(5);
    assert!(cases.len() > 1000);
    for (a, g) in &cases {
        assert_eq!(balanced(g).unwrap(), matrix_is_balanced_oracle(a).unwrap(), "{a:?}");
    }
}

#[test]
fn balance_matches_matrix_definition_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xba1a);
    for _ in 0..500 {
        let (a, b) = (rng.gen_range(2..=8), rng.gen_range(2..=8));
        let p = rng.gen_range(0.25..0.8);
        let g = kit::random_connected_bipartite(&mut rng, a, b, p);
        let Bipartiteness::Bipartite(sides) = g.bipartition().unwrap() else {
            unreachable!()
        };
        let m = bipartite_adjacency_matrix(&g, &sides).unwrap();
        assert_eq!(balanced(&g).unwrap(), matrix_is_balanced_oracle(&m).unwrap());
    }
}

#[test]
fn induced_cycles_match_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..400 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.7);
        let g = random_graph(&mut rng, n, p);
        let fast = enumerate_induced_cycles(&g, None);
        let masks: BTreeSet<u64> = fast
            .iter()
            .map(|c| c.vertices.iter().fold(0, |m, &v| m | 1u64 << v))
            .collect();
        assert_eq!(masks.len(), fast.len(), "round {round}: a cycle was reported twice");
        assert!(fast.iter().all(|c| c.is_induced_in(&g)));
        assert_eq!(masks, kit::brute_force_induced_cycles(&g), "round {round}");
    }
}

#[test]
fn induced_cycle_length_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 9, 0.4);
        let all = enumerate_induced_cycles(&g, None);
        let short = enumerate_induced_cycles(&g, Some(5));
        let expected: Vec<_> = all.iter().filter(|c| c.len() <= 5).cloned().collect();
        let mut short_sorted = short.clone();
        short_sorted.sort();
        let mut expected_sorted = expected;
        expected_sorted.sort();
        assert_eq!(short_sorted, expected_sorted);
    }
}

#[test]
fn exact_cover_matches_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut feasible = 0;
    for _ in 0..600 {
        let (r, c) = (rng.gen_range(1..=10), rng.gen_range(1..=12));
        let p = rng.gen_range(0.1..0.6);
        let rows: Vec<u64> = (0..r)
            .map(|_| (0..c).filter(|_| rng.gen_bool(p)).fold(0, |m, j| m | 1u64 << j))
            .collect();
        let a = ZeroOneMatrix::from_row_bits(c, rows).unwrap();
        let covers = kit::brute_force_exact_covers(&a);
        match exact_cover(&a).unwrap() {
            Some(sol) => {
                feasible += 1;
                assert!(sol.covers_exactly(&a));
                let mask = sol.columns.iter().fold(0u64, |m, &j| m | 1 << j);
                assert!(covers.contains(&mask));
            }
            None => assert!(covers.is_empty(), "{a:?}"),
        }
    }
    assert!(feasible > 20, "too few feasible instances to be meaningful: {feasible}");
}

#[test]
fn generator_matches_matrix_oracle() {
    for d in (6..=14).step_by(2) {
        let fast: BTreeSet<_> = enumerate_cubic_bipartite(d)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        let oracle = kit::oracle_cubic_bipartite_classes(d);
        assert_eq!(fast, oracle, "d = {d}");
    }
}

#[test]
fn connectivity_matches_menger() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut tested = 0;
    while tested < 150 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.3..0.9);
        let g = random_graph(&mut rng, n, p);
        if !g.is_connected() {
            continue;
        }
        tested += 1;
        assert_eq!(g.vertex_connectivity().unwrap(), kit::connectivity_by_flow(&g));
    }
    assert_eq!(Graph::cube().vertex_connectivity().unwrap(), 3);
}

#[test]
fn isomorphism_matches_permutation_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let h = if rng.gen_bool(0.5) {
            kit::shuffle(&mut rng, &g)
        } else {
            random_graph(&mut rng, n, 0.5)
        };
        assert_eq!(is_isomorphic(&g, &h).unwrap(), kit::brute_force_isomorphic(&g, &h));
    }
}
